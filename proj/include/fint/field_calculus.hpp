#pragma once

#include <string>
#include <vector>

#include "fint/expr.hpp"
#include "fint/rng.hpp"

namespace fint {

// coordinate vector field; components are canonical expressions over the
// shared ordered variable list
struct VectorField {
  std::vector<Expr> components;
  std::vector<std::string> vars;

  int dim() const { return static_cast<int>(components.size()); }
};

// volume form rho * dx_1 ^ ... ^ dx_n; rho must be nonzero, positivity on
// the working domain is the caller's assertion (sampled at problem load)
struct VolumeForm {
  Expr rho;

  bool unweighted() const { return isOne(rho); }
  static VolumeForm standard() { return VolumeForm{mkConst(1)}; }
};

// directional derivative X(h) = sum_i X_i dh/dx_i
Expr lie_scalar(const VectorField& X, const Expr& h);

// [X,Y]_i = X(Y_i) - Y(X_i)
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

// (1/rho) sum_i d(rho X_i)/dx_i
Expr divergence(const VectorField& X, const VolumeForm& vol);

// componentwise h*X
VectorField scale(const Expr& h, const VectorField& X);

VectorField addFields(const VectorField& a, const VectorField& b);
VectorField subFields(const VectorField& a, const VectorField& b);

// verdict on divergence(f*X) = 0; throws ZeroFactor when f is structurally 0
Verdict is_integrating_factor(const Expr& f, const VectorField& X,
                              const VolumeForm& vol, const Box& domain,
                              const ZeroTestConfig& cfg = {});

}  // namespace fint
