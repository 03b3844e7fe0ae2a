#include "fint/field_calculus.hpp"

#include "fint/errors.hpp"

namespace fint {

namespace {

void requireSameShape(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector field dimensions differ");
}

}  // namespace

Expr lie_scalar(const VectorField& X, const Expr& h) {
  std::vector<Expr> parts;
  parts.reserve(X.components.size());
  for (int i = 0; i < X.dim(); ++i)
    parts.push_back(eMul(X.components[i], differentiate(h, i)));
  return simplify(mkSum(std::move(parts)));
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  requireSameShape(X, Y);
  VectorField r;
  r.vars = X.vars;
  r.components.reserve(X.components.size());
  for (int i = 0; i < X.dim(); ++i)
    r.components.push_back(
        simplify(eSub(lie_scalar(X, Y.components[i]),
                      lie_scalar(Y, X.components[i]))));
  return r;
}

Expr divergence(const VectorField& X, const VolumeForm& vol) {
  std::vector<Expr> parts;
  parts.reserve(X.components.size());
  if (vol.unweighted()) {
    for (int i = 0; i < X.dim(); ++i)
      parts.push_back(differentiate(X.components[i], i));
    return simplify(mkSum(std::move(parts)));
  }
  for (int i = 0; i < X.dim(); ++i)
    parts.push_back(differentiate(eMul(vol.rho, X.components[i]), i));
  return simplify(eDiv(mkSum(std::move(parts)), vol.rho));
}

VectorField scale(const Expr& h, const VectorField& X) {
  VectorField r;
  r.vars = X.vars;
  r.components.reserve(X.components.size());
  for (auto& c : X.components) r.components.push_back(simplify(eMul(h, c)));
  return r;
}

VectorField addFields(const VectorField& a, const VectorField& b) {
  requireSameShape(a, b);
  VectorField r;
  r.vars = a.vars;
  for (int i = 0; i < a.dim(); ++i)
    r.components.push_back(simplify(eAdd(a.components[i], b.components[i])));
  return r;
}

VectorField subFields(const VectorField& a, const VectorField& b) {
  requireSameShape(a, b);
  VectorField r;
  r.vars = a.vars;
  for (int i = 0; i < a.dim(); ++i)
    r.components.push_back(simplify(eSub(a.components[i], b.components[i])));
  return r;
}

Verdict is_integrating_factor(const Expr& f, const VectorField& X,
                              const VolumeForm& vol, const Box& domain,
                              const ZeroTestConfig& cfg) {
  if (isZero(simplify(f))) throw ZeroFactor("integrating factor is identically zero");
  return is_zero(divergence(scale(f, X), vol), domain, cfg);
}

}  // namespace fint
