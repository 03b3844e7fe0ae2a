#pragma once

#include <vector>

#include "fint/field_calculus.hpp"

namespace fint {

struct OneForm {
  std::vector<Expr> coefficients;  // omega = sum_i coefficients[i] dx_i
  std::vector<std::string> vars;
  Verdict closedness;

  int dim() const { return static_cast<int>(coefficients.size()); }
};

// conjunction of zero tests on the curl components d_i w_j - d_j w_i
Verdict closedness_of(const std::vector<Expr>& coefficients, const Box& domain,
                      const ZeroTestConfig& cfg = {});

// f = 1/(rho (X1 Y2 - X2 Y1)); a valid integrating factor whenever Y is a
// genuine normalizer of X. Throws RankDeficient when the minor is
// identically zero. Planar only.
Expr planar_f_from_Y(const VectorField& X, const VectorField& Y,
                     const VolumeForm& vol, const Box& domain,
                     const ZeroTestConfig& cfg = {});

// Z solves the contraction equation rho (Z1 dy - Z2 dx) = -df, so
// Z = (-f_y/rho, f_x/rho); the returned field is Z/(f^2 Div(X)). Throws
// DivergenceFree when Div(X) is provably zero, ZeroFactor when f is
// structurally zero. Planar only.
VectorField planar_Y_from_f(const VectorField& X, const Expr& f,
                            const VolumeForm& vol, const Box& domain,
                            const ZeroTestConfig& cfg = {});

// omega = (-X2, X1)/(X1 Y2 - X2 Y1); closed whenever Y normalizes X, and
// a primitive of omega is then conserved along X. Planar only.
OneForm lie_one_form(const VectorField& X, const VectorField& Y,
                     const VolumeForm& vol, const Box& domain,
                     const ZeroTestConfig& cfg = {});

// line integral along the polyline through the given waypoints, composite
// five-node Gauss-Legendre with `panels` panels per segment; throws
// PathThroughSingularity when an evaluation leaves the domain
double quadrature_along(const OneForm& omega,
                        const std::vector<std::vector<double>>& waypoints,
                        int panels);

// primitive value at target, normalized to zero at the basepoint; tries the
// straight segment, then the two axis-ordered staircase paths
double quadrature(const OneForm& omega, const std::vector<double>& basepoint,
                  const std::vector<double>& target, int panels = 256);

// eta(v) = Omega(Y, X, v), the volume form contracted with Y then X; in
// Cartesian coordinates eta = rho (Y x X) flat. Three dimensions only.
OneForm pair_contraction_3d(const VectorField& X, const VectorField& Y,
                            const VolumeForm& vol, const Box& domain,
                            const ZeroTestConfig& cfg = {});

// primitive of eta, conserved along both fields when X, Y preserve the
// volume and commute; hypothesis verdicts that come back ProvenNonzero
// raise HypothesisViolated
double volume_pair_potential_3d(const VectorField& X, const VectorField& Y,
                                const VolumeForm& vol,
                                const std::vector<double>& basepoint,
                                const std::vector<double>& target,
                                const Box& domain, int panels = 256,
                                const ZeroTestConfig& cfg = {});

}  // namespace fint
