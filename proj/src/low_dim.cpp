#include "fint/low_dim.hpp"

#include <cmath>
#include <utility>

#include "fint/errors.hpp"

namespace fint {

namespace {

void requireDim(const VectorField& F, int n, const char* what) {
  if (F.dim() != n) throw DimensionMismatch(std::string(what));
}

// X1 Y2 - X2 Y1, the orientation that makes the primitive of the lie form
// decrease along -grad-like planar fields
Expr planarMinor(const VectorField& X, const VectorField& Y) {
  return eSub(eMul(X.components[0], Y.components[1]),
              eMul(X.components[1], Y.components[0]));
}

}  // namespace

Verdict closedness_of(const std::vector<Expr>& coefficients, const Box& domain,
                      const ZeroTestConfig& cfg) {
  const int n = static_cast<int>(coefficients.size());
  Verdict acc = Verdict::provenZeroV();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Expr curl = simplify(eSub(differentiate(coefficients[j], i),
                                differentiate(coefficients[i], j)));
      acc = combineVerdicts(acc, is_zero(curl, domain, cfg));
    }
  return acc;
}

Expr planar_f_from_Y(const VectorField& X, const VectorField& Y,
                     const VolumeForm& vol, const Box& domain,
                     const ZeroTestConfig& cfg) {
  requireDim(X, 2, "planar construction needs a two dimensional field");
  requireDim(Y, 2, "planar construction needs a two dimensional field");
  Expr m = simplify(eMul(vol.rho, planarMinor(X, Y)));
  if (is_zero(m, domain, cfg).provenZero())
    throw RankDeficient("the pair is parallel, the contraction vanishes");
  return simplify(eDiv(mkConst(1), m));
}

VectorField planar_Y_from_f(const VectorField& X, const Expr& f,
                            const VolumeForm& vol, const Box& domain,
                            const ZeroTestConfig& cfg) {
  requireDim(X, 2, "planar construction needs a two dimensional field");
  Expr sf = simplify(f);
  if (isConst(sf) && sf->value == 0)
    throw ZeroFactor("the factor is identically zero");
  Expr divX = simplify(divergence(X, vol));
  if (is_zero(divX, domain, cfg).provenZero())
    throw DivergenceFree(
        "X already preserves the volume, no normalizer is recovered this way");
  // rho (Z1 dy - Z2 dx) = -df
  Expr z1 = eDiv(eNeg(differentiate(sf, 1)), vol.rho);
  Expr z2 = eDiv(differentiate(sf, 0), vol.rho);
  Expr scale = eMul(eMul(sf, sf), divX);
  VectorField Y;
  Y.vars = X.vars;
  Y.components = {simplify(eDiv(z1, scale)), simplify(eDiv(z2, scale))};
  return Y;
}

OneForm lie_one_form(const VectorField& X, const VectorField& Y,
                     const VolumeForm& vol, const Box& domain,
                     const ZeroTestConfig& cfg) {
  requireDim(X, 2, "planar construction needs a two dimensional field");
  requireDim(Y, 2, "planar construction needs a two dimensional field");
  Expr m = simplify(planarMinor(X, Y));
  if (is_zero(m, domain, cfg).provenZero())
    throw RankDeficient("the pair is parallel, the contraction vanishes");
  OneForm w;
  w.vars = X.vars;
  w.coefficients = {simplify(eDiv(eNeg(X.components[1]), m)),
                    simplify(eDiv(X.components[0], m))};
  w.closedness = closedness_of(w.coefficients, domain, cfg);
  return w;
}

double quadrature_along(const OneForm& omega,
                        const std::vector<std::vector<double>>& waypoints,
                        int panels) {
  if (panels < 1) throw ValidationError("panel count must be positive");
  if (waypoints.size() < 2)
    throw ValidationError("a path needs at least two waypoints");
  const int n = omega.dim();
  for (const auto& p : waypoints)
    if (static_cast<int>(p.size()) != n)
      throw DimensionMismatch("waypoint dimension does not match the form");

  static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831,
                                  0.0, 0.5384693101056831,
                                  0.9061798459386640};
  static const double weights[5] = {0.2369268850561891, 0.4786286704993665,
                                    0.5688888888888889, 0.4786286704993665,
                                    0.2369268850561891};

  double acc = 0.0;
  std::vector<double> point(n);
  try {
    for (size_t s = 0; s + 1 < waypoints.size(); ++s) {
      const auto& a = waypoints[s];
      const auto& b = waypoints[s + 1];
      for (int k = 0; k < panels; ++k) {
        double mid = (k + 0.5) / panels;
        double half = 0.5 / panels;
        for (int q = 0; q < 5; ++q) {
          double t = mid + half * nodes[q];
          for (int i = 0; i < n; ++i) point[i] = a[i] + t * (b[i] - a[i]);
          double val = 0.0;
          for (int i = 0; i < n; ++i) {
            if (b[i] == a[i]) continue;
            val += evaluate(omega.coefficients[i], point) * (b[i] - a[i]);
          }
          acc += weights[q] * half * val;
        }
      }
    }
  } catch (const DomainError& e) {
    throw PathThroughSingularity(std::string("the path leaves the domain: ") +
                                 e.what());
  }
  return acc;
}

double quadrature(const OneForm& omega, const std::vector<double>& basepoint,
                  const std::vector<double>& target, int panels) {
  const int n = omega.dim();
  if (static_cast<int>(basepoint.size()) != n ||
      static_cast<int>(target.size()) != n)
    throw DimensionMismatch("endpoint dimension does not match the form");

  std::vector<std::vector<std::vector<double>>> paths;
  paths.push_back({basepoint, target});
  // staircase paths, one coordinate at a time, ascending then descending
  {
    std::vector<std::vector<double>> asc{basepoint};
    std::vector<double> cur = basepoint;
    for (int i = 0; i < n; ++i) {
      cur[i] = target[i];
      asc.push_back(cur);
    }
    paths.push_back(std::move(asc));
  }
  {
    std::vector<std::vector<double>> desc{basepoint};
    std::vector<double> cur = basepoint;
    for (int i = n - 1; i >= 0; --i) {
      cur[i] = target[i];
      desc.push_back(cur);
    }
    paths.push_back(std::move(desc));
  }

  std::string lastFault;
  for (const auto& p : paths) {
    try {
      return quadrature_along(omega, p, panels);
    } catch (const PathThroughSingularity& e) {
      lastFault = e.what();
    }
  }
  throw PathThroughSingularity(
      "every candidate path hits a singularity; last fault: " + lastFault);
}

OneForm pair_contraction_3d(const VectorField& X, const VectorField& Y,
                            const VolumeForm& vol, const Box& domain,
                            const ZeroTestConfig& cfg) {
  requireDim(X, 3, "the pair contraction needs three dimensional fields");
  requireDim(Y, 3, "the pair contraction needs three dimensional fields");
  OneForm eta;
  eta.vars = X.vars;
  eta.coefficients.resize(3);
  // eta = rho (Y x X) flat
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    Expr cross = eSub(eMul(Y.components[j], X.components[k]),
                      eMul(Y.components[k], X.components[j]));
    eta.coefficients[i] = simplify(eMul(vol.rho, cross));
  }
  eta.closedness = closedness_of(eta.coefficients, domain, cfg);
  return eta;
}

double volume_pair_potential_3d(const VectorField& X, const VectorField& Y,
                                const VolumeForm& vol,
                                const std::vector<double>& basepoint,
                                const std::vector<double>& target,
                                const Box& domain, int panels,
                                const ZeroTestConfig& cfg) {
  if (is_zero(simplify(divergence(X, vol)), domain, cfg).provenNonzero())
    throw HypothesisViolated("X does not preserve the volume form");
  if (is_zero(simplify(divergence(Y, vol)), domain, cfg).provenNonzero())
    throw HypothesisViolated("Y does not preserve the volume form");
  VectorField B = lie_bracket(X, Y);
  Verdict commute = Verdict::provenZeroV();
  for (const auto& c : B.components)
    commute = combineVerdicts(commute, is_zero(simplify(c), domain, cfg));
  if (commute.provenNonzero())
    throw HypothesisViolated("the fields do not commute");
  OneForm eta = pair_contraction_3d(X, Y, vol, domain, cfg);
  return quadrature(eta, basepoint, target, panels);
}

}  // namespace fint
