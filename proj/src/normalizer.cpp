#include "fint/normalizer.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace fint {

namespace {

// residual components r_k = B_k - lambda X_k - mu Y_k, simplified
VectorField relationResidual(const VectorField& X, const VectorField& Y,
                             const VectorField& B, const Expr& lambda,
                             const Expr& mu) {
  VectorField r;
  r.vars = X.vars;
  r.components.reserve(X.components.size());
  for (int k = 0; k < X.dim(); ++k) {
    Expr t = eSub(B.components[k], eAdd(eMul(lambda, X.components[k]),
                                        eMul(mu, Y.components[k])));
    r.components.push_back(simplify(t));
  }
  return r;
}

Verdict fieldVerdict(const VectorField& r, const Box& domain,
                     const ZeroTestConfig& cfg) {
  Verdict v = Verdict{VerdictKind::ProvenZero, 0, 0.0, cfg.threshold};
  for (const auto& c : r.components)
    v = combineVerdicts(v, is_zero(c, domain, cfg));
  return v;
}

}  // namespace

NormalizerSolution solve_lambda_mu(const VectorField& X, const VectorField& Y,
                                   const Box& domain,
                                   const ZeroTestConfig& cfg, int forceI,
                                   int forceJ) {
  const int n = X.dim();
  if (Y.dim() != n)
    throw DimensionMismatch("vector fields have different dimensions");
  if (n < 2) throw DimensionMismatch("normalizer relation needs dimension 2");
  if (static_cast<int>(domain.iv.size()) != n)
    throw DimensionMismatch("domain dimension does not match the fields");

  VectorField B = lie_bracket(X, Y);

  struct Pair {
    int i, j;
    Expr minor;
    Verdict verdict;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Expr m = simplify(eSub(eMul(X.components[i], Y.components[j]),
                             eMul(X.components[j], Y.components[i])));
      pairs.push_back(Pair{i, j, m, is_zero(m, domain, cfg)});
    }

  if (forceI >= 0 || forceJ >= 0) {
    if (forceI < 0 || forceJ >= n || forceI >= forceJ)
      throw ValidationError("pinned component pair is out of range");
    const Pair* chosen = nullptr;
    for (const auto& p : pairs)
      if (p.i == forceI && p.j == forceJ) chosen = &p;
    if (chosen == nullptr)
      throw ValidationError("pinned component pair is out of range");
    if (chosen->verdict.provenZero())
      throw ValidationError("pinned component pair has an identically zero minor");
    NormalizerSolution sol;
    sol.pi = chosen->i;
    sol.pj = chosen->j;
    const Expr &Xi = X.components[chosen->i], &Xj = X.components[chosen->j];
    const Expr &Yi = Y.components[chosen->i], &Yj = Y.components[chosen->j];
    const Expr &Bi = B.components[chosen->i], &Bj = B.components[chosen->j];
    sol.lambda = simplify(eDiv(eSub(eMul(Bi, Yj), eMul(Bj, Yi)), chosen->minor));
    sol.mu = simplify(eDiv(eSub(eMul(Xi, Bj), eMul(Xj, Bi)), chosen->minor));
    sol.residual = relationResidual(X, Y, B, sol.lambda, sol.mu);
    sol.verdict = fieldVerdict(sol.residual, domain, cfg);
    if (sol.verdict.provenNonzero())
      throw NoSolution("the bracket provably leaves the span of X and Y");
    sol.kind = isZero(sol.mu) ? NormalizerKind::ExactNormalizer
                              : NormalizerKind::Generalized;
    return sol;
  }

  bool allZero = true;
  bool anyNonzero = false;
  for (const auto& p : pairs) {
    if (!p.verdict.provenZero()) allZero = false;
    if (p.verdict.provenNonzero()) anyNonzero = true;
  }

  if (allZero) {
    // Y is parallel to X; recover h with Y = hX from a provably nonzero
    // component, else X vanishes identically and the relation is trivial
    NormalizerSolution sol;
    sol.kind = NormalizerKind::DegenerateParallel;
    sol.mu = mkConst(0);
    int k = -1;
    bool unsettled = false;
    for (int c = 0; c < n && k < 0; ++c) {
      Verdict v = is_zero(X.components[c], domain, cfg);
      if (v.provenNonzero()) k = c;
      if (v.kind == VerdictKind::NumericZero) unsettled = true;
    }
    if (k < 0) {
      if (unsettled)
        throw UnresolvedRank(
            "all minors vanish but no component quotient is recoverable");
      sol.lambda = mkConst(0);
    } else {
      Expr h = simplify(eDiv(Y.components[k], X.components[k]));
      sol.lambda = lie_scalar(X, h);
    }
    sol.residual = relationResidual(X, Y, B, sol.lambda, sol.mu);
    sol.verdict = fieldVerdict(sol.residual, domain, cfg);
    if (sol.verdict.provenNonzero())
      throw NoSolution("the bracket provably leaves the span of X and Y");
    return sol;
  }

  if (!anyNonzero)
    throw UnresolvedRank(
        "minor zero tests are numerically unresolved; cannot certify the rank");

  // among provably nonzero minors, pick the one with the largest minimum
  // |value| over 16 shared probe points
  CounterRng rng{cfg.seed};
  std::vector<std::vector<double>> probes;
  for (std::uint64_t t = 0; t < 16; ++t)
    probes.push_back(sampleBox(rng, domain, t));
  const Pair* best = nullptr;
  double bestScore = -1.0;
  for (const auto& p : pairs) {
    if (!p.verdict.provenNonzero()) continue;
    double score = std::numeric_limits<double>::infinity();
    for (const auto& pt : probes) {
      double v;
      try {
        v = std::fabs(evaluate(p.minor, pt, cfg.epsdom));
      } catch (const DomainError&) {
        v = 0.0;
      }
      if (v < score) score = v;
    }
    if (score > bestScore) {
      bestScore = score;
      best = &p;
    }
  }

  NormalizerSolution sol;
  sol.pi = best->i;
  sol.pj = best->j;
  const Expr &Xi = X.components[best->i], &Xj = X.components[best->j];
  const Expr &Yi = Y.components[best->i], &Yj = Y.components[best->j];
  const Expr &Bi = B.components[best->i], &Bj = B.components[best->j];
  sol.lambda = simplify(eDiv(eSub(eMul(Bi, Yj), eMul(Bj, Yi)), best->minor));
  sol.mu = simplify(eDiv(eSub(eMul(Xi, Bj), eMul(Xj, Bi)), best->minor));
  sol.residual = relationResidual(X, Y, B, sol.lambda, sol.mu);
  sol.verdict = fieldVerdict(sol.residual, domain, cfg);
  if (sol.verdict.provenNonzero())
    throw NoSolution("the bracket provably leaves the span of X and Y");
  sol.kind = isZero(sol.mu) ? NormalizerKind::ExactNormalizer
                            : NormalizerKind::Generalized;
  return sol;
}

Verdict check_relation(const VectorField& X, const VectorField& Y,
                       const Expr& lambda, const Expr& mu, const Box& domain,
                       const ZeroTestConfig& cfg) {
  if (X.dim() != Y.dim())
    throw DimensionMismatch("vector fields have different dimensions");
  VectorField B = lie_bracket(X, Y);
  VectorField r = relationResidual(X, Y, B, lambda, mu);
  return fieldVerdict(r, domain, cfg);
}

}  // namespace fint
