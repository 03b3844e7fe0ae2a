#include "fint/first_integral.hpp"

#include <string>

#include "fint/parser.hpp"

namespace fint {

namespace {

Expr orZero(const Expr& e) { return e ? e : mkConst(0); }

}  // namespace

FirstIntegralResult theorem1(const VectorField& X, const VectorField& Y,
                             const Expr& f, const Expr& lambda, const Expr& mu,
                             const VolumeForm& vol, const Box& domain,
                             const ZeroTestConfig& cfg) {
  if (X.dim() != Y.dim())
    throw DimensionMismatch("vector fields have different dimensions");
  Expr sf = simplify(f);
  if (isZero(sf)) throw ZeroFactor("the integrating factor is identically zero");
  Expr lam = orZero(lambda);
  Expr m = orZero(mu);

  Expr lyf = lie_scalar(Y, sf);
  Expr divY = divergence(Y, vol);
  FirstIntegralResult r;
  r.H = simplify(eSub(eAdd(eDiv(lyf, sf), divY), lam));
  r.g = simplify(eMul(r.H, sf));

  r.hypotheses.factorX = is_integrating_factor(sf, X, vol, domain, cfg);
  Expr fmu = simplify(eMul(sf, m));
  r.hypotheses.factorMuY = isZero(fmu)
                               ? Verdict::provenZeroV()
                               : is_integrating_factor(fmu, Y, vol, domain, cfg);
  r.hypotheses.relation = check_relation(X, Y, lam, m, domain, cfg);

  r.conclusion = is_zero(lie_scalar(X, r.H), domain, cfg);
  r.trivial = is_trivial(r.H, domain, cfg);
  r.domainNote = isConst(sf)
                     ? "valid on the whole domain"
                     : "valid off the zero set of " + print_expr(sf, X.vars);
  return r;
}

std::vector<ChainEntry> chain_Hk(const VectorField& X, const VectorField& Y,
                                 const Expr& H, int k, const Box& domain,
                                 const ZeroTestConfig& cfg, const Expr& mu) {
  if (k <= 0) throw ValidationError("chain length must be positive");
  if (mu && !is_zero(simplify(mu), domain, cfg).provenZero())
    throw HypothesisViolated(
        "iterated derivatives need an exact normalizer (mu = 0)");
  if (is_zero(lie_scalar(X, H), domain, cfg).provenNonzero())
    throw HypothesisViolated("the seed function is provably not conserved");

  std::vector<ChainEntry> chain;
  Expr cur = simplify(H);
  for (int j = 0; j < k; ++j) {
    cur = lie_scalar(Y, cur);
    ChainEntry e;
    e.H = cur;
    e.conserved = is_zero(lie_scalar(X, cur), domain, cfg);
    chain.push_back(std::move(e));
  }
  return chain;
}

IntegrabilityReport integrability_report(const VectorField& X,
                                         const std::vector<VectorField>& Ylist,
                                         const VolumeForm& vol,
                                         const Box& domain,
                                         const ZeroTestConfig& cfg,
                                         int numPoints) {
  const int n = X.dim();
  for (const auto& Y : Ylist)
    if (Y.dim() != n)
      throw DimensionMismatch("vector fields have different dimensions");

  IntegrabilityReport rep;
  rep.divXZero = is_zero(divergence(X, vol), domain, cfg);
  if (rep.divXZero.provenNonzero())
    throw HypothesisViolated("X does not preserve the volume form");

  int pivot = -1;
  for (int c = 0; c < n && pivot < 0; ++c)
    if (is_zero(X.components[c], domain, cfg).provenNonzero()) pivot = c;

  for (const auto& Y : Ylist) {
    VectorField B = lie_bracket(X, Y);
    bool bracketZero = true;
    for (const auto& comp : B.components)
      if (!isZero(comp)) bracketZero = false;

    IntegrabilityEntry entry;
    if (bracketZero) {
      entry.c = mkConst(0);
      entry.relation = Verdict::provenZeroV();
    } else {
      if (pivot < 0)
        throw HypothesisViolated(
            "cannot extract the bracket coefficient: no provably nonzero "
            "component of X");
      entry.c = simplify(eDiv(B.components[pivot], X.components[pivot]));
      if (!isConst(entry.c))
        throw HypothesisViolated("bracket coefficient is not constant");
      Verdict v = Verdict::provenZeroV();
      for (int c = 0; c < n; ++c) {
        Expr res = simplify(eSub(B.components[c],
                                 eMul(entry.c, X.components[c])));
        v = combineVerdicts(v, is_zero(res, domain, cfg));
      }
      if (v.provenNonzero())
        throw HypothesisViolated("bracket leaves the line spanned by X");
      entry.relation = v;
    }
    entry.H = simplify(divergence(Y, vol));
    rep.entries.push_back(std::move(entry));
  }

  std::vector<Expr> funcs;
  for (const auto& e : rep.entries) funcs.push_back(e.H);
  rep.independence = independence_rank(funcs, domain, numPoints, cfg);

  const int want = n - 2;
  rep.completelyIntegrable = want > 0 &&
                             static_cast<int>(Ylist.size()) == want &&
                             rep.independence.consensusRank == want;
  rep.statement = rep.completelyIntegrable
                      ? "completely integrable: a final first integral exists "
                        "on contractible domains (not constructed)"
                      : "not concluded";
  return rep;
}

Verdict is_trivial(const Expr& H, const Box& domain, const ZeroTestConfig& cfg) {
  Verdict v = Verdict::provenZeroV();
  for (int i = 0; i < domain.dim(); ++i)
    v = combineVerdicts(v, is_zero(differentiate(H, i), domain, cfg));
  return v;
}

}  // namespace fint
