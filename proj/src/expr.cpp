#include "fint/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fint {

namespace {
Expr node(ExprNode&& n) { return std::make_shared<const ExprNode>(std::move(n)); }
}  // namespace

Expr mkConst(Rat v) {
  ExprNode n;
  n.kind = Kind::Constant;
  n.value = std::move(v);
  return node(std::move(n));
}

Expr mkConst(long long v) { return mkConst(Rat(v)); }

Expr mkVar(int index) {
  ExprNode n;
  n.kind = Kind::Variable;
  n.var = index;
  return node(std::move(n));
}

Expr mkSum(std::vector<Expr> kids) {
  if (kids.empty()) return mkConst(0);
  if (kids.size() == 1) return kids[0];
  ExprNode n;
  n.kind = Kind::Sum;
  n.kids = std::move(kids);
  return node(std::move(n));
}

Expr mkProd(std::vector<Expr> kids) {
  if (kids.empty()) return mkConst(1);
  if (kids.size() == 1) return kids[0];
  ExprNode n;
  n.kind = Kind::Product;
  n.kids = std::move(kids);
  return node(std::move(n));
}

Expr mkPow(Expr base, int expo) {
  while (base->kind == Kind::IntPower) {
    long long composed = static_cast<long long>(expo) * base->expo;
    if (composed > 1000000000LL || composed < -1000000000LL)
      throw UnrepresentableExponent("integer exponent out of range");
    expo = static_cast<int>(composed);
    base = base->base;
  }
  if (expo == 1) return base;
  ExprNode n;
  n.kind = Kind::IntPower;
  n.base = std::move(base);
  n.expo = expo;
  return node(std::move(n));
}

Expr mkExp(Expr arg) {
  ExprNode n;
  n.kind = Kind::Exp;
  n.arg = std::move(arg);
  return node(std::move(n));
}

Expr mkSqrt(Expr arg) {
  ExprNode n;
  n.kind = Kind::Sqrt;
  n.arg = std::move(arg);
  return node(std::move(n));
}

Expr eAdd(Expr a, Expr b) { return mkSum({std::move(a), std::move(b)}); }
Expr eSub(Expr a, Expr b) { return mkSum({std::move(a), eNeg(std::move(b))}); }
Expr eMul(Expr a, Expr b) { return mkProd({std::move(a), std::move(b)}); }
Expr eMul(Expr a, Expr b, Expr c) {
  return mkProd({std::move(a), std::move(b), std::move(c)});
}
Expr eDiv(Expr a, Expr b) { return eMul(std::move(a), mkPow(std::move(b), -1)); }
Expr eNeg(Expr a) { return eMul(mkConst(-1), std::move(a)); }

namespace {
int kindRank(Kind k) {
  switch (k) {
    case Kind::Constant: return 0;
    case Kind::Variable: return 1;
    case Kind::Exp: return 2;
    case Kind::Sqrt: return 3;
    case Kind::IntPower: return 4;
    case Kind::Product: return 5;
    case Kind::Sum: return 6;
  }
  return 7;
}
}  // namespace

int expr_cmp(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  int ra = kindRank(a->kind), rb = kindRank(b->kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a->kind) {
    case Kind::Constant:
      if (a->value == b->value) return 0;
      return a->value < b->value ? -1 : 1;
    case Kind::Variable:
      if (a->var == b->var) return 0;
      return a->var < b->var ? -1 : 1;
    case Kind::Exp:
    case Kind::Sqrt:
      return expr_cmp(a->arg, b->arg);
    case Kind::IntPower: {
      int c = expr_cmp(a->base, b->base);
      if (c != 0) return c;
      if (a->expo == b->expo) return 0;
      return a->expo < b->expo ? -1 : 1;
    }
    case Kind::Product:
    case Kind::Sum: {
      std::size_t n = std::min(a->kids.size(), b->kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = expr_cmp(a->kids[i], b->kids[i]);
        if (c != 0) return c;
      }
      if (a->kids.size() == b->kids.size()) return 0;
      return a->kids.size() < b->kids.size() ? -1 : 1;
    }
  }
  return 0;
}

bool expr_eq(const Expr& a, const Expr& b) { return expr_cmp(a, b) == 0; }

bool isConst(const Expr& e) { return e->kind == Kind::Constant; }
bool isZero(const Expr& e) { return isConst(e) && e->value == 0; }
bool isOne(const Expr& e) { return isConst(e) && e->value == 1; }

int maxVarIndex(const Expr& e) {
  switch (e->kind) {
    case Kind::Constant: return -1;
    case Kind::Variable: return e->var;
    case Kind::Exp:
    case Kind::Sqrt: return maxVarIndex(e->arg);
    case Kind::IntPower: return maxVarIndex(e->base);
    case Kind::Sum:
    case Kind::Product: {
      int m = -1;
      for (auto& k : e->kids) m = std::max(m, maxVarIndex(k));
      return m;
    }
  }
  return -1;
}

namespace {

double checkFinite(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value in evaluation");
  return v;
}

double evalRec(const Expr& e, const std::vector<double>& p, double epsdom,
               double* maxAbsSub) {
  double v = 0;
  switch (e->kind) {
    case Kind::Constant:
      v = toDouble(e->value);
      break;
    case Kind::Variable:
      if (e->var < 0 || static_cast<std::size_t>(e->var) >= p.size())
        throw DomainError("point does not assign variable #" +
                          std::to_string(e->var));
      v = p[static_cast<std::size_t>(e->var)];
      break;
    case Kind::Sum: {
      for (auto& k : e->kids) v += evalRec(k, p, epsdom, maxAbsSub);
      break;
    }
    case Kind::Product: {
      v = 1;
      for (auto& k : e->kids) v *= evalRec(k, p, epsdom, maxAbsSub);
      break;
    }
    case Kind::IntPower: {
      double b = evalRec(e->base, p, epsdom, maxAbsSub);
      if (e->expo < 0 && std::fabs(b) < epsdom)
        throw DomainError("pole: |base| below epsdom");
      v = std::pow(b, e->expo);
      break;
    }
    case Kind::Exp:
      v = std::exp(evalRec(e->arg, p, epsdom, maxAbsSub));
      break;
    case Kind::Sqrt: {
      double a = evalRec(e->arg, p, epsdom, maxAbsSub);
      if (a < 0) throw DomainError("square root of negative value");
      v = std::sqrt(a);
      break;
    }
  }
  checkFinite(v);
  if (maxAbsSub && std::fabs(v) > *maxAbsSub) *maxAbsSub = std::fabs(v);
  return v;
}

}  // namespace

double evaluate(const Expr& e, const std::vector<double>& point, double epsdom,
                double* maxAbsSub) {
  return evalRec(e, point, epsdom, maxAbsSub);
}

std::string Verdict::str() const {
  switch (kind) {
    case VerdictKind::ProvenZero: return "ProvenZero";
    case VerdictKind::ProvenNonzero: return "ProvenNonzero";
    case VerdictKind::NumericZero: {
      char buf[128];
      std::snprintf(buf, sizeof buf, "NumericZero(samples=%ld, max=%.3e, thr=%.3e)",
                    sampleCount, maxAbsResidual, threshold);
      return buf;
    }
  }
  return "?";
}

Verdict combineVerdicts(const Verdict& a, const Verdict& b) {
  if (a.provenNonzero()) return a;
  if (b.provenNonzero()) return b;
  if (a.provenZero()) return b;
  if (b.provenZero()) return a;
  Verdict v;
  v.kind = VerdictKind::NumericZero;
  v.sampleCount = std::min(a.sampleCount, b.sampleCount);
  v.maxAbsResidual = std::max(a.maxAbsResidual, b.maxAbsResidual);
  v.threshold = std::max(a.threshold, b.threshold);
  return v;
}

Verdict is_zero(const Expr& e, const Box& domain, const ZeroTestConfig& cfg) {
  Expr s = simplify(e);
  if (isConst(s)) {
    return s->value == 0 ? Verdict::provenZeroV() : Verdict::provenNonzeroV();
  }
  CounterRng rng{cfg.seed};
  long valid = 0;
  double maxRes = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    std::vector<double> p = sampleBox(rng, domain, static_cast<std::uint64_t>(k));
    double v, scale = 0;
    try {
      if (cfg.avoid) {
        double fv = evaluate(cfg.avoid, p, cfg.epsdom);
        if (std::fabs(fv) < cfg.avoidCut) continue;
      }
      v = evaluate(s, p, cfg.epsdom, &scale);
    } catch (const DomainError&) {
      continue;
    }
    ++valid;
    double scaled = std::fabs(v) / (1.0 + scale);
    if (scaled > cfg.threshold) return Verdict::provenNonzeroV();
    if (scaled > maxRes) maxRes = scaled;
  }
  if (valid < cfg.minSamples)
    throw InsufficientSamples("only " + std::to_string(valid) +
                              " valid sample points (need " +
                              std::to_string(cfg.minSamples) + ")");
  Verdict v;
  v.kind = VerdictKind::NumericZero;
  v.sampleCount = valid;
  v.maxAbsResidual = maxRes;
  v.threshold = cfg.threshold;
  return v;
}

}  // namespace fint
