#include "fint/normal_form.hpp"

#include <algorithm>
#include <climits>

namespace fint::nf {

namespace {

Int intGcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int intLcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

}  // namespace

// ---------- monomials ----------

int monoDeg(const Mono& m) {
  int d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

Mono monoMul(const Mono& a, const Mono& b) {
  Mono r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

std::optional<Mono> monoDiv(const Mono& a, const Mono& b) {
  Mono r;
  std::size_t i = 0;
  for (auto& [v, e] : b) {
    while (i < a.size() && a[i].first < v) r.push_back(a[i++]);
    if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(v, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

int monoCmp(const Mono& a, const Mono& b) {
  int da = monoDeg(a), db = monoDeg(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int va = i < a.size() ? a[i].first : INT_MAX;
    int vb = j < b.size() ? b[j].first : INT_MAX;
    if (va == vb) {
      if (a[i].second != b[j].second)
        return a[i].second > b[j].second ? -1 : 1;
      ++i, ++j;
    } else {
      // the monomial with a positive exponent at the smaller index is
      // lexicographically larger and sorts first
      return va < vb ? -1 : 1;
    }
  }
  return 0;
}

// ---------- atoms and terms ----------

int atomCmp(const AtomSig& a, const AtomSig& b) {
  bool ha = static_cast<bool>(a.expArg), hb = static_cast<bool>(b.expArg);
  if (ha != hb) return ha ? 1 : -1;
  if (ha) {
    int c = expr_cmp(a.expArg, b.expArg);
    if (c != 0) return c;
  }
  std::size_t n = std::min(a.sqrtArgs.size(), b.sqrtArgs.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = expr_cmp(a.sqrtArgs[i], b.sqrtArgs[i]);
    if (c != 0) return c;
  }
  if (a.sqrtArgs.size() != b.sqrtArgs.size())
    return a.sqrtArgs.size() < b.sqrtArgs.size() ? -1 : 1;
  return 0;
}

int termCmp(const Term& a, const Term& b) {
  int c = monoCmp(a.mono, b.mono);
  if (c != 0) return c;
  return atomCmp(a.atoms, b.atoms);
}

// ---------- polynomials ----------

namespace {

// sort + combine like terms + drop zero coefficients
void normalizeTerms(std::vector<Term>& ts) {
  std::stable_sort(ts.begin(), ts.end(),
                   [](const Term& a, const Term& b) { return termCmp(a, b) < 0; });
  std::vector<Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && termCmp(out.back(), t) == 0) {
      out.back().coef += t.coef;
      if (out.back().coef == 0) out.pop_back();
    } else if (t.coef != 0) {
      out.push_back(std::move(t));
    }
  }
  ts = std::move(out);
}

Expr canonicalAdd(const Expr& a, const Expr& b) {
  return toExpr(addF(fromExpr(a), fromExpr(b)));
}

Expr canonicalScale(const Expr& a, const Rat& c) {
  Fraction f = fromExpr(a);
  f.num = scalePoly(f.num, c);
  return toExpr(f);
}

// numerator of a canonical expression known to be denominator-free
// (square-root arguments are constructed that way)
Poly polyFromCanonical(const Expr& e) {
  Fraction f = fromExpr(e);
  if (!f.den.empty())
    throw Error("internal: atom argument is not polynomial");
  return f.num;
}

Poly polyExpAtom(const Expr& arg) {
  Poly p;
  if (arg && !isZero(arg)) {
    p.terms.push_back(Term{Rat(1), {}, AtomSig{arg, {}}});
  } else {
    p.terms.push_back(Term{Rat(1), {}, AtomSig{}});
  }
  return p;
}

// t1*t2; square roots present on both sides are absorbed into polynomial
// content (sqrt(s)^2 = s on the common domain of definition), so the result
// may have several terms.
Poly mulTerm(const Term& t1, const Term& t2) {
  Term base;
  base.coef = t1.coef * t2.coef;
  base.mono = monoMul(t1.mono, t2.mono);
  if (t1.atoms.expArg && t2.atoms.expArg) {
    Expr merged = canonicalAdd(t1.atoms.expArg, t2.atoms.expArg);
    if (!isZero(merged)) base.atoms.expArg = merged;
  } else if (t1.atoms.expArg) {
    base.atoms.expArg = t1.atoms.expArg;
  } else if (t2.atoms.expArg) {
    base.atoms.expArg = t2.atoms.expArg;
  }
  std::vector<Expr> absorbed;
  const auto& s1 = t1.atoms.sqrtArgs;
  const auto& s2 = t2.atoms.sqrtArgs;
  std::size_t i = 0, j = 0;
  while (i < s1.size() || j < s2.size()) {
    if (j == s2.size() || (i < s1.size() && expr_cmp(s1[i], s2[j]) < 0)) {
      base.atoms.sqrtArgs.push_back(s1[i++]);
    } else if (i == s1.size() || expr_cmp(s2[j], s1[i]) < 0) {
      base.atoms.sqrtArgs.push_back(s2[j++]);
    } else {
      absorbed.push_back(s1[i]);
      ++i, ++j;
    }
  }
  Poly out;
  out.terms.push_back(std::move(base));
  for (auto& s : absorbed) out = mulPoly(out, polyFromCanonical(s));
  return out;
}

}  // namespace

int polyCmp(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = termCmp(a.terms[i], b.terms[i]);
    if (c != 0) return c;
    const Rat &ca = a.terms[i].coef, &cb = b.terms[i].coef;
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  if (a.terms.size() != b.terms.size())
    return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

bool polyEq(const Poly& a, const Poly& b) { return polyCmp(a, b) == 0; }

bool atomFree(const Poly& p) {
  for (auto& t : p.terms)
    if (!t.atoms.empty()) return false;
  return true;
}

Poly polyConst(const Rat& c) {
  Poly p;
  if (c != 0) p.terms.push_back(Term{c, {}, {}});
  return p;
}

Poly polyVar(int index) {
  Poly p;
  p.terms.push_back(Term{Rat(1), Mono{{index, 1}}, {}});
  return p;
}

Poly addPoly(const Poly& a, const Poly& b) {
  Poly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int c;
    if (i == a.terms.size()) c = 1;
    else if (j == b.terms.size()) c = -1;
    else c = termCmp(a.terms[i], b.terms[j]);
    if (c < 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c > 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      Term t = a.terms[i++];
      t.coef += b.terms[j++].coef;
      if (t.coef != 0) r.terms.push_back(std::move(t));
    }
  }
  return r;
}

Poly negPoly(const Poly& a) {
  Poly r = a;
  for (auto& t : r.terms) t.coef = -t.coef;
  return r;
}

Poly subPoly(const Poly& a, const Poly& b) { return addPoly(a, negPoly(b)); }

Poly mulPoly(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly{};
  std::vector<Term> out;
  out.reserve(a.terms.size() * b.terms.size());
  for (auto& ta : a.terms)
    for (auto& tb : b.terms) {
      Poly p = mulTerm(ta, tb);
      for (auto& t : p.terms) out.push_back(std::move(t));
    }
  normalizeTerms(out);
  Poly r;
  r.terms = std::move(out);
  return r;
}

Poly scalePoly(const Poly& a, const Rat& c) {
  if (c == 0) return Poly{};
  Poly r = a;
  for (auto& t : r.terms) t.coef *= c;
  return r;
}

Poly powPoly(const Poly& a, int k) {
  Poly r = polyConst(Rat(1));
  Poly b = a;
  int e = k;
  while (e > 0) {
    if (e & 1) r = mulPoly(r, b);
    e >>= 1;
    if (e) b = mulPoly(b, b);
  }
  return r;
}

Rat extractContent(Poly& p) {
  Int l = 1;
  for (auto& t : p.terms) l = intLcm(l, denominator(t.coef));
  Int g = 0;
  for (auto& t : p.terms) {
    Int m = numerator(t.coef) * (l / denominator(t.coef));
    g = intGcd(g, boost::multiprecision::abs(m));
  }
  Rat c(g, l);
  if (p.terms.back().coef < 0) c = -c;
  for (auto& t : p.terms) t.coef /= c;
  return c;
}

std::optional<Poly> exactDivide(const Poly& num, const Poly& div) {
  if (div.isZero() || !atomFree(div)) return std::nullopt;
  if (num.isZero()) return Poly{};
  const Term& dl = div.terms.back();  // leading under (degree, reversed-lex)
  // group dividend terms by atom signature; storage order keeps each group's
  // monomials ascending, so a group's last element is its leading term
  std::vector<std::pair<AtomSig, std::vector<Term>>> groups;
  for (auto& t : num.terms) {
    bool found = false;
    for (auto& g : groups)
      if (atomCmp(g.first, t.atoms) == 0) {
        g.second.push_back(t);
        found = true;
        break;
      }
    if (!found) groups.push_back({t.atoms, {t}});
  }
  std::vector<Term> out;
  for (auto& [sig, terms] : groups) {
    std::vector<Term> R = terms;
    while (!R.empty()) {
      const Term& lt = R.back();
      auto md = monoDiv(lt.mono, dl.mono);
      if (!md) return std::nullopt;
      Term qt{lt.coef / dl.coef, std::move(*md), sig};
      // R -= qt * div  (divisor is atom-free, so this is a plain merge)
      std::vector<Term> prod;
      prod.reserve(div.terms.size());
      for (auto& d : div.terms)
        prod.push_back(Term{qt.coef * d.coef, monoMul(qt.mono, d.mono), sig});
      std::vector<Term> nextR;
      nextR.reserve(R.size() + prod.size());
      std::size_t i = 0, j = 0;
      while (i < R.size() || j < prod.size()) {
        int c;
        if (i == R.size()) c = 1;
        else if (j == prod.size()) c = -1;
        else c = termCmp(R[i], prod[j]);
        if (c < 0) {
          nextR.push_back(R[i++]);
        } else if (c > 0) {
          Term t = prod[j++];
          t.coef = -t.coef;
          nextR.push_back(std::move(t));
        } else {
          Rat nc = R[i].coef - prod[j].coef;
          if (nc != 0) nextR.push_back(Term{nc, R[i].mono, sig});
          ++i, ++j;
        }
      }
      R = std::move(nextR);
      out.push_back(std::move(qt));
    }
  }
  normalizeTerms(out);
  Poly q;
  q.terms = std::move(out);
  return q;
}

// ---------- fractions ----------

namespace {

Poly expandDen(const std::vector<Factor>& den) {
  Poly p = polyConst(Rat(1));
  for (auto& f : den) p = mulPoly(p, powPoly(f.base, f.mult));
  return p;
}

void mergeFactor(std::vector<Factor>& den, Poly base, int mult) {
  for (auto& f : den)
    if (polyEq(f.base, base)) {
      f.mult += mult;
      return;
    }
  auto it = std::lower_bound(
      den.begin(), den.end(), base,
      [](const Factor& f, const Poly& b) { return polyCmp(f.base, b) < 0; });
  den.insert(it, Factor{std::move(base), mult});
}

// num == ratio * p termwise?
bool proportional(const Poly& num, const Poly& p, Rat* ratio) {
  if (num.terms.size() != p.terms.size() || num.isZero()) return false;
  Rat r = num.terms[0].coef / p.terms[0].coef;
  for (std::size_t i = 0; i < num.terms.size(); ++i) {
    if (termCmp(num.terms[i], p.terms[i]) != 0) return false;
    if (num.terms[i].coef != r * p.terms[i].coef) return false;
  }
  *ratio = r;
  return true;
}

// common exponential argument shared by every term, or null
Expr commonExpArg(const Poly& p) {
  Expr g = p.terms[0].atoms.expArg;
  if (!g) return nullptr;
  for (auto& t : p.terms) {
    if (!t.atoms.expArg || !expr_eq(t.atoms.expArg, g)) return nullptr;
  }
  return g;
}

Mono commonMono(const Poly& p) {
  Mono g = p.terms[0].mono;
  for (auto& t : p.terms) {
    Mono next;
    std::size_t i = 0, j = 0;
    while (i < g.size() && j < t.mono.size()) {
      if (g[i].first < t.mono[j].first) ++i;
      else if (t.mono[j].first < g[i].first) ++j;
      else {
        next.emplace_back(g[i].first, std::min(g[i].second, t.mono[j].second));
        ++i, ++j;
      }
    }
    g = std::move(next);
    if (g.empty()) break;
  }
  return g;
}

void stripMono(Poly& p, const Mono& g) {
  for (auto& t : p.terms) t.mono = *monoDiv(t.mono, g);
}

// divide R.num by base^mult, normalizing base along the way
void insertDenFactor(Fraction& R, Poly base, int mult);

void insertNormalizedDen(Fraction& R, Poly base, int mult) {
  // cancellation against the numerator (exact trial division)
  if (atomFree(base)) {
    while (mult > 0) {
      auto q = exactDivide(R.num, base);
      if (!q) break;
      R.num = std::move(*q);
      --mult;
    }
    if (mult > 0) mergeFactor(R.den, std::move(base), mult);
    return;
  }
  // factor carries atoms that conjugation could not clear: cancel only the
  // structural multiple case, otherwise keep opaque (under-reduction is
  // cosmetic; zero testing uses the numerator alone)
  Rat ratio;
  while (mult > 0 && proportional(R.num, base, &ratio)) {
    R.num = polyConst(ratio);
    --mult;
  }
  if (mult > 0) mergeFactor(R.den, std::move(base), mult);
}

void insertDenFactor(Fraction& R, Poly base, int mult) {
  if (base.isZero()) throw DomainError("division by a zero expression");
  Rat c = extractContent(base);
  if (c != 1) {
    Rat inv = Rat(1) / c;
    Rat s = 1;
    for (int i = 0; i < mult; ++i) s *= inv;
    R.num = scalePoly(R.num, s);
  }
  Mono g = commonMono(base);
  if (!g.empty()) {
    stripMono(base, g);
    for (auto& [v, e] : g) insertNormalizedDen(R, polyVar(v), e * mult);
  }
  if (Expr ge = commonExpArg(base)) {
    for (auto& t : base.terms) t.atoms.expArg = nullptr;
    R.num = mulPoly(R.num, polyExpAtom(canonicalScale(ge, Rat(-mult))));
  }
  if (base.terms.size() == 1 && base.terms[0].mono.empty() &&
      base.terms[0].atoms.empty()) {
    return;  // reduced to 1
  }
  // rationalize square roots by conjugation
  for (;;) {
    Expr s;
    for (auto& t : base.terms)
      for (auto& a : t.atoms.sqrtArgs)
        if (!s || expr_cmp(a, s) < 0) s = a;
    if (!s) break;
    Poly A, B;
    for (auto& t : base.terms) {
      auto it = std::find_if(t.atoms.sqrtArgs.begin(), t.atoms.sqrtArgs.end(),
                             [&](const Expr& a) { return expr_eq(a, s); });
      if (it != t.atoms.sqrtArgs.end()) {
        Term u = t;
        u.atoms.sqrtArgs.erase(u.atoms.sqrtArgs.begin() +
                               (it - t.atoms.sqrtArgs.begin()));
        B.terms.push_back(std::move(u));
      } else {
        A.terms.push_back(t);
      }
    }
    normalizeTerms(A.terms);
    normalizeTerms(B.terms);
    Poly d2 = subPoly(mulPoly(A, A), mulPoly(polyFromCanonical(s), mulPoly(B, B)));
    if (d2.isZero()) break;  // (A+B sqrt s)(A-B sqrt s) = 0: keep opaque
    // base^-1 = (A - B sqrt s) / d2
    Poly bs = B;
    for (auto& t : bs.terms) {
      t.coef = -t.coef;
      t.atoms.sqrtArgs.insert(
          std::upper_bound(t.atoms.sqrtArgs.begin(), t.atoms.sqrtArgs.end(), s,
                           [](const Expr& x, const Expr& y) {
                             return expr_cmp(x, y) < 0;
                           }),
          s);
    }
    Poly conj = addPoly(A, bs);
    R.num = mulPoly(R.num, powPoly(conj, mult));
    insertDenFactor(R, std::move(d2), mult);
    return;
  }
  insertNormalizedDen(R, std::move(base), mult);
}

Fraction makeFraction(Poly num, std::vector<Factor> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Factor& a, const Factor& b) {
              return polyCmp(a.base, b.base) < 0;
            });
  Fraction r;
  r.num = std::move(num);
  for (auto& c : candidates) insertDenFactor(r, std::move(c.base), c.mult);
  if (r.num.isZero()) r.den.clear();
  return r;
}

std::vector<Factor> mergeFactorLists(const std::vector<Factor>& a,
                                     const std::vector<Factor>& b) {
  std::vector<Factor> out = a;
  for (auto& f : b) {
    bool found = false;
    for (auto& g : out)
      if (polyEq(g.base, f.base)) {
        g.mult += f.mult;
        found = true;
        break;
      }
    if (!found) out.push_back(f);
  }
  return out;
}

}  // namespace

Fraction fracConst(const Rat& c) { return Fraction{polyConst(c), {}}; }
Fraction fracVar(int index) { return Fraction{polyVar(index), {}}; }

Fraction addF(const Fraction& a, const Fraction& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  // least common denominator over the factored lists
  std::vector<Factor> lcm = a.den;
  for (auto& f : b.den) {
    bool found = false;
    for (auto& g : lcm)
      if (polyEq(g.base, f.base)) {
        g.mult = std::max(g.mult, f.mult);
        found = true;
        break;
      }
    if (!found) lcm.push_back(f);
  }
  auto cofactor = [&](const std::vector<Factor>& den) {
    Poly c = polyConst(Rat(1));
    for (auto& g : lcm) {
      int have = 0;
      for (auto& f : den)
        if (polyEq(f.base, g.base)) have = f.mult;
      if (g.mult > have) c = mulPoly(c, powPoly(g.base, g.mult - have));
    }
    return c;
  };
  Poly num = addPoly(mulPoly(a.num, cofactor(a.den)), mulPoly(b.num, cofactor(b.den)));
  return makeFraction(std::move(num), std::move(lcm));
}

Fraction negF(const Fraction& a) {
  Fraction r = a;
  r.num = negPoly(r.num);
  return r;
}

Fraction subF(const Fraction& a, const Fraction& b) { return addF(a, negF(b)); }

Fraction mulF(const Fraction& a, const Fraction& b) {
  if (a.isZero() || b.isZero()) return Fraction{};
  Poly num = mulPoly(a.num, b.num);
  return makeFraction(std::move(num), mergeFactorLists(a.den, b.den));
}

Fraction invF(const Fraction& a) {
  if (a.isZero()) throw DomainError("division by a zero expression");
  Poly num = expandDen(a.den);
  return makeFraction(std::move(num), {Factor{a.num, 1}});
}

Fraction powF(const Fraction& a, int k) {
  if (k == 0) return fracConst(Rat(1));
  if (k < 0) return powF(invF(a), -k);
  Fraction r = fracConst(Rat(1));
  Fraction b = a;
  int e = k;
  while (e > 0) {
    if (e & 1) r = mulF(r, b);
    e >>= 1;
    if (e) b = mulF(b, b);
  }
  return r;
}

// ---------- conversion ----------

namespace {

// integer square part by trial division: t = s^2 * m with m square-reduced
// over small primes; large unfactored cofactors stay inside m
void extractSquare(Int t, Int& s, Int& m) {
  s = 1;
  m = 1;
  for (Int p = 2; p * p <= t && p < 1000000; p = (p == 2 ? Int(3) : p + 2)) {
    int k = 0;
    while (t % p == 0) {
      t /= p;
      ++k;
    }
    for (int i = 0; i < k / 2; ++i) s *= p;
    if (k % 2) m *= p;
  }
  m *= t;
}

// sqrt of a denominator-free polynomial as a one-term Poly
Poly sqrtPoly(Poly p) {
  if (p.isZero()) return Poly{};
  Rat c = extractContent(p);
  bool neg = c < 0;
  Rat a = neg ? -c : c;
  Expr half;
  if (Expr g = commonExpArg(p)) {
    for (auto& t : p.terms) t.atoms.expArg = nullptr;
    half = canonicalScale(g, Rat(1, 2));
    if (isZero(half)) half = nullptr;
  }
  if (neg) p = negPoly(p);
  // sqrt(a) = sqrt(num*den)/den, square part extracted by trial division
  Int t = numerator(a) * denominator(a);
  Int s, m;
  extractSquare(t, s, m);
  Term out;
  out.coef = Rat(s, denominator(a));
  out.atoms.expArg = half;
  bool trivialArg = p.terms.size() == 1 && p.terms[0].mono.empty() &&
                    p.terms[0].atoms.empty() && p.terms[0].coef == 1 && !neg;
  if (trivialArg && m == 1) {
    Poly r;
    r.terms.push_back(std::move(out));
    return r;
  }
  std::vector<Expr> sq;
  if (m != 1) sq.push_back(mkConst(Rat(m)));
  if (!trivialArg || neg) {
    Fraction pf;
    pf.num = p;
    Expr argExpr = toExpr(pf);
    if (isConst(argExpr) && argExpr->value < 0)
      throw DomainError("square root of a negative constant");
    if (!(isConst(argExpr) && argExpr->value == 1)) sq.push_back(argExpr);
  }
  std::sort(sq.begin(), sq.end(),
            [](const Expr& x, const Expr& y) { return expr_cmp(x, y) < 0; });
  out.atoms.sqrtArgs = std::move(sq);
  Poly r;
  r.terms.push_back(std::move(out));
  return r;
}

Expr renderTerm(const Term& t);

Expr renderPoly(const Poly& p) {
  if (p.isZero()) return mkConst(0);
  if (p.terms.size() == 1) return renderTerm(p.terms[0]);
  std::vector<Expr> kids;
  kids.reserve(p.terms.size());
  for (auto& t : p.terms) kids.push_back(renderTerm(t));
  return mkSum(std::move(kids));
}

Expr renderTerm(const Term& t) {
  std::vector<Expr> fs;
  if (t.coef != 1) fs.push_back(mkConst(t.coef));
  for (auto& [v, e] : t.mono) fs.push_back(mkPow(mkVar(v), e));
  if (t.atoms.expArg) fs.push_back(mkExp(t.atoms.expArg));
  for (auto& s : t.atoms.sqrtArgs) fs.push_back(mkSqrt(s));
  if (fs.empty()) return mkConst(1);
  if (fs.size() == 1) return fs[0];
  return mkProd(std::move(fs));
}

}  // namespace

Fraction fromExpr(const Expr& e) {
  switch (e->kind) {
    case Kind::Constant:
      return fracConst(e->value);
    case Kind::Variable:
      return fracVar(e->var);
    case Kind::Sum: {
      Fraction r;
      for (auto& k : e->kids) r = addF(r, fromExpr(k));
      return r;
    }
    case Kind::Product: {
      Fraction r = fracConst(Rat(1));
      for (auto& k : e->kids) {
        r = mulF(r, fromExpr(k));
        if (r.isZero()) return r;
      }
      return r;
    }
    case Kind::IntPower:
      return powF(fromExpr(e->base), e->expo);
    case Kind::Exp: {
      Expr arg = toExpr(fromExpr(e->arg));
      if (isZero(arg)) return fracConst(Rat(1));
      Fraction r;
      r.num = polyExpAtom(arg);
      return r;
    }
    case Kind::Sqrt: {
      Fraction f = fromExpr(e->arg);
      if (f.isZero()) return Fraction{};
      // sqrt(N/D) = sqrt(N*D)/D (denominators assumed positive where used)
      Poly arg = mulPoly(f.num, expandDen(f.den));
      Poly num = sqrtPoly(std::move(arg));
      std::vector<Factor> den = f.den;
      return makeFraction(std::move(num), std::move(den));
    }
  }
  return Fraction{};
}

Expr toExpr(const Fraction& f) {
  if (f.num.isZero()) return mkConst(0);
  Poly p = f.num;
  Rat c = extractContent(p);
  // multi-term numerators keep their signs inline; a single term folds its
  // sign into the constant factor
  if (p.terms.size() > 1 && c < 0) {
    c = -c;
    for (auto& t : p.terms) t.coef = -t.coef;
  }
  Mono g = commonMono(p);
  if (!g.empty()) stripMono(p, g);
  Expr ge = commonExpArg(p);
  if (ge) {
    for (auto& t : p.terms) t.atoms.expArg = nullptr;
  }
  // square-root atoms common to all terms
  std::vector<Expr> gs = p.terms[0].atoms.sqrtArgs;
  for (auto& t : p.terms) {
    std::vector<Expr> next;
    std::size_t i = 0, j = 0;
    while (i < gs.size() && j < t.atoms.sqrtArgs.size()) {
      int cc = expr_cmp(gs[i], t.atoms.sqrtArgs[j]);
      if (cc == 0) {
        next.push_back(gs[i]);
        ++i, ++j;
      } else if (cc < 0) ++i;
      else ++j;
    }
    gs = std::move(next);
    if (gs.empty()) break;
  }
  if (!gs.empty()) {
    for (auto& t : p.terms) {
      std::vector<Expr> rest;
      std::size_t i = 0, j = 0;
      while (j < t.atoms.sqrtArgs.size()) {
        if (i < gs.size() && expr_cmp(gs[i], t.atoms.sqrtArgs[j]) == 0) {
          ++i, ++j;
        } else {
          rest.push_back(t.atoms.sqrtArgs[j++]);
        }
      }
      t.atoms.sqrtArgs = std::move(rest);
    }
  }
  bool trivial = p.terms.size() == 1 && p.terms[0].coef == 1 &&
                 p.terms[0].mono.empty() && p.terms[0].atoms.empty();
  std::vector<Expr> fs;
  if (c != 1) fs.push_back(mkConst(c));
  for (auto& [v, e] : g) fs.push_back(mkPow(mkVar(v), e));
  if (!trivial) fs.push_back(renderPoly(p));
  if (ge) fs.push_back(mkExp(ge));
  for (auto& s : gs) fs.push_back(mkSqrt(s));
  for (auto& d : f.den) fs.push_back(mkPow(renderPoly(d.base), -d.mult));
  if (fs.empty()) return mkConst(1);
  if (fs.size() == 1) return fs[0];
  return mkProd(std::move(fs));
}

}  // namespace fint::nf
