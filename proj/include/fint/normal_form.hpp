#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fint/expr.hpp"

// Exact normal form for the expression class: rational functions of the
// variables times exponentials (and optional square roots) of canonical
// arguments. A Fraction is an expanded multivariate numerator over a list of
// denominator factors kept in factored form so that exact trial division can
// cancel them. The numerator is the zero polynomial iff the expression is
// identically zero; every arithmetic operation below is exact.
namespace fint::nf {

// Sparse monomial: (variable index, exponent > 0), sorted by variable.
using Mono = std::vector<std::pair<int, int>>;

int monoDeg(const Mono& m);
Mono monoMul(const Mono& a, const Mono& b);
// a / b componentwise; nullopt when some exponent would go negative.
std::optional<Mono> monoDiv(const Mono& a, const Mono& b);
// Ascending total degree; within a degree, the monomial with the higher
// exponent at the smallest variable index comes first (x^4 before y^4).
int monoCmp(const Mono& a, const Mono& b);

// Multiplicative atoms attached to a term. expArg and every sqrtArg are
// canonical expressions; sqrtArgs is expr_cmp-sorted and duplicate-free
// (each square root appears to the first power; squares are absorbed).
struct AtomSig {
  Expr expArg;                 // null when absent
  std::vector<Expr> sqrtArgs;

  bool empty() const { return !expArg && sqrtArgs.empty(); }
};
int atomCmp(const AtomSig& a, const AtomSig& b);

struct Term {
  Rat coef;  // nonzero
  Mono mono;
  AtomSig atoms;
};
// (monoCmp, then atomCmp); total on the (mono, atoms) key.
int termCmp(const Term& a, const Term& b);

// Terms sorted strictly ascending by termCmp, coefficients nonzero.
// The zero polynomial is the empty vector.
struct Poly {
  std::vector<Term> terms;
  bool isZero() const { return terms.empty(); }
};

int polyCmp(const Poly& a, const Poly& b);
bool polyEq(const Poly& a, const Poly& b);
bool atomFree(const Poly& p);

Poly polyConst(const Rat& c);
Poly polyVar(int index);
Poly addPoly(const Poly& a, const Poly& b);
Poly negPoly(const Poly& a);
Poly subPoly(const Poly& a, const Poly& b);
Poly mulPoly(const Poly& a, const Poly& b);
Poly scalePoly(const Poly& a, const Rat& c);
Poly powPoly(const Poly& a, int k);  // k >= 0

// Divides out the rational content: afterwards p has coprime integer
// coefficients and a positive leading (last stored) coefficient; returns the
// content c with p_old = c * p_new. p must be nonzero.
Rat extractContent(Poly& p);

// Exact multivariate trial division, divisor free of atoms. The dividend is
// processed per atom signature; nullopt when any group fails to divide.
std::optional<Poly> exactDivide(const Poly& num, const Poly& div);

// Denominator factor; base is content-normalized.
struct Factor {
  Poly base;
  int mult;  // >= 1
};

struct Fraction {
  Poly num;
  std::vector<Factor> den;  // polyCmp-sorted, bases pairwise distinct

  bool isZero() const { return num.isZero(); }
};

Fraction fracConst(const Rat& c);
Fraction fracVar(int index);
Fraction addF(const Fraction& a, const Fraction& b);
Fraction negF(const Fraction& a);
Fraction subF(const Fraction& a, const Fraction& b);
Fraction mulF(const Fraction& a, const Fraction& b);
// Throws DomainError on inversion of a structurally zero expression.
Fraction invF(const Fraction& a);
Fraction powF(const Fraction& a, int k);

// Conversion. fromExpr accepts any well-formed tree; toExpr emits the
// canonical Expr (deterministic term/factor order, merged exponentials,
// content extracted). simplify(e) == toExpr(fromExpr(e)).
Fraction fromExpr(const Expr& e);
Expr toExpr(const Fraction& f);

}  // namespace fint::nf
