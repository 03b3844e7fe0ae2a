#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fint/errors.hpp"
#include "fint/rational.hpp"
#include "fint/rng.hpp"

namespace fint {

// Immutable symbolic expression tree. Canonical form (post-simplify):
//  - Sums contain no nested Sums; like terms are combined.
//  - Products contain no nested Products and at most one rational constant.
//  - IntPower has a non-constant base and exponent != 0, +1 collapses to base.
//  - Exp(a)*Exp(b) is merged to Exp(a+b); Sqrt(s)^2 reduces to s.
//  - Term and factor order is total and deterministic.
// Structural equality of canonical forms implies mathematical equality.
enum class Kind { Constant, Variable, Sum, Product, IntPower, Exp, Sqrt };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Kind kind;
  Rat value;              // Constant
  int var = -1;           // Variable
  std::vector<Expr> kids; // Sum / Product
  Expr base;              // IntPower
  int expo = 0;           // IntPower
  Expr arg;               // Exp / Sqrt
};

// Raw builders; no canonicalization beyond trivial flattening. Run simplify()
// to reach canonical form.
Expr mkConst(Rat v);
Expr mkConst(long long v);
Expr mkVar(int index);
Expr mkSum(std::vector<Expr> kids);
Expr mkProd(std::vector<Expr> kids);
Expr mkPow(Expr base, int expo);
Expr mkExp(Expr arg);
Expr mkSqrt(Expr arg);

Expr eAdd(Expr a, Expr b);
Expr eSub(Expr a, Expr b);
Expr eMul(Expr a, Expr b);
Expr eMul(Expr a, Expr b, Expr c);
Expr eDiv(Expr a, Expr b);  // a * b^-1
Expr eNeg(Expr a);

// Total deterministic order; 0 iff structurally equal.
int expr_cmp(const Expr& a, const Expr& b);
bool expr_eq(const Expr& a, const Expr& b);

bool isConst(const Expr& e);
bool isZero(const Expr& e);  // literal constant 0
bool isOne(const Expr& e);
// Largest variable index appearing, -1 if none.
int maxVarIndex(const Expr& e);

// Canonical form; pure, idempotent, total on well-formed input.
Expr simplify(const Expr& e);

// Partial derivative with respect to variable index; returns canonical form.
Expr differentiate(const Expr& e, int var);

// IEEE double value at a point (one entry per variable index). Throws
// DomainError near poles (|denominator| < epsdom), on negative sqrt arguments
// and on non-finite intermediates. When maxAbsSub is non-null it receives the
// largest |value| over all subexpressions, used to scale residuals.
double evaluate(const Expr& e, const std::vector<double>& point,
                double epsdom = 1e-12, double* maxAbsSub = nullptr);

// Three-valued result of zero-testing.
enum class VerdictKind { ProvenZero, ProvenNonzero, NumericZero };

struct Verdict {
  VerdictKind kind = VerdictKind::NumericZero;
  long sampleCount = 0;      // NumericZero only
  double maxAbsResidual = 0; // NumericZero only
  double threshold = 0;      // NumericZero only

  bool provenZero() const { return kind == VerdictKind::ProvenZero; }
  bool provenNonzero() const { return kind == VerdictKind::ProvenNonzero; }
  std::string str() const;

  static Verdict provenZeroV() { return {VerdictKind::ProvenZero, 0, 0, 0}; }
  static Verdict provenNonzeroV() { return {VerdictKind::ProvenNonzero, 0, 0, 0}; }
};

// Worst-of conjunction: any ProvenNonzero wins, else any NumericZero
// (largest residual, smallest sample count), else ProvenZero.
Verdict combineVerdicts(const Verdict& a, const Verdict& b);

struct ZeroTestConfig {
  int samples = 64;        // points attempted
  double threshold = 1e-7; // on scaled residuals
  double epsdom = 1e-12;
  int minSamples = 16;     // fewer valid points than this -> InsufficientSamples
  std::uint64_t seed = 0;
  Expr avoid;              // when set, skip points with |avoid| < avoidCut
  double avoidCut = 1e-8;
};

// ProvenZero iff the canonical form is the zero constant; ProvenNonzero for
// nonzero constants or when a sample exceeds the threshold after scaling by
// 1/(1 + largest subterm magnitude); otherwise NumericZero with the recorded
// maximum residual.
Verdict is_zero(const Expr& e, const Box& domain, const ZeroTestConfig& cfg = {});

}  // namespace fint
