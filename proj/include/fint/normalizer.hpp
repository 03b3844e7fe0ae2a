#pragma once

#include "fint/field_calculus.hpp"

namespace fint {

enum class NormalizerKind { ExactNormalizer, Generalized, DegenerateParallel };

// solution of [X,Y] = lambda X + mu Y; residual stores the simplified
// difference and verdict the conjunction of its per-component zero tests
struct NormalizerSolution {
  Expr lambda;
  Expr mu;
  VectorField residual;
  NormalizerKind kind = NormalizerKind::Generalized;
  Verdict verdict;
  // component pair used by Cramer's rule; -1 for the parallel case
  int pi = -1;
  int pj = -1;
};

// Solves the 2x2 linear system on a component pair whose minor
// X_i Y_j - X_j Y_i is provably nonzero, then tests the remaining
// components. Pair choice: largest minimum |minor| over 16 probe points,
// deterministic for a fixed cfg.seed. forceI/forceJ pin the pair instead
// (diagnostics; the pinned minor must not be identically zero).
//
// All minors provably zero means Y is parallel to X; the quotient h with
// Y = hX is recovered from a provably nonzero component and lambda = X(h),
// mu = 0. Throws UnresolvedRank when the zero tests cannot settle the rank
// and NoSolution when the bracket provably leaves the span of X and Y.
NormalizerSolution solve_lambda_mu(const VectorField& X, const VectorField& Y,
                                   const Box& domain,
                                   const ZeroTestConfig& cfg = {},
                                   int forceI = -1, int forceJ = -1);

// verdict on [X,Y] - lambda X - mu Y = 0, componentwise, conjoined
Verdict check_relation(const VectorField& X, const VectorField& Y,
                       const Expr& lambda, const Expr& mu, const Box& domain,
                       const ZeroTestConfig& cfg = {});

}  // namespace fint
