#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fint/expr.hpp"
#include "fint/field_calculus.hpp"
#include "fint/rng.hpp"

namespace testutil {

using namespace fint;

// random expression over `dim` variables; sqrt arguments are built as
// 1 + w^2 so they stay nonnegative wherever they are defined
inline Expr randomExpr(const CounterRng& rng, std::uint64_t& ctr, int depth,
                       int dim) {
  if (depth <= 0 || rng.below(ctr++, 5) == 0) {
    if (rng.below(ctr++, 2) == 0) {
      long long num = static_cast<long long>(rng.below(ctr++, 7)) - 3;
      long long den = static_cast<long long>(rng.below(ctr++, 3)) + 1;
      return mkConst(Rat(num, den));
    }
    return mkVar(static_cast<int>(rng.below(ctr++, dim)));
  }
  switch (rng.below(ctr++, 6)) {
    case 0: {
      std::vector<Expr> kids;
      int n = 2 + static_cast<int>(rng.below(ctr++, 2));
      for (int i = 0; i < n; ++i)
        kids.push_back(randomExpr(rng, ctr, depth - 1, dim));
      return mkSum(std::move(kids));
    }
    case 1: {
      std::vector<Expr> kids;
      int n = 2 + static_cast<int>(rng.below(ctr++, 2));
      for (int i = 0; i < n; ++i)
        kids.push_back(randomExpr(rng, ctr, depth - 1, dim));
      return mkProd(std::move(kids));
    }
    case 2: {
      static const int expos[4] = {-2, -1, 2, 3};
      return mkPow(randomExpr(rng, ctr, depth - 1, dim),
                   expos[rng.below(ctr++, 4)]);
    }
    case 3:
      return mkExp(randomExpr(rng, ctr, depth - 1, dim));
    case 4: {
      Expr w = randomExpr(rng, ctr, depth - 1, dim);
      return mkSqrt(eAdd(mkConst(1), mkPow(w, 2)));
    }
    default:
      return randomExpr(rng, ctr, depth - 1, dim);
  }
}

// random polynomial: a short sum of small monomials
inline Expr randomPoly(const CounterRng& rng, std::uint64_t& ctr, int maxDeg,
                       int dim) {
  std::vector<Expr> terms;
  int nTerms = 1 + static_cast<int>(rng.below(ctr++, 3));
  for (int t = 0; t < nTerms; ++t) {
    long long coef = static_cast<long long>(rng.below(ctr++, 9)) - 4;
    if (coef == 0) coef = 1;
    std::vector<Expr> factors{mkConst(coef)};
    int deg = static_cast<int>(rng.below(ctr++, static_cast<std::uint64_t>(maxDeg) + 1));
    for (int d = 0; d < deg; ++d)
      factors.push_back(mkVar(static_cast<int>(rng.below(ctr++, dim))));
    terms.push_back(mkProd(std::move(factors)));
  }
  return simplify(mkSum(std::move(terms)));
}

inline VectorField randomPolyField(const CounterRng& rng, std::uint64_t& ctr,
                                   int maxDeg, int dim,
                                   const std::vector<std::string>& vars) {
  VectorField f;
  f.vars = vars;
  for (int i = 0; i < dim; ++i)
    f.components.push_back(randomPoly(rng, ctr, maxDeg, dim));
  return f;
}

inline std::vector<std::string> xyVars(int dim) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (int i = 0; i < dim; ++i) v.push_back(names[i]);
  return v;
}

}  // namespace testutil
