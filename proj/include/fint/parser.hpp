#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fint/expr.hpp"
#include "fint/field_calculus.hpp"
#include "fint/rng.hpp"

namespace fint {

// grammar:  sum     := product (('+'|'-') product)*
//           product := unary (('*'|'/') unary)*
//           unary   := '-' unary | power
//           power   := atom ('^' integer)?
//           atom    := number | name | name '(' sum ')' | '(' sum ')'
// functions: exp, sqrt; decimals become exact rationals; result canonicalized
Expr parse_expr(const std::string& text, const std::vector<std::string>& vars);

// deterministic rendering; parse_expr(print_expr(e)) == e for canonical e
std::string print_expr(const Expr& e, const std::vector<std::string>& vars);

struct Problem {
  std::vector<std::string> vars;
  Expr rho;                         // volume density, default 1
  VectorField X;
  std::optional<VectorField> Y;
  std::vector<VectorField> Ylist;   // Y1, Y2, ...
  Expr f;                           // null when absent
  Expr lambda;                      // null when absent
  Expr mu;                          // null when absent
  Box domain;                       // default [-1,1]^n
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(vars.size()); }
  VolumeForm volume() const { return VolumeForm{rho}; }
};

// line-oriented `key = value` format with '#' comments; vector fields are
// bracketed comma-separated lists, continued across lines while brackets
// stay open; keys: vars volume X Y Y1.. f lambda mu domain seed
Problem load_problem(const std::string& path);
Problem load_problem_text(const std::string& content);

}  // namespace fint
