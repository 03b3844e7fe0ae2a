#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fint/catalog.hpp"
#include "fint/errors.hpp"
#include "fint/first_integral.hpp"
#include "fint/low_dim.hpp"
#include "fint/normalizer.hpp"
#include "fint/parser.hpp"

using namespace fint;

namespace {

VectorField mkField(const std::vector<std::string>& comps,
                    const std::vector<std::string>& vars) {
  VectorField F;
  F.vars = vars;
  for (const auto& c : comps) F.components.push_back(parse_expr(c, vars));
  return F;
}

Expr P(const std::string& s, const std::vector<std::string>& vars) {
  return parse_expr(s, vars);
}

}  // namespace

TEST_CASE("coordinate pair yields the closed coordinate form") {
  auto X = mkField({"1", "0"}, {"x", "y"});
  auto Y = mkField({"0", "1"}, {"x", "y"});
  Box box = Box::unit(2);
  OneForm w = lie_one_form(X, Y, VolumeForm::standard(), box);

  CHECK(expr_eq(w.coefficients[0], mkConst(0)));
  CHECK(expr_eq(w.coefficients[1], mkConst(1)));
  CHECK(w.closedness.provenZero());
  // the primitive is constant along X
  Expr pairing = simplify(eAdd(eMul(w.coefficients[0], X.components[0]),
                               eMul(w.coefficients[1], X.components[1])));
  CHECK(is_zero(pairing, box).provenZero());
  CHECK(quadrature(w, {0.0, 0.0}, {0.3, 0.7}) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("planar factor recovery matches the hand computed value") {
  auto prob = example5();
  const auto& X = prob.problem.X;
  const auto& Y = *prob.problem.Y;
  Box box = prob.problem.domain;
  VolumeForm vol = prob.problem.volume();

  Expr f0 = planar_f_from_Y(X, Y, vol, box);
  Expr expected = P("-(1+x^2)*exp(-x)/(1+x^4+y^4)^2", X.vars);
  CHECK(expr_eq(simplify(eSub(f0, expected)), mkConst(0)));
  CHECK(is_integrating_factor(f0, X, vol, box).provenZero());

  // the recovered factor carries no information beyond the pair itself
  auto sol = solve_lambda_mu(X, Y, box);
  auto r = theorem1(X, Y, f0, sol.lambda, sol.mu, vol, box);
  CHECK(is_zero(r.H, box).provenZero());
}

TEST_CASE("planar normalizer recovery matches the hand computed field") {
  auto prob = example5();
  const auto& X = prob.problem.X;
  Box box;
  box.iv = {{0.2, 0.9}, {0.2, 0.9}};
  VolumeForm vol = prob.problem.volume();

  auto Yp = planar_Y_from_f(X, prob.problem.f, vol, box);
  CHECK(expr_eq(Yp.components[0], mkConst(0)));
  Expr expected = P("exp(-x)/(4*y^3)", X.vars);
  CHECK(expr_eq(simplify(eSub(Yp.components[1], expected)), mkConst(0)));

  // the recovered field normalizes X and its factor yields a constant integral
  auto sol = solve_lambda_mu(X, Yp, box);
  CHECK_FALSE(sol.residual.components.empty());
  auto r = theorem1(X, Yp, prob.problem.f, sol.lambda, sol.mu, vol, box);
  CHECK(is_zero(r.H, box).provenZero());
}

TEST_CASE("linear radial field inverts to a constant normalizer") {
  auto X = mkField({"x", "0"}, {"x", "y"});
  Box box;
  box.iv = {{0.5, 1.5}, {-1.0, 1.0}};
  auto Y = planar_Y_from_f(X, P("1/x", X.vars), VolumeForm::standard(), box);
  CHECK(expr_eq(Y.components[0], mkConst(0)));
  CHECK(expr_eq(Y.components[1], mkConst(-1)));

  auto sol = solve_lambda_mu(X, Y, box);
  CHECK(is_zero(sol.lambda, box).provenZero());
  auto r = theorem1(X, Y, P("1/x", X.vars), sol.lambda, sol.mu,
                    VolumeForm::standard(), box);
  CHECK(is_zero(r.H, box).provenZero());
}

TEST_CASE("planar construction guards reject bad input") {
  auto X = mkField({"1", "x"}, {"x", "y"});
  auto Ypar = mkField({"2", "2*x"}, {"x", "y"});
  Box box = Box::unit(2);
  VolumeForm vol = VolumeForm::standard();
  CHECK_THROWS_AS(lie_one_form(X, Ypar, vol, box), RankDeficient);
  CHECK_THROWS_AS(planar_f_from_Y(X, Ypar, vol, box), RankDeficient);

  auto Xfree = mkField({"1", "0"}, {"x", "y"});
  CHECK_THROWS_AS(planar_Y_from_f(Xfree, P("1+x", X.vars), vol, box),
                  DivergenceFree);
  auto Xdiv = mkField({"x", "0"}, {"x", "y"});
  CHECK_THROWS_AS(planar_Y_from_f(Xdiv, mkConst(0), vol, box), ZeroFactor);

  auto X3 = mkField({"1", "0", "0"}, {"x", "y", "z"});
  CHECK_THROWS_AS(planar_f_from_Y(X3, X3, VolumeForm::standard(),
                                  Box::unit(3)),
                  DimensionMismatch);
}

TEST_CASE("non normalizing pair produces a provably non closed form") {
  auto X = mkField({"1", "0"}, {"x", "y"});
  auto Y = mkField({"0", "x"}, {"x", "y"});
  Box box;
  box.iv = {{0.5, 1.5}, {0.5, 1.5}};
  OneForm w = lie_one_form(X, Y, VolumeForm::standard(), box);
  CHECK(w.closedness.provenNonzero());
}

TEST_CASE("quadrature of a polynomial differential is exact") {
  OneForm w;
  w.vars = {"x", "y"};
  w.coefficients = {P("5*x^4", w.vars), P("3*y^2", w.vars)};
  w.closedness = closedness_of(w.coefficients, Box::unit(2));
  CHECK(w.closedness.provenZero());
  // primitive x^5 + y^3
  double v = quadrature(w, {0.0, 0.0}, {1.0, 2.0}, 2);
  CHECK(v == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("closed forms integrate path independently") {
  OneForm w;
  w.vars = {"x", "y"};
  w.coefficients = {P("y", w.vars), P("x", w.vars)};
  std::vector<double> a{-0.4, 0.3}, b{0.8, -0.9};
  double straight = quadrature_along(w, {a, b}, 64);
  double stair1 = quadrature_along(w, {a, {b[0], a[1]}, b}, 64);
  double stair2 = quadrature_along(w, {a, {a[0], b[1]}, b}, 64);
  CHECK(straight == doctest::Approx(b[0] * b[1] - a[0] * a[1]).epsilon(1e-12));
  CHECK(std::abs(straight - stair1) < 1e-12);
  CHECK(std::abs(straight - stair2) < 1e-12);
}

TEST_CASE("non closed forms expose the path dependence") {
  OneForm w;
  w.vars = {"x", "y"};
  w.coefficients = {P("-y", w.vars), P("0", w.vars)};
  std::vector<double> a{0.0, 0.0}, b{1.0, 1.0};
  double straight = quadrature_along(w, {a, b}, 64);
  double stair = quadrature_along(w, {a, {1.0, 0.0}, b}, 64);
  CHECK(straight == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(stair == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("singular paths are detoured or reported") {
  OneForm w;
  w.vars = {"x", "y"};
  // defined only outside the disk of radius sqrt(1/2)
  w.coefficients = {P("0", w.vars), P("sqrt(x^2+y^2-1/2)", w.vars)};
  std::vector<double> a{-1.0, -1.0}, b{1.0, 1.0};
  CHECK_THROWS_AS(quadrature_along(w, {a, b}, 32), PathThroughSingularity);
  CHECK_NOTHROW(quadrature(w, a, b, 32));

  OneForm bad;
  bad.vars = {"x", "y"};
  bad.coefficients = {P("sqrt(-1-x^2)", bad.vars), P("0", bad.vars)};
  CHECK_THROWS_AS(quadrature(bad, a, b, 32), PathThroughSingularity);
}

TEST_CASE("planar primitive reproduces the known first integral") {
  auto prob = example5();
  const auto& X = prob.problem.X;
  const auto& Y = *prob.problem.Y;
  Box box = prob.problem.domain;
  VolumeForm vol = prob.problem.volume();

  OneForm w = lie_one_form(X, Y, vol, box);
  CHECK(w.closedness.provenZero());

  auto closedForm = [](double x, double y) {
    return -std::exp(-x) / (1.0 + x * x * x * x + y * y * y * y);
  };
  std::vector<double> base{0.0, 0.0};
  for (double x : {-0.8, -0.3, 0.2, 0.7})
    for (double y : {-0.6, 0.1, 0.9}) {
      double got = quadrature(w, base, {x, y});
      double want = closedForm(x, y) - closedForm(0.0, 0.0);
      CHECK(std::abs(got - want) < 1e-9);
    }

  // two staircase orders agree on a closed form
  std::vector<double> t{0.6, -0.5};
  double s1 = quadrature_along(w, {base, {t[0], base[1]}, t}, 256);
  double s2 = quadrature_along(w, {base, {base[0], t[1]}, t}, 256);
  CHECK(std::abs(s1 - s2) < 1e-10);
}

TEST_CASE("coordinate pair contraction in three dimensions") {
  auto X = mkField({"1", "0", "0"}, {"x", "y", "z"});
  auto Y = mkField({"0", "1", "0"}, {"x", "y", "z"});
  Box box = Box::unit(3);
  OneForm eta = pair_contraction_3d(X, Y, VolumeForm::standard(), box);
  CHECK(expr_eq(eta.coefficients[0], mkConst(0)));
  CHECK(expr_eq(eta.coefficients[1], mkConst(0)));
  CHECK(expr_eq(eta.coefficients[2], mkConst(-1)));
  CHECK(eta.closedness.provenZero());

  double v = volume_pair_potential_3d(X, Y, VolumeForm::standard(),
                                      {0.0, 0.0, 0.0}, {0.4, -0.2, 0.6}, box);
  CHECK(v == doctest::Approx(-0.6).epsilon(1e-12));
}

TEST_CASE("rotation and vertical translation give the radial potential") {
  auto X = mkField({"-y", "x", "0"}, {"x", "y", "z"});
  auto Y = mkField({"0", "0", "1"}, {"x", "y", "z"});
  Box box = Box::unit(3);
  OneForm eta = pair_contraction_3d(X, Y, VolumeForm::standard(), box);
  CHECK(eta.closedness.provenZero());

  for (auto [x, y, z] : {std::array<double, 3>{0.5, 0.3, -0.7},
                         std::array<double, 3>{-0.9, 0.2, 0.1},
                         std::array<double, 3>{0.0, -0.6, 0.8}}) {
    double v = volume_pair_potential_3d(X, Y, VolumeForm::standard(),
                                        {0.0, 0.0, 0.0}, {x, y, z}, box);
    CHECK(std::abs(v - (-(x * x + y * y) / 2.0)) < 1e-10);
  }
}

TEST_CASE("volume pair potential rejects broken hypotheses") {
  Box box = Box::unit(3);
  VolumeForm vol = VolumeForm::standard();
  auto Z = mkField({"0", "0", "1"}, {"x", "y", "z"});

  auto Xdiv = mkField({"x", "0", "0"}, {"x", "y", "z"});
  CHECK_THROWS_AS(volume_pair_potential_3d(Xdiv, Z, vol, {0, 0, 0}, {1, 1, 1},
                                           box),
                  HypothesisViolated);
  CHECK_THROWS_AS(volume_pair_potential_3d(Z, Xdiv, vol, {0, 0, 0}, {1, 1, 1},
                                           box),
                  HypothesisViolated);

  auto A = mkField({"0", "x", "0"}, {"x", "y", "z"});
  auto B = mkField({"0", "0", "y"}, {"x", "y", "z"});
  CHECK_THROWS_AS(volume_pair_potential_3d(A, B, vol, {0, 0, 0}, {1, 1, 1},
                                           box),
                  HypothesisViolated);
}

TEST_CASE("random planar pairs route through the constructions") {
  int transverse = 0, parallel = 0;
  for (unsigned seed = 1; seed <= 12; ++seed) {
    auto inst = random_instance(seed, 2, 2);
    const auto& X = inst.problem.X;
    const auto& Y = *inst.problem.Y;
    Box box = inst.problem.domain;
    VolumeForm vol = inst.problem.volume();
    if (inst.kind == CertificateKind::Degenerate) {
      ++parallel;
      CHECK_THROWS_AS(planar_f_from_Y(X, Y, vol, box), RankDeficient);
      continue;
    }
    ++transverse;
    Expr f0 = planar_f_from_Y(X, Y, vol, box);
    CHECK(is_integrating_factor(f0, X, vol, box).provenZero());
    auto sol = solve_lambda_mu(X, Y, box);
    auto r = theorem1(X, Y, f0, sol.lambda, sol.mu, vol, box);
    CHECK(is_trivial(r.H, box).provenZero());
  }
  CHECK(transverse > 0);
  CHECK(parallel > 0);
}
