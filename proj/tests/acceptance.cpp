// One check per release criterion, one PASS/FAIL line each; the process
// exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fint/catalog.hpp"
#include "fint/cli.hpp"
#include "fint/errors.hpp"
#include "fint/first_integral.hpp"
#include "fint/low_dim.hpp"
#include "fint/normalizer.hpp"
#include "fint/numeric.hpp"
#include "fint/parser.hpp"
#include "json.hpp"

using namespace fint;
using nlohmann::json;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& why) {
  std::cout << "CRITERION " << n << ": " << (ok ? "PASS" : "FAIL");
  if (!ok && !why.empty()) std::cout << "  (" << why << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

template <class F>
void criterion(int n, F body) {
  try {
    std::string why;
    bool ok = body(why);
    report(n, ok, why);
  } catch (const std::exception& e) {
    report(n, false, e.what());
  }
}

std::string examplePath(const char* name) {
  return std::string(EXAMPLES_DIR) + "/" + name;
}

bool zeroDiff(const Expr& a, const Expr& b, const Box& box) {
  return is_zero(simplify(eSub(a, b)), box).provenZero();
}

// random dense polynomial with small integer coefficients
Expr randPoly(const CounterRng& rng, std::uint64_t& ctr, int nvars,
              int degree) {
  Expr acc = mkConst(static_cast<long long>(rng.below(ctr++, 5)) - 2);
  int terms = 2 + static_cast<int>(rng.below(ctr++, 3));
  for (int t = 0; t < terms; ++t) {
    long long c = static_cast<long long>(rng.below(ctr++, 7)) - 3;
    if (c == 0) c = 1;
    Expr mono = mkConst(c);
    int left = degree;
    for (int v = 0; v < nvars; ++v) {
      int e = static_cast<int>(rng.below(ctr++, static_cast<std::uint64_t>(left + 1)));
      left -= e;
      if (e > 0) mono = eMul(mono, mkPow(mkVar(v), e));
    }
    acc = eAdd(acc, mono);
  }
  return simplify(acc);
}

VectorField randField(const CounterRng& rng, std::uint64_t& ctr,
                      const std::vector<std::string>& vars, int degree) {
  VectorField F;
  F.vars = vars;
  for (std::size_t i = 0; i < vars.size(); ++i)
    F.components.push_back(
        randPoly(rng, ctr, static_cast<int>(vars.size()), degree));
  return F;
}

bool fieldProvenZero(const VectorField& F, const Box& box) {
  for (const auto& c : F.components)
    if (!is_zero(simplify(c), box).provenZero()) return false;
  return true;
}

bool criterion1(std::string& why) {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  int code = run_cli({"first-integral", examplePath("example5.prob"), "--json"},
                     out, err);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (code != 0) {
    why = "exit code " + std::to_string(code);
    return false;
  }
  json rep = json::parse(out.str());
  std::vector<std::string> vars{"x", "y"};
  Expr H = parse_expr(rep["firstIntegral"]["H"].get<std::string>(), vars);
  Expr want = parse_expr("2*(1+x^4+y^4)*exp(x)", vars);
  if (!zeroDiff(H, want, Box::unit(2))) {
    why = "H mismatch";
    return false;
  }
  if (secs >= 5.0) {
    why = "took " + std::to_string(secs) + "s";
    return false;
  }
  return true;
}

bool criterion2(std::string& why) {
  auto prob = example5().problem;
  ZeroTestConfig cfg;
  cfg.samples = 128;
  cfg.avoid = simplify(prob.f);
  auto sol = solve_lambda_mu(prob.X, *prob.Y, prob.domain, cfg);
  for (const auto& c : sol.residual.components) {
    Verdict v = is_zero(simplify(c), prob.domain, cfg);
    if (v.provenZero()) continue;
    if (v.provenNonzero() || v.maxAbsResidual > 1e-9 || v.sampleCount < 64) {
      why = "residual " + v.str();
      return false;
    }
  }
  return true;
}

bool criterion3(std::string& why) {
  Expr one = mkConst(1), zero = mkConst(0);
  ZeroTestConfig cfg;
  for (auto [n, alpha] :
       {std::pair<int, Rat>{2, Rat(1)}, {2, Rat(2)}, {3, Rat(1)},
        {4, Rat(-1)}}) {
    auto inst = hamiltonian_homogeneous(n, alpha);
    Box box = inst.phaseBox();
    VolumeForm vol = VolumeForm::standard();
    for (const auto& p : inst.pairs) {
      auto r = theorem1(inst.X, p.Y, one, p.lambda, zero, vol, box, cfg);
      if (!zeroDiff(r.H, p.expectedH, box)) {
        why = "pair mismatch at n=" + std::to_string(n);
        return false;
      }
    }
    auto re = theorem1(inst.X, inst.Yenergy, one, inst.lambdaEnergy, zero, vol,
                       box, cfg);
    if (!zeroDiff(re.H, inst.expectedHenergy, box)) {
      why = "energy mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  {
    auto inst = hamiltonian_homogeneous(2, Rat(-1, 2));
    Box box = inst.phaseBox();
    auto r = theorem1(inst.X, inst.pairs[0].Y, one, inst.pairs[0].lambda, zero,
                      VolumeForm::standard(), box, cfg);
    if (!is_trivial(r.H, box, cfg).provenZero()) {
      why = "rotational integral not trivial at its threshold";
      return false;
    }
  }
  {
    auto inst = hamiltonian_homogeneous(5, Rat(-1, 2));
    Box box = inst.phaseBox();
    auto r = theorem1(inst.X, inst.Yenergy, one, inst.lambdaEnergy, zero,
                      VolumeForm::standard(), box, cfg);
    if (!is_trivial(r.H, box, cfg).provenZero()) {
      why = "energy integral not trivial at its threshold";
      return false;
    }
  }
  return true;
}

bool criterion4(std::string& why) {
  int degenerate = 0, transverse = 0;
  for (unsigned seed = 1; seed <= 200; ++seed) {
    int dim = 2 + static_cast<int>(seed % 3);
    int degree = 1 + static_cast<int>(seed % 2);
    auto inst = random_instance(seed, dim, degree);
    const auto& prob = inst.problem;
    ZeroTestConfig cfg;
    cfg.seed = seed;
    cfg.avoid = simplify(prob.f);
    auto sol = solve_lambda_mu(prob.X, *prob.Y, prob.domain, cfg);
    auto r = theorem1(prob.X, *prob.Y, prob.f, sol.lambda, sol.mu,
                      prob.volume(), prob.domain, cfg);
    if (r.conclusion.provenNonzero()) {
      why = "conclusion failed at seed " + std::to_string(seed);
      return false;
    }
    if (inst.kind == CertificateKind::Degenerate) {
      ++degenerate;
      if (!expr_eq(r.H, mkConst(0))) {
        why = "degenerate H not literal zero at seed " + std::to_string(seed);
        return false;
      }
    } else {
      ++transverse;
    }
  }
  if (degenerate == 0 || transverse == 0) {
    why = "generator did not mix certificate kinds";
    return false;
  }
  return true;
}

bool criterion5(std::string& why) {
  CounterRng rng{77};
  std::uint64_t ctr = 0;
  for (int i = 0; i < 100; ++i) {
    int nvars = 2 + i % 2;
    std::vector<std::string> vars{"x", "y", "z"};
    vars.resize(static_cast<std::size_t>(nvars));
    Box box = Box::unit(nvars);
    VolumeForm vol = VolumeForm::standard();
    if (i % 2 == 1) vol.rho = parse_expr("1+x^2", vars);

    auto X = randField(rng, ctr, vars, 2);
    auto Y = randField(rng, ctr, vars, 2);
    auto Z = randField(rng, ctr, vars, 1);
    Expr h = randPoly(rng, ctr, nvars, 2);
    Expr f = randPoly(rng, ctr, nvars, 2);

    // iterated derivative along the bracket equals the commutator
    auto B = lie_bracket(X, Y);
    Expr commutator = eSub(lie_scalar(X, lie_scalar(Y, h)),
                           lie_scalar(Y, lie_scalar(X, h)));
    if (!is_zero(simplify(eSub(lie_scalar(B, h), commutator)), box)
             .provenZero()) {
      why = "bracket derivation identity failed at instance " +
            std::to_string(i);
      return false;
    }

    if (!fieldProvenZero(addFields(lie_bracket(X, Y), lie_bracket(Y, X)),
                         box)) {
      why = "antisymmetry failed at instance " + std::to_string(i);
      return false;
    }

    auto jacobi = addFields(lie_bracket(X, lie_bracket(Y, Z)),
                            addFields(lie_bracket(Y, lie_bracket(Z, X)),
                                      lie_bracket(Z, lie_bracket(X, Y))));
    if (!fieldProvenZero(jacobi, box)) {
      why = "Jacobi failed at instance " + std::to_string(i);
      return false;
    }

    Expr lhs = divergence(scale(f, X), vol);
    Expr rhs = eAdd(eMul(f, divergence(X, vol)), lie_scalar(X, f));
    if (!is_zero(simplify(eSub(lhs, rhs)), box).provenZero()) {
      why = "scaled divergence rule failed at instance " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool criterion6(std::string& why) {
  auto prob = example5().problem;
  ZeroTestConfig cfg;
  cfg.avoid = simplify(prob.f);
  VolumeForm vol = prob.volume();

  Expr f0 = planar_f_from_Y(prob.X, *prob.Y, vol, prob.domain, cfg);
  auto sol = solve_lambda_mu(prob.X, *prob.Y, prob.domain, cfg);
  auto rf = theorem1(prob.X, *prob.Y, f0, sol.lambda, sol.mu, vol, prob.domain,
                     cfg);
  if (!is_trivial(rf.H, prob.domain, cfg).provenZero()) {
    why = "factor construction gave a nontrivial integral";
    return false;
  }

  Box inner;
  inner.iv = {{0.2, 0.9}, {0.2, 0.9}};
  auto Yp = planar_Y_from_f(prob.X, prob.f, vol, inner, cfg);
  auto soly = solve_lambda_mu(prob.X, Yp, inner, cfg);
  auto ry =
      theorem1(prob.X, Yp, prob.f, soly.lambda, soly.mu, vol, inner, cfg);
  if (!is_trivial(ry.H, inner, cfg).provenZero()) {
    why = "normalizer construction gave a nontrivial integral";
    return false;
  }
  return true;
}

bool criterion7(std::string& why) {
  auto cat = example5();
  const auto& prob = cat.problem;
  OneForm w = lie_one_form(prob.X, *prob.Y, prob.volume(), prob.domain);
  std::vector<double> base{0.0, 0.0};
  auto closedForm = [](double x, double y) {
    return -std::exp(-x) / (1 + x * x * x * x + y * y * y * y);
  };

  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double x = -0.5 + 0.25 * i, y = -0.5 + 0.25 * j;
      double got = quadrature(w, base, {x, y});
      double want = closedForm(x, y) - closedForm(0, 0);
      if (std::abs(got - want) > 1e-6) {
        why = "grid value off by " + std::to_string(std::abs(got - want));
        return false;
      }
      if (x == 0.0 && y == 0.0) continue;
      double viaX = quadrature_along(w, {base, {x, 0.0}, {x, y}}, 256);
      double viaY = quadrature_along(w, {base, {0.0, y}, {x, y}}, 256);
      if (std::abs(viaX - viaY) > 1e-8) {
        why = "paths disagree by " + std::to_string(std::abs(viaX - viaY));
        return false;
      }
    }

  CounterRng rng{5};
  Box small;
  small.iv = {{-0.5, 0.5}, {-0.5, 0.5}};
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto p = sampleBox(rng, small, k);
    // quadrature pins I to zero at the basepoint, a unit above the primitive
    double I = quadrature(w, base, p);
    double Hval = evaluate(cat.expectedH, p);
    if (std::abs((I - 1.0) * Hval + 2.0) > 1e-5) {
      why = "product identity off at sample " + std::to_string(k);
      return false;
    }
  }
  return true;
}

bool criterion8(std::string& why) {
  auto prob = example5().problem;
  ZeroTestConfig cfg;
  cfg.avoid = simplify(prob.f);
  auto sol = solve_lambda_mu(prob.X, *prob.Y, prob.domain, cfg);
  auto good = theorem1(prob.X, *prob.Y, prob.f, sol.lambda, sol.mu,
                       prob.volume(), prob.domain, cfg);
  auto corrupted = theorem1(prob.X, *prob.Y, prob.f, mkConst(0), mkConst(0),
                            prob.volume(), prob.domain, cfg);

  CounterRng rng{0};
  bool goodAll = true, corruptedAll = true;
  for (std::uint64_t t = 0; t < 10; ++t) {
    auto p0 = sampleBox(rng, prob.domain, t);
    auto traj = integrate_trajectory(prob.X, p0, 1.0, 1e-3);
    goodAll = goodAll && conservation_check(good.H, traj, 1e-6).pass;
    corruptedAll =
        corruptedAll && conservation_check(corrupted.H, traj, 1e-6).pass;
  }
  if (!goodAll) {
    why = "true integral drifted";
    return false;
  }
  if (corruptedAll) {
    why = "corrupted lambda slipped through";
    return false;
  }
  return true;
}

bool criterion9(std::string& why) {
  ZeroTestConfig cfg;
  {
    auto prob = example5().problem;
    cfg.avoid = simplify(prob.f);
    auto sol = solve_lambda_mu(prob.X, *prob.Y, prob.domain, cfg);
    auto r = theorem1(prob.X, *prob.Y, prob.f, sol.lambda, sol.mu,
                      prob.volume(), prob.domain, cfg);
    auto chain =
        chain_Hk(prob.X, *prob.Y, r.H, 3, prob.domain, cfg, sol.mu);
    for (const auto& e : chain)
      if (e.conserved.provenNonzero()) {
        why = "planar chain entry provably drifts";
        return false;
      }
  }
  {
    ZeroTestConfig hcfg;
    auto inst = hamiltonian_homogeneous(2, Rat(1));
    Box box = inst.phaseBox();
    auto r = theorem1(inst.X, inst.pairs[0].Y, mkConst(1),
                      inst.pairs[0].lambda, mkConst(0), VolumeForm::standard(),
                      box, hcfg);
    auto chain = chain_Hk(inst.X, inst.pairs[0].Y, r.H, 3, box, hcfg);
    for (const auto& e : chain)
      if (e.conserved.provenNonzero()) {
        why = "catalog chain entry provably drifts";
        return false;
      }
  }
  return true;
}

bool criterion10(std::string& why) {
  auto prob = load_problem(examplePath("hamiltonian_n2_a1.prob"));
  ZeroTestConfig cfg;
  auto ir = integrability_report(prob.X, prob.Ylist, prob.volume(),
                                 prob.domain, cfg, 20);
  if (ir.independence.consensusRank != 2 || !ir.completelyIntegrable) {
    why = "rank " + std::to_string(ir.independence.consensusRank);
    return false;
  }

  std::vector<Expr> funcs;
  for (const auto& e : ir.entries) funcs.push_back(e.H);
  CounterRng rng{11};
  std::uint64_t ctr = 0;
  long long a, b, c, d;
  do {
    a = static_cast<long long>(rng.below(ctr++, 7)) - 3;
    b = static_cast<long long>(rng.below(ctr++, 7)) - 3;
    c = static_cast<long long>(rng.below(ctr++, 7)) - 3;
    d = static_cast<long long>(rng.below(ctr++, 7)) - 3;
  } while (a * d - b * c == 0);
  std::vector<Expr> mixed{
      simplify(eAdd(eMul(mkConst(a), funcs[0]), eMul(mkConst(b), funcs[1]))),
      simplify(eAdd(eMul(mkConst(c), funcs[0]), eMul(mkConst(d), funcs[1])))};
  auto r1 = independence_rank(funcs, prob.domain, 20, cfg);
  auto r2 = independence_rank(mixed, prob.domain, 20, cfg);
  if (r1.jacobianRanks != r2.jacobianRanks) {
    why = "rank changed under recombination";
    return false;
  }
  return true;
}

bool criterion11(std::string& why) {
  std::vector<std::string> vars{"x", "y", "z"};
  VectorField X, Y;
  X.vars = Y.vars = vars;
  X.components = {parse_expr("-y", vars), parse_expr("x", vars),
                  parse_expr("0", vars)};
  Y.components = {parse_expr("0", vars), parse_expr("0", vars),
                  parse_expr("1", vars)};
  Box box = Box::unit(3);
  VolumeForm vol = VolumeForm::standard();
  std::vector<double> base{0.0, 0.0, 0.0};

  CounterRng rng{9};
  for (std::uint64_t k = 0; k < 25; ++k) {
    auto p = sampleBox(rng, box, k);
    double I = volume_pair_potential_3d(X, Y, vol, base, p, box);
    double want = -(p[0] * p[0] + p[1] * p[1]) / 2.0;
    if (std::abs(I - want) > 1e-8) {
      why = "potential off by " + std::to_string(std::abs(I - want));
      return false;
    }
  }

  auto traj = integrate_trajectory(X, {0.5, 0.3, -0.2}, 1.0, 1e-3);
  double i0 = volume_pair_potential_3d(X, Y, vol, base, traj.points.front(),
                                       box);
  double worst = 0;
  for (std::size_t i = 100; i < traj.points.size(); i += 100) {
    double ii = volume_pair_potential_3d(X, Y, vol, base, traj.points[i], box);
    worst = std::max(worst, std::abs(ii - i0) / (1 + std::abs(i0)));
  }
  if (worst > 1e-6) {
    why = "drift " + std::to_string(worst);
    return false;
  }
  return true;
}

bool criterion12(std::string& why) {
  VectorField X;
  X.vars = {"x"};
  X.components = {parse_expr("x", X.vars)};
  auto endpointError = [&](double h) {
    auto traj = integrate_trajectory(X, {1.0}, 1.0, h);
    return std::abs(traj.points.back()[0] - std::exp(1.0));
  };
  double ratio = endpointError(1e-2) / endpointError(5e-3);
  if (ratio < 12.0 || ratio > 20.0) {
    why = "ratio " + std::to_string(ratio);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, criterion1);
  criterion(2, criterion2);
  criterion(3, criterion3);
  criterion(4, criterion4);
  criterion(5, criterion5);
  criterion(6, criterion6);
  criterion(7, criterion7);
  criterion(8, criterion8);
  criterion(9, criterion9);
  criterion(10, criterion10);
  criterion(11, criterion11);
  criterion(12, criterion12);
  return failures;
}
