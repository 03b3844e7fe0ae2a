#include "fint/catalog.hpp"

#include <string>
#include <vector>

namespace fint {

namespace {

// u^t for rational t with denominator 1 or 2, as IntPower times Sqrt
Expr ratPower(const Expr& u, const Rat& t) {
  if (isInteger(t)) {
    long long e = ratNum(t).convert_to<long long>();
    if (e == 0) return mkConst(1);
    return mkPow(u, static_cast<int>(e));
  }
  if (isHalfInteger(t)) {
    long long m = ratNum(t).convert_to<long long>();
    long long k = (m - 1) / 2;  // m odd, so m - 1 is even
    Expr root = mkSqrt(u);
    if (k == 0) return root;
    return eMul(mkPow(u, static_cast<int>(k)), root);
  }
  throw UnrepresentableExponent(
      "exponent must be an integer or half-integer: " + ratToString(t));
}

}  // namespace

HamiltonianInstance hamiltonian_homogeneous(int n, const Rat& alpha) {
  if (n < 1) throw ValidationError("particle dimension must be at least 1");
  if (alpha == 0) throw ValidationError("exponent must be nonzero");
  if (!isHalfInteger(alpha))
    throw UnrepresentableExponent(
        "exponent must be an integer or half-integer: " + ratToString(alpha));

  HamiltonianInstance inst;
  inst.n = n;
  inst.alpha = alpha;
  for (int i = 1; i <= n; ++i) inst.vars.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) inst.vars.push_back("p" + std::to_string(i));

  std::vector<Expr> xs, ps;
  for (int i = 0; i < n; ++i) xs.push_back(mkVar(i));
  for (int i = 0; i < n; ++i) ps.push_back(mkVar(n + i));

  std::vector<Expr> squares;
  for (int i = 0; i < n; ++i) squares.push_back(mkPow(xs[i], 2));
  Expr u = n == 1 ? squares[0] : mkSum(squares);

  const Rat invAlpha = Rat(1) / alpha;

  // X = sum p_i d/dx_i - 2 x_i V'(u) d/dp_i with V'(u) = alpha u^(alpha-1)
  inst.X.vars = inst.vars;
  for (int i = 0; i < n; ++i) inst.X.components.push_back(ps[i]);
  Expr vprime = simplify(eMul(mkConst(alpha), ratPower(u, alpha - 1)));
  for (int i = 0; i < n; ++i)
    inst.X.components.push_back(
        simplify(eMul(mkConst(-2), eMul(xs[i], vprime))));

  // radial rescaling R = alpha^{-1} sum x_i d/dx_i + sum p_i d/dp_i
  std::vector<Expr> R;
  for (int i = 0; i < n; ++i) R.push_back(eMul(mkConst(invAlpha), xs[i]));
  for (int i = 0; i < n; ++i) R.push_back(ps[i]);

  const Rat hijCoef = Rat(n) * (1 + invAlpha) + 2;
  const Rat henCoef = Rat(n) * (1 + invAlpha) + 3 - invAlpha;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Expr m = eSub(eMul(xs[i], ps[j]), eMul(xs[j], ps[i]));
      HamiltonianPair pr;
      pr.i = i;
      pr.j = j;
      pr.Y.vars = inst.vars;
      for (const auto& rc : R) pr.Y.components.push_back(simplify(eMul(m, rc)));
      pr.lambda = simplify(eMul(mkConst(invAlpha - 1), m));
      pr.expectedH = simplify(eMul(mkConst(hijCoef), m));
      inst.pairs.push_back(std::move(pr));
    }

  std::vector<Expr> kin;
  for (int i = 0; i < n; ++i)
    kin.push_back(eMul(mkConst(Rat(1, 2)), mkPow(ps[i], 2)));
  Expr energy = eAdd(n == 1 ? kin[0] : mkSum(kin), ratPower(u, alpha));
  inst.Yenergy.vars = inst.vars;
  for (const auto& rc : R)
    inst.Yenergy.components.push_back(simplify(eMul(energy, rc)));
  inst.lambdaEnergy = simplify(eMul(mkConst(invAlpha - 1), energy));
  inst.expectedHenergy = simplify(eMul(mkConst(henCoef), energy));
  return inst;
}

CatalogProblem example5() {
  static const char* text =
      "vars   = x y\n"
      "volume = 1\n"
      "X  = [ -4*y^3/(1+x^2), (1+x^4+y^4+4*x^3)/(1+x^2) ]\n"
      "Y  = [ (1+x^4+y^4)^2*exp(x)*(1+x^4+y^4+4*x^3)/((1+x^4+y^4+4*x^3)^2+16*y^6),\n"
      "       (1+x^4+y^4)^2*exp(x)*4*y^3/((1+x^4+y^4+4*x^3)^2+16*y^6) ]\n"
      "f  = (1+x^2)*exp(x)\n"
      "domain = [-1,1] [-1,1]\n";
  CatalogProblem cp;
  cp.problem = load_problem_text(text);
  cp.expectedH = parse_expr("2*(1+x^4+y^4)*exp(x)", cp.problem.vars);
  return cp;
}

RandomInstance random_instance(std::uint64_t seed, int dim, int degree) {
  if (dim < 2) throw ValidationError("instance dimension must be at least 2");
  if (degree < 1) throw ValidationError("instance degree must be at least 1");

  CounterRng rng{seed};
  std::uint64_t ctr = 0;
  auto smallInt = [&](long lo, long hi) {
    return static_cast<long>(rng.below(ctr++, static_cast<std::uint64_t>(
                                                  hi - lo + 1))) +
           lo;
  };

  // random nonzero univariate polynomial in variable v of degree <= degree
  auto poly1 = [&](int v) {
    Expr acc = mkConst(smallInt(1, 3));
    for (int d = 1; d <= degree; ++d) {
      long c = smallInt(-2, 2);
      if (c != 0) acc = eAdd(acc, eMul(mkConst(c), mkPow(mkVar(v), d)));
    }
    return acc;
  };

  RandomInstance inst;
  Problem& p = inst.problem;
  for (int i = 1; i <= dim; ++i) p.vars.push_back("x" + std::to_string(i));
  p.rho = mkConst(1);
  p.domain = Box::unit(dim);
  p.seed = seed;

  // chained shear field: component i depends only on variable i+1, the last
  // component is constant, so each summand of the divergence vanishes
  std::vector<Expr> W;
  for (int i = 0; i + 1 < dim; ++i) W.push_back(poly1(i + 1));
  W.push_back(mkConst(smallInt(1, 3)));

  const bool degenerate = rng.below(ctr++, 2) == 0;
  if (degenerate) {
    // f positive: one plus even monomials
    Expr f = mkConst(1);
    for (int i = 0; i < dim; ++i) {
      long c = smallInt(0, 2);
      if (c != 0) {
        int e = 2 * static_cast<int>(smallInt(1, 2));
        f = eAdd(f, eMul(mkConst(c), mkPow(mkVar(i), e)));
      }
    }
    p.f = simplify(f);
    p.X.vars = p.vars;
    for (const auto& w : W)
      p.X.components.push_back(simplify(eDiv(w, p.f)));
    Expr h = poly1(0);
    inst.kind = CertificateKind::Degenerate;
    inst.h = simplify(h);
    VectorField Y;
    Y.vars = p.vars;
    for (const auto& c : p.X.components)
      Y.components.push_back(simplify(eMul(inst.h, c)));
    p.Y = std::move(Y);
  } else {
    // transverse translate: shift the first component by a nonzero constant;
    // the shift direction never feeds back into the chain, so the fields
    // commute and both preserve the standard volume
    p.f = mkConst(1);
    p.X.vars = p.vars;
    for (const auto& w : W) p.X.components.push_back(simplify(w));
    inst.kind = CertificateKind::TransverseShear;
    VectorField Y;
    Y.vars = p.vars;
    Y.components = p.X.components;
    Y.components[0] = simplify(eAdd(Y.components[0], mkConst(smallInt(1, 3))));
    p.Y = std::move(Y);
  }
  return inst;
}

}  // namespace fint
