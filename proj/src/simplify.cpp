#include "fint/expr.hpp"
#include "fint/normal_form.hpp"

namespace fint {

Expr simplify(const Expr& e) { return nf::toExpr(nf::fromExpr(e)); }

namespace {

Expr dRaw(const Expr& e, int var) {
  switch (e->kind) {
    case Kind::Constant:
      return mkConst(0);
    case Kind::Variable:
      return mkConst(e->var == var ? 1 : 0);
    case Kind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (auto& k : e->kids) kids.push_back(dRaw(k, var));
      return mkSum(std::move(kids));
    }
    case Kind::Product: {
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<Expr> fs = e->kids;
        fs[i] = dRaw(e->kids[i], var);
        parts.push_back(mkProd(std::move(fs)));
      }
      return mkSum(std::move(parts));
    }
    case Kind::IntPower:
      return eMul(mkConst(e->expo),
                  eMul(mkPow(e->base, e->expo - 1), dRaw(e->base, var)));
    case Kind::Exp:
      return eMul(e, dRaw(e->arg, var));
    case Kind::Sqrt:
      return eMul(mkConst(Rat(1, 2)),
                  eMul(dRaw(e->arg, var), mkPow(mkSqrt(e->arg), -1)));
  }
  return mkConst(0);
}

}  // namespace

Expr differentiate(const Expr& e, int var) { return simplify(dRaw(e, var)); }

}  // namespace fint
