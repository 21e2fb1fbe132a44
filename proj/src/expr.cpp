#include "sendov9/expr.hpp"

#include <utility>

namespace sendov {

namespace {
std::shared_ptr<Expr> make(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
}  // namespace

ExprPtr Expr::constant(Rational v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->cval = std::move(v);
  return e;
}
ExprPtr Expr::constant(long num, long den) { return constant(Rational(num, den)); }
ExprPtr Expr::variable(int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = index;
  return e;
}
ExprPtr Expr::add(ExprPtr x, ExprPtr y) { return make(Kind::Add, std::move(x), std::move(y)); }
ExprPtr Expr::sub(ExprPtr x, ExprPtr y) { return make(Kind::Sub, std::move(x), std::move(y)); }
ExprPtr Expr::mul(ExprPtr x, ExprPtr y) { return make(Kind::Mul, std::move(x), std::move(y)); }
ExprPtr Expr::div(ExprPtr x, ExprPtr y) { return make(Kind::Div, std::move(x), std::move(y)); }
ExprPtr Expr::neg(ExprPtr x) { return make(Kind::Neg, std::move(x)); }
ExprPtr Expr::sqrt(ExprPtr x) { return make(Kind::Sqrt, std::move(x)); }
ExprPtr Expr::root(ExprPtr x, int n) {
  auto e = make(Kind::Root, std::move(x));
  e->ipar = n;
  return e;
}
ExprPtr Expr::pow_int(ExprPtr x, int k) {
  auto e = make(Kind::PowInt, std::move(x));
  e->ipar = k;
  return e;
}
ExprPtr Expr::pow_rat(ExprPtr x, Rational r) {
  auto e = make(Kind::PowRat, std::move(x));
  e->rpar = std::move(r);
  return e;
}

ExprPtr operator+(ExprPtr x, ExprPtr y) { return Expr::add(std::move(x), std::move(y)); }
ExprPtr operator-(ExprPtr x, ExprPtr y) { return Expr::sub(std::move(x), std::move(y)); }
ExprPtr operator*(ExprPtr x, ExprPtr y) { return Expr::mul(std::move(x), std::move(y)); }
ExprPtr operator/(ExprPtr x, ExprPtr y) { return Expr::div(std::move(x), std::move(y)); }

Interval eval_interval(const Expr& e, std::span<const Interval> vars) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return Interval::enclose(e.cval);
    case Expr::Kind::Var:
      return vars[static_cast<std::size_t>(e.var)];
    case Expr::Kind::Add:
      return eval_interval(*e.a, vars) + eval_interval(*e.b, vars);
    case Expr::Kind::Sub:
      return eval_interval(*e.a, vars) - eval_interval(*e.b, vars);
    case Expr::Kind::Mul:
      return eval_interval(*e.a, vars) * eval_interval(*e.b, vars);
    case Expr::Kind::Div:
      return eval_interval(*e.a, vars) / eval_interval(*e.b, vars);
    case Expr::Kind::Neg:
      return -eval_interval(*e.a, vars);
    case Expr::Kind::Sqrt:
      return sqrt(eval_interval(*e.a, vars));
    case Expr::Kind::Root:
      return nth_root(eval_interval(*e.a, vars), e.ipar);
    case Expr::Kind::PowInt:
      return pow_int(eval_interval(*e.a, vars), e.ipar);
    case Expr::Kind::PowRat:
      return pow(eval_interval(*e.a, vars), e.rpar);
  }
  throw DomainError("eval_interval: bad node");
}

namespace {

struct ExactVal {
  bool rational = true;  // false: opaque irrational marker
  Rational v;
};

ExactVal irr() { return ExactVal{false, Rational(0)}; }

ExactVal eval(const Expr& e, std::span<const Rational> point) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Const:
      return {true, e.cval};
    case K::Var:
      return {true, point[static_cast<std::size_t>(e.var)]};
    case K::Add: {
      ExactVal x = eval(*e.a, point), y = eval(*e.b, point);
      if (x.rational && y.rational) return {true, x.v + y.v};
      return irr();
    }
    case K::Sub: {
      ExactVal x = eval(*e.a, point), y = eval(*e.b, point);
      if (x.rational && y.rational) return {true, x.v - y.v};
      return irr();
    }
    case K::Mul: {
      ExactVal x = eval(*e.a, point), y = eval(*e.b, point);
      // exact zero annihilates an irrational factor
      if (x.rational && x.v.is_zero()) return {true, Rational(0)};
      if (y.rational && y.v.is_zero()) return {true, Rational(0)};
      if (x.rational && y.rational) return {true, x.v * y.v};
      return irr();
    }
    case K::Div: {
      ExactVal x = eval(*e.a, point), y = eval(*e.b, point);
      if (y.rational && y.v.is_zero()) throw DomainError("eval_exact: division by zero");
      if (x.rational && x.v.is_zero() && y.rational) return {true, Rational(0)};
      if (x.rational && y.rational) return {true, x.v / y.v};
      return irr();
    }
    case K::Neg: {
      ExactVal x = eval(*e.a, point);
      if (x.rational) return {true, -x.v};
      return irr();
    }
    case K::Sqrt: {
      ExactVal x = eval(*e.a, point);
      if (!x.rational) return irr();
      if (x.v.sign() < 0) throw DomainError("eval_exact: sqrt of a negative");
      auto [ok, r] = x.v.exact_nth_root(2);
      return ok ? ExactVal{true, r} : irr();
    }
    case K::Root: {
      ExactVal x = eval(*e.a, point);
      if (!x.rational) return irr();
      if (x.v.sign() < 0 && e.ipar % 2 == 0)
        throw DomainError("eval_exact: even root of a negative");
      auto [ok, r] = x.v.exact_nth_root(static_cast<unsigned long>(e.ipar));
      return ok ? ExactVal{true, r} : irr();
    }
    case K::PowInt: {
      ExactVal x = eval(*e.a, point);
      if (e.ipar == 0) return {true, Rational(1)};  // including irrational^0
      if (!x.rational) return irr();
      return {true, x.v.pow_int(e.ipar)};
    }
    case K::PowRat: {
      ExactVal x = eval(*e.a, point);
      if (e.rpar.is_zero()) return {true, Rational(1)};
      if (!x.rational) return irr();
      if (x.v.is_zero()) {
        if (e.rpar.sign() < 0) throw DomainError("eval_exact: zero base, negative exponent");
        return {true, Rational(0)};
      }
      if (x.v.is_one()) return {true, Rational(1)};
      // x^(p/q) rational iff x^p has an exact q-th root
      const mpq_t& rq = e.rpar.raw();
      if (!mpz_fits_slong_p(mpq_numref(rq)) || !mpz_fits_slong_p(mpq_denref(rq)))
        return irr();
      long p = mpz_get_si(mpq_numref(rq));
      unsigned long den = static_cast<unsigned long>(mpz_get_si(mpq_denref(rq)));
      Rational powed = x.v.pow_int(p);
      if (powed.sign() < 0 && den % 2 == 0)
        throw DomainError("eval_exact: even root of a negative");
      auto [ok, r] = powed.exact_nth_root(den);
      return ok ? ExactVal{true, r} : irr();
    }
  }
  throw DomainError("eval_exact: bad node");
}

}  // namespace

Rational eval_exact(const Expr& e, std::span<const Rational> point) {
  ExactVal r = eval(e, point);
  if (!r.rational)
    throw NonRationalResidue("eval_exact: irrational subterm survived at the given point");
  return r.v;
}

}  // namespace sendov
