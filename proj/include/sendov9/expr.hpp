#ifndef SENDOV9_EXPR_HPP
#define SENDOV9_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sendov9/interval.hpp"
#include "sendov9/rational.hpp"

namespace sendov {

/// Small expression tree shared by the interval evaluator and the exact
/// rational evaluator. Only the operations the certified formulas need:
/// field ops, sqrt, integer/rational powers, n-th roots.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Sqrt, Root, PowInt, PowRat };

  Kind kind;
  Rational cval;   // Const
  int var = -1;    // Var index
  int ipar = 0;    // Root order / PowInt exponent
  Rational rpar;   // PowRat exponent
  ExprPtr a, b;

  static ExprPtr constant(Rational v);
  static ExprPtr constant(long num, long den = 1);
  static ExprPtr variable(int index);
  static ExprPtr add(ExprPtr x, ExprPtr y);
  static ExprPtr sub(ExprPtr x, ExprPtr y);
  static ExprPtr mul(ExprPtr x, ExprPtr y);
  static ExprPtr div(ExprPtr x, ExprPtr y);
  static ExprPtr neg(ExprPtr x);
  static ExprPtr sqrt(ExprPtr x);
  static ExprPtr root(ExprPtr x, int n);
  static ExprPtr pow_int(ExprPtr x, int k);
  static ExprPtr pow_rat(ExprPtr x, Rational r);
};

ExprPtr operator+(ExprPtr x, ExprPtr y);
ExprPtr operator-(ExprPtr x, ExprPtr y);
ExprPtr operator*(ExprPtr x, ExprPtr y);
ExprPtr operator/(ExprPtr x, ExprPtr y);

/// Sound interval enclosure of the expression over boxes for its variables.
Interval eval_interval(const Expr& e, std::span<const Interval> vars);

/// Exact rational value at a rational point. Irrational subterms are carried
/// as opaque markers; they must be annihilated (multiplied by an exact zero,
/// raised to the power 0) or resolve to exact roots, otherwise
/// NonRationalResidue is thrown. This is what discharges the equality
/// endpoints the interval engine cannot certify.
Rational eval_exact(const Expr& e, std::span<const Rational> point);

}  // namespace sendov

#endif
