#ifndef SENDOV9_INTERVAL_HPP
#define SENDOV9_INTERVAL_HPP

#include <cmath>
#include <string>

#include "sendov9/errors.hpp"
#include "sendov9/rational.hpp"

namespace sendov {

// Directed double arithmetic. Results are corrected with error-free
// transforms (two-sum, fma residual): exact results pass through unchanged,
// inexact results are nudged one ulp outward. No rounding-mode switches.
namespace rnd {

double next_up(double x);
double next_down(double x);

double add_up(double a, double b);
double add_down(double a, double b);
double sub_up(double a, double b);
double sub_down(double a, double b);
double mul_up(double a, double b);
double mul_down(double a, double b);
double div_up(double a, double b);
double div_down(double a, double b);

// x^k for x >= 0, k >= 0, with all partial products rounded in one direction.
double pow_up(double x, int k);
double pow_down(double x, int k);

}  // namespace rnd

/// Closed interval with finite double endpoints. Every operation returns an
/// interval containing the exact image of its operands.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double point) : lo(point), hi(point) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h) || !std::isfinite(l) || !std::isfinite(h))
      throw DomainError("Interval: bad endpoints [" + std::to_string(l) + ", " + std::to_string(h) + "]");
  }

  /// Tightest interval containing the exact rational value.
  static Interval enclose(const Rational& r);
  /// Outward hull of a rational segment [lo, hi].
  static Interval enclose(const Rational& rlo, const Rational& rhi);

  double width() const { return rnd::sub_up(hi, lo); }
  double mid() const {
    double m = lo + 0.5 * (hi - lo);
    return (m >= lo && m <= hi) ? m : lo;
  }
  bool is_point() const { return lo == hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);  // DomainError if 0 in y
Interval operator-(const Interval& x);

inline Interval operator+(const Interval& x, double s) { return x + Interval(s); }
inline Interval operator+(double s, const Interval& x) { return Interval(s) + x; }
inline Interval operator-(const Interval& x, double s) { return x - Interval(s); }
inline Interval operator-(double s, const Interval& x) { return Interval(s) - x; }
inline Interval operator*(const Interval& x, double s) { return x * Interval(s); }
inline Interval operator*(double s, const Interval& x) { return Interval(s) * x; }
inline Interval operator/(const Interval& x, double s) { return x / Interval(s); }
inline Interval operator/(double s, const Interval& x) { return Interval(s) / x; }

Interval hull(const Interval& x, const Interval& y);
Interval intersect(const Interval& x, const Interval& y);  // DomainError if disjoint
Interval abs(const Interval& x);
Interval min(const Interval& x, const Interval& y);
Interval max(const Interval& x, const Interval& y);

Interval sqrt(const Interval& x);             // x.lo >= 0
Interval nth_root(const Interval& x, int n);  // x.lo >= 0, n >= 1
Interval pow_int(const Interval& x, int k);   // k < 0 requires 0 not in x
Interval exp(const Interval& x);
Interval log(const Interval& x);  // x.lo > 0

/// x^(p/q) via nth_root + pow_int for small q, exp(r log x) otherwise.
/// Requires x.lo > 0 unless the exponent is a nonnegative integer.
Interval pow(const Interval& x, const Rational& r);

/// Sine on arguments within [0, pi] (the only range the formulas need).
/// Sound enclosure from the alternating Taylor series with an explicit
/// remainder term; width is a few ulps for point arguments.
Interval sin(const Interval& x);

/// Enclosure of pi from a Machin-style series (no libm trust).
const Interval& pi_enclosure();

}  // namespace sendov

#endif
