#include "sendov9/interval.hpp"

#include <algorithm>
#include <cmath>

namespace sendov {
namespace rnd {

namespace {
// fma residual tricks assume the error term is representable; far outside
// this range we fall back to unconditional nudging.
constexpr double kSafeLo = 1e-290;
constexpr double kSafeHi = 1e290;

inline bool unsafe(double p) {
  double a = std::fabs(p);
  return p != 0.0 && (a < kSafeLo || a > kSafeHi);
}
}  // namespace

double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

double add_up(double a, double b) {
  double s = a + b;
  if (unsafe(s)) return next_up(s);
  double bp = s - a;
  double err = (a - (s - bp)) + (b - bp);  // two-sum residual, exact
  return err > 0.0 ? next_up(s) : s;
}

double add_down(double a, double b) {
  double s = a + b;
  if (unsafe(s)) return next_down(s);
  double bp = s - a;
  double err = (a - (s - bp)) + (b - bp);
  return err < 0.0 ? next_down(s) : s;
}

double sub_up(double a, double b) { return add_up(a, -b); }
double sub_down(double a, double b) { return add_down(a, -b); }

double mul_up(double a, double b) {
  double p = a * b;
  if (unsafe(p)) return next_up(p);
  double err = std::fma(a, b, -p);  // a*b - p, exact for normal p
  return err > 0.0 ? next_up(p) : p;
}

double mul_down(double a, double b) {
  double p = a * b;
  if (unsafe(p)) return next_down(p);
  double err = std::fma(a, b, -p);
  return err < 0.0 ? next_down(p) : p;
}

double div_up(double a, double b) {
  double q = a / b;
  if (unsafe(q)) return next_up(q);
  double err = std::fma(q, b, -a);  // q*b - a; true quotient is q - err/b
  bool low = (b > 0.0) ? (err < 0.0) : (err > 0.0);
  return low ? next_up(q) : q;
}

double div_down(double a, double b) {
  double q = a / b;
  if (unsafe(q)) return next_down(q);
  double err = std::fma(q, b, -a);
  bool high = (b > 0.0) ? (err > 0.0) : (err < 0.0);
  return high ? next_down(q) : q;
}

double pow_up(double x, int k) {
  // x >= 0, k >= 0; all partial products rounded up.
  double acc = 1.0, base = x;
  while (k > 0) {
    if (k & 1) acc = mul_up(acc, base);
    k >>= 1;
    if (k > 0) base = mul_up(base, base);
  }
  return acc;
}

double pow_down(double x, int k) {
  double acc = 1.0, base = x;
  while (k > 0) {
    if (k & 1) acc = mul_down(acc, base);
    k >>= 1;
    if (k > 0) base = mul_down(base, base);
  }
  return acc;
}

}  // namespace rnd

Interval Interval::enclose(const Rational& r) {
  double d = r.to_double();  // mpq_get_d truncates toward zero
  int c = r.cmp(d);
  if (c == 0) return Interval(d, d);
  if (c > 0) return Interval(d, rnd::next_up(d));
  return Interval(rnd::next_down(d), d);
}

Interval Interval::enclose(const Rational& rlo, const Rational& rhi) {
  if (rhi < rlo) throw DomainError("Interval::enclose: inverted rational bounds");
  return Interval(enclose(rlo).lo, enclose(rhi).hi);
}

Interval operator+(const Interval& x, const Interval& y) {
  return Interval(rnd::add_down(x.lo, y.lo), rnd::add_up(x.hi, y.hi));
}

Interval operator-(const Interval& x, const Interval& y) {
  return Interval(rnd::sub_down(x.lo, y.hi), rnd::sub_up(x.hi, y.lo));
}

Interval operator-(const Interval& x) { return Interval(-x.hi, -x.lo); }

Interval operator*(const Interval& x, const Interval& y) {
  double lo = std::min(std::min(rnd::mul_down(x.lo, y.lo), rnd::mul_down(x.lo, y.hi)),
                       std::min(rnd::mul_down(x.hi, y.lo), rnd::mul_down(x.hi, y.hi)));
  double hi = std::max(std::max(rnd::mul_up(x.lo, y.lo), rnd::mul_up(x.lo, y.hi)),
                       std::max(rnd::mul_up(x.hi, y.lo), rnd::mul_up(x.hi, y.hi)));
  return Interval(lo, hi);
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains_zero()) throw DomainError("Interval division by an interval containing 0");
  double lo = std::min(std::min(rnd::div_down(x.lo, y.lo), rnd::div_down(x.lo, y.hi)),
                       std::min(rnd::div_down(x.hi, y.lo), rnd::div_down(x.hi, y.hi)));
  double hi = std::max(std::max(rnd::div_up(x.lo, y.lo), rnd::div_up(x.lo, y.hi)),
                       std::max(rnd::div_up(x.hi, y.lo), rnd::div_up(x.hi, y.hi)));
  return Interval(lo, hi);
}

Interval hull(const Interval& x, const Interval& y) {
  return Interval(std::min(x.lo, y.lo), std::max(x.hi, y.hi));
}

Interval intersect(const Interval& x, const Interval& y) {
  double lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
  if (lo > hi) throw DomainError("intersect: disjoint intervals");
  return Interval(lo, hi);
}

Interval abs(const Interval& x) {
  if (x.lo >= 0.0) return x;
  if (x.hi <= 0.0) return Interval(-x.hi, -x.lo);
  return Interval(0.0, std::max(-x.lo, x.hi));
}

Interval min(const Interval& x, const Interval& y) {
  return Interval(std::min(x.lo, y.lo), std::min(x.hi, y.hi));
}

Interval max(const Interval& x, const Interval& y) {
  return Interval(std::max(x.lo, y.lo), std::max(x.hi, y.hi));
}

namespace {

// Binary search over representable doubles: largest value in [valid, invalid)
// satisfying ok (ok(valid) must hold, ok(invalid) must not). Direction-free.
template <class Ok>
double refine_toward(double valid, double invalid, const Ok& ok) {
  while (true) {
    double mid = valid + (invalid - valid) / 2.0;
    if (mid == valid || mid == invalid) break;
    if (ok(mid))
      valid = mid;
    else
      invalid = mid;
  }
  return valid;
}

// Largest double r with r^n <= x (true-real comparison), given x >= 0.
double root_floor(double x, int n) {
  if (x == 0.0) return 0.0;
  double r0 = std::pow(x, 1.0 / n);  // untrusted seed
  auto ok = [&](double r) { return r >= 0.0 && rnd::pow_up(r, n) <= x; };
  double valid = r0, invalid = r0;
  if (ok(valid)) {
    // push invalid above the true root
    invalid = rnd::next_up(valid);
    while (ok(invalid)) {
      valid = invalid;
      invalid = rnd::mul_up(invalid, 1.0 + 1e-12);
    }
  } else {
    valid = rnd::next_down(r0);
    while (!ok(valid)) valid = rnd::mul_down(valid, 1.0 - 1e-12);
  }
  return refine_toward(valid, invalid, ok);
}

// Smallest double r with r^n >= x.
double root_ceil(double x, int n) {
  if (x == 0.0) return 0.0;
  double r0 = std::pow(x, 1.0 / n);
  auto ok = [&](double r) { return r >= 0.0 && rnd::pow_down(r, n) >= x; };
  double valid = r0, invalid = r0;
  if (ok(valid)) {
    invalid = rnd::next_down(valid);
    while (invalid > 0.0 && ok(invalid)) {
      valid = invalid;
      invalid = rnd::mul_down(invalid, 1.0 - 1e-12);
    }
  } else {
    valid = rnd::next_up(r0);
    while (!ok(valid)) valid = rnd::mul_up(valid, 1.0 + 1e-12);
  }
  return refine_toward(valid, invalid, ok);
}

// ---- series kernels ----------------------------------------------------

// exp on a point argument: halve into [-1/32, 1/32], nested Taylor with an
// explicit tail bound, then square back up.
Interval exp_point(double t) {
  if (std::fabs(t) > 700.0) throw DomainError("exp: argument out of range");
  int halvings = 0;
  double tt = t;
  while (std::fabs(tt) > 0.03125) {
    tt *= 0.5;  // exact
    ++halvings;
  }
  const int kTerms = 13;
  Interval x(tt);
  Interval s(1.0);
  for (int i = kTerms; i >= 1; --i) s = Interval(1.0) + (x * s) / static_cast<double>(i);
  // tail of sum_{i>kTerms} tt^i/i!  <=  |tt|^{K+1}/(K+1)! * 1/(1-|tt|)
  double att = std::fabs(tt);
  double fact = 1.0;
  for (int i = 2; i <= kTerms + 1; ++i) fact = rnd::mul_down(fact, i);
  double rem = rnd::mul_up(rnd::div_up(rnd::pow_up(att, kTerms + 1), fact), 1.04);
  s = s + Interval(-rem, rem);
  for (int i = 0; i < halvings; ++i) s = s * s;
  return s;
}

const Interval& ln2_enclosure();

// log on a point argument: frexp reduction into [sqrt(1/2), sqrt(2)), then
// 2*atanh((m-1)/(m+1)) with geometric tail bound.
Interval log_point(double t) {
  if (!(t > 0.0)) throw DomainError("log: nonpositive argument");
  int e = 0;
  double m = std::frexp(t, &e);  // exact: t = m * 2^e, m in [0.5, 1)
  if (m < 0.70710678118654752) {
    m *= 2.0;  // exact
    e -= 1;
  }
  Interval u = Interval(m - 1.0) / Interval(m + 1.0);  // m-1 exact (Sterbenz)
  Interval u2 = u * u;
  const int kTerms = 16;
  Interval h = Interval(1.0) / static_cast<double>(2 * kTerms + 1);
  for (int i = kTerms - 1; i >= 0; --i)
    h = Interval(1.0) / static_cast<double>(2 * i + 1) + u2 * h;
  Interval atanh = u * h;
  double au = std::max(std::fabs(u.lo), std::fabs(u.hi));
  double rem = rnd::mul_up(rnd::div_up(rnd::pow_up(au, 2 * kTerms + 3),
                                       static_cast<double>(2 * kTerms + 3)),
                           1.04);
  atanh = atanh + Interval(-rem, rem);
  Interval res = Interval(2.0) * atanh;
  if (e != 0) res = res + Interval(static_cast<double>(e)) * ln2_enclosure();
  return res;
}

// sin on a point argument below ~pi/2 + slack: alternating nested Taylor,
// remainder bounded by the first omitted term.
Interval sin_point_small(double t) {
  const int kTerms = 14;
  Interval x(t);
  Interval x2 = x * x;
  Interval p(1.0);
  for (int k = kTerms; k >= 1; --k) {
    double den = static_cast<double>(2 * k) * static_cast<double>(2 * k + 1);
    p = Interval(1.0) - (x2 * p) / den;
  }
  Interval s = x * p;
  double at = std::fabs(t);
  double fact_down = 1.0;
  for (int i = 2; i <= 2 * kTerms + 3; ++i) fact_down = rnd::mul_down(fact_down, i);
  double rem = rnd::div_up(rnd::pow_up(at, 2 * kTerms + 3), fact_down);
  return s + Interval(-rem, rem);
}

// sin over [0, pi]: fold arguments past pi/2 through sin(x) = sin(pi - x).
Interval sin_point(double t) {
  if (t <= 1.5707963267948966) return sin_point_small(t);
  Interval folded = pi_enclosure() - Interval(t);
  Interval a = sin_point_small(folded.lo);
  Interval b = sin_point_small(folded.hi);
  return hull(a, b);
}

// Rational alternating partial sums of atan(1/q); returns exact bounds.
void atan_inv_bounds(long q, int terms, Rational* lo, Rational* hi) {
  Rational u(1, q);
  Rational u2 = u * u;
  Rational term = u;
  Rational s(0);
  Rational s_prev(0);
  for (int k = 0; k <= terms; ++k) {
    Rational contrib = term / Rational(2 * k + 1);
    s_prev = s;
    s = (k % 2 == 0) ? s + contrib : s - contrib;
    term = term * u2;
  }
  // consecutive partial sums bracket the limit
  if (s < s_prev) {
    *lo = s;
    *hi = s_prev;
  } else {
    *lo = s_prev;
    *hi = s;
  }
}

}  // namespace

const Interval& pi_enclosure() {
  static const Interval kPi = [] {
    Rational a5_lo, a5_hi, a239_lo, a239_hi;
    atan_inv_bounds(5, 24, &a5_lo, &a5_hi);
    atan_inv_bounds(239, 10, &a239_lo, &a239_hi);
    Rational lo = Rational(16) * a5_lo - Rational(4) * a239_hi;
    Rational hi = Rational(16) * a5_hi - Rational(4) * a239_lo;
    return Interval::enclose(lo, hi);
  }();
  return kPi;
}

namespace {
const Interval& ln2_enclosure() {
  static const Interval kLn2 = [] {
    // ln 2 = 2 atanh(1/3); positive-term series with geometric tail.
    Rational u(1, 3);
    Rational u2 = u * u;
    Rational term = u;
    Rational s(0);
    const int kTerms = 26;
    for (int k = 0; k <= kTerms; ++k) {
      s = s + term / Rational(2 * k + 1);
      term = term * u2;
    }
    Rational tail = term / Rational(2 * kTerms + 3) * Rational(9, 8);
    return Interval::enclose(Rational(2) * s, Rational(2) * (s + tail));
  }();
  return kLn2;
}
}  // namespace

Interval sqrt(const Interval& x) {
  if (x.lo < 0.0) throw DomainError("sqrt: negative operand");
  return Interval(root_floor(x.lo, 2), root_ceil(x.hi, 2));
}

Interval nth_root(const Interval& x, int n) {
  if (n < 1) throw DomainError("nth_root: order must be positive");
  if (n == 1) return x;
  if (x.lo < 0.0) throw DomainError("nth_root: negative operand");
  return Interval(root_floor(x.lo, n), root_ceil(x.hi, n));
}

Interval pow_int(const Interval& x, int k) {
  if (k == 0) return Interval(1.0);
  if (k < 0) return Interval(1.0) / pow_int(x, -k);
  if (x.lo >= 0.0) return Interval(rnd::pow_down(x.lo, k), rnd::pow_up(x.hi, k));
  if (x.hi <= 0.0) {
    double lo_mag = rnd::pow_down(-x.hi, k), hi_mag = rnd::pow_up(-x.lo, k);
    if (k % 2 == 0) return Interval(lo_mag, hi_mag);
    return Interval(-hi_mag, -lo_mag);
  }
  double big = rnd::pow_up(std::max(-x.lo, x.hi), k);
  if (k % 2 == 0) return Interval(0.0, big);
  return Interval(-rnd::pow_up(-x.lo, k), rnd::pow_up(x.hi, k));
}

Interval exp(const Interval& x) {
  Interval a = exp_point(x.lo);
  Interval b = exp_point(x.hi);
  return Interval(a.lo, b.hi);
}

Interval log(const Interval& x) {
  if (x.lo <= 0.0) throw DomainError("log: operand must be strictly positive");
  Interval a = log_point(x.lo);
  Interval b = log_point(x.hi);
  return Interval(a.lo, b.hi);
}

Interval pow(const Interval& x, const Rational& r) {
  if (r.is_zero()) return Interval(1.0);
  if (r.is_integer()) {
    double ri = r.to_double();
    if (std::fabs(ri) <= 1e9) return pow_int(x, static_cast<int>(ri));
  }
  // p/q in lowest terms
  const mpq_t& q = r.raw();
  if (mpz_fits_slong_p(mpq_numref(q)) && mpz_fits_slong_p(mpq_denref(q))) {
    long p = mpz_get_si(mpq_numref(q));
    long den = mpz_get_si(mpq_denref(q));
    if (den <= 64 && std::labs(p) <= 64) {
      if (x.lo < 0.0) throw DomainError("pow: negative base with fractional exponent");
      if (p < 0 && x.lo == 0.0) throw DomainError("pow: zero base with negative exponent");
      Interval root = nth_root(x, static_cast<int>(den));
      return pow_int(root, static_cast<int>(p));
    }
  }
  if (x.lo <= 0.0) throw DomainError("pow: base must be positive for this exponent");
  return exp(Interval::enclose(r) * log(x));
}

Interval sin(const Interval& x) {
  const Interval& pi = pi_enclosure();
  if (x.lo < 0.0 || x.hi > pi.hi)
    throw DomainError("sin: argument not within [0, pi]");
  Interval half = pi / 2.0;
  Interval at_lo = sin_point(x.lo);
  Interval at_hi = sin_point(x.hi);
  Interval res;
  if (x.hi <= half.lo) {
    res = Interval(at_lo.lo, at_hi.hi);  // increasing
  } else if (x.lo >= half.hi) {
    res = Interval(at_hi.lo, at_lo.hi);  // decreasing
  } else {
    res = Interval(std::min(at_lo.lo, at_hi.lo), 1.0);
  }
  if (res.hi > 1.0) res.hi = 1.0;
  return res;
}

}  // namespace sendov
