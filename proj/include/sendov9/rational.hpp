#ifndef SENDOV9_RATIONAL_HPP
#define SENDOV9_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <string>
#include <utility>

#include "sendov9/errors.hpp"

namespace sendov {

/// Arbitrary-precision rational in canonical form (gcd 1, positive
/// denominator). Thin value-semantics wrapper over GMP mpq_t.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long num, long den = 1) {
    mpq_init(q_);
    if (den == 0) throw DomainError("Rational: zero denominator");
    mpq_set_si(q_, num, 1);
    if (den != 1) {
      mpq_t d;
      mpq_init(d);
      mpq_set_si(d, den, 1);
      mpq_div(q_, q_, d);
      mpq_clear(d);
    }
  }
  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  /// Exact conversion: every finite double is a rational.
  static Rational from_double(double d) {
    Rational r;
    mpq_set_d(r.q_, d);
    return r;
  }

  /// Parses "123", "-4/7", or decimal notation "0.46" (exact as written).
  static Rational from_string(const std::string& s) {
    auto dot = s.find('.');
    Rational r;
    if (dot == std::string::npos) {
      if (mpq_set_str(r.q_, s.c_str(), 10) != 0)
        throw DomainError("Rational: cannot parse '" + s + "'");
      mpq_canonicalize(r.q_);
      return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (mpq_set_str(r.q_, digits.c_str(), 10) != 0)
      throw DomainError("Rational: cannot parse '" + s + "'");
    mpq_canonicalize(r.q_);
    Rational scale(1);
    mpz_ui_pow_ui(mpq_numref(scale.q_), 10, frac_len);
    mpq_div(r.q_, r.q_, scale.q_);
    mpq_canonicalize(r.q_);
    return r;
  }

  double to_double() const { return mpq_get_d(q_); }

  std::string to_string() const {
    char* raw = mpq_get_str(nullptr, 10, q_);
    std::string s(raw);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(raw, s.size() + 1);
    return s;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational pow_int(long k) const {
    if (k == 0) return Rational(1);
    if (is_zero() && k < 0) throw DomainError("Rational: 0 to a negative power");
    Rational r;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), e);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), e);
    mpq_canonicalize(r.q_);
    if (k < 0) mpq_inv(r.q_, r.q_);
    return r;
  }

  /// If *this is an exact n-th power of a rational, returns {true, root}.
  std::pair<bool, Rational> exact_nth_root(unsigned long n) const {
    if (sign() < 0 && n % 2 == 0) throw DomainError("Rational: even root of a negative");
    Rational root;
    mpz_t nr, dr, tmp_n, tmp_d;
    mpz_inits(nr, dr, tmp_n, tmp_d, nullptr);
    mpz_abs(tmp_n, mpq_numref(q_));
    mpz_set(tmp_d, mpq_denref(q_));
    int nexact = mpz_root(nr, tmp_n, n);
    int dexact = mpz_root(dr, tmp_d, n);
    bool ok = nexact != 0 && dexact != 0;
    if (ok) {
      mpz_set(mpq_numref(root.q_), nr);
      mpz_set(mpq_denref(root.q_), dr);
      if (sign() < 0) mpq_neg(root.q_, root.q_);
      mpq_canonicalize(root.q_);
    }
    mpz_clears(nr, dr, tmp_n, tmp_d, nullptr);
    return {ok, root};
  }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

  /// Exact comparison against a double (no rounding on either side).
  int cmp(double d) const {
    Rational rd = from_double(d);
    return mpq_cmp(q_, rd.q_);
  }

  const mpq_t& raw() const { return q_; }

 private:
  mpq_t q_;
};

}  // namespace sendov

#endif
