#ifndef SENDOV9_ORACLE_HPP
#define SENDOV9_ORACLE_HPP

#include <mpfr.h>

#include <cstdint>
#include <string>

#include "sendov9/formulas.hpp"
#include "sendov9/rational.hpp"

namespace sendov::oracle {

/// 256-bit floating point value (~77 decimal digits), wrapping MPFR.
/// This is the independent arithmetic every frozen expectation in the test
/// suite is computed with; it shares no code with the interval kernel.
class Real {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Real() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
  Real(double d) { mpfr_init2(v_, kPrecision); mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(long n) { mpfr_init2(v_, kPrecision); mpfr_set_si(v_, n, MPFR_RNDN); }
  Real(int n) : Real(static_cast<long>(n)) {}
  explicit Real(const Rational& r) {
    mpfr_init2(v_, kPrecision);
    mpfr_set_q(v_, r.raw(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, kPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, kPrecision); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  Real sqrt() const { Real r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
  Real rootn(unsigned long n) const { Real r; mpfr_rootn_ui(r.v_, v_, n, MPFR_RNDN); return r; }
  Real pow(const Real& e) const { Real r; mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN); return r; }
  Real pow_si(long k) const { Real r; mpfr_pow_si(r.v_, v_, k, MPFR_RNDN); return r; }
  Real exp() const { Real r; mpfr_exp(r.v_, v_, MPFR_RNDN); return r; }
  Real log() const { Real r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
  Real sin() const { Real r; mpfr_sin(r.v_, v_, MPFR_RNDN); return r; }
  Real abs() const { Real r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }

  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific-notation decimal string with the given significant digits.
  std::string str(int digits = 50) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// ---- independent formula transcriptions (50-digit reference path) ----------

Real o_const21(const Real& a);
Real o_lambda(const Real& a, const Real& R);
Real o_threshold(const Real& a, const Real& R, int p_exp = 7);
Real o_f(const Real& x, const Real& a, const Real& m);
Real o_y(const Real& x, const Real& a);  // literal numerator formula, m = 1/4
long o_v_threshold(int N, const Real& m, const Real& M, const Real& C);
Real o_sigma_bound(int N, const Real& m, const Real& M, const Real& C, long* v_out = nullptr);
long o_v_star(const Real& a);
Real o_u_star(const Real& a, long* v_out = nullptr);
struct OUCase {
  Real UA, UB, U;
  long v1 = 0, v2 = 0;
};
OUCase o_u_case(const CaseSpec& cs, const Real& a, const Real& q);
Real o_contradiction_lhs(const Real& U, const Real& a);

// ---- suites -----------------------------------------------------------------

struct SuiteReport {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  long long violations = 0;
  std::string details_json;  // suite-specific payload
  std::string to_json() const;
};

/// Product-floor bound stress: random feasible (N, m, M, C), dense sampling
/// plus structured extremal candidates plus (N <= 4) constraint-surface grids.
SuiteReport run_sigma_bound_suite(std::uint64_t trials, std::uint64_t seed);
/// Exact product identity and log-derivative identity on random and
/// adversarial configs; includes the Sendov sanity monitor.
SuiteReport run_identities_suite(std::uint64_t trials, std::uint64_t seed);
/// Moebius threshold implication and Blaschke boundary sweep.
SuiteReport run_mobius_suite(std::uint64_t samples, std::uint64_t seed);
/// Golden-value containment: every pinned 50-digit value must lie inside the
/// matching interval enclosure, and must reproduce bit-for-bit from MPFR.
SuiteReport run_spotcheck_suite(const std::string& golden_json_text);

/// The repository golden file content (deterministic).
std::string generate_golden_json();

/// Convenience: run a suite by name ("sigma-bound", "identities", "mobius",
/// "spotchecks"). For spotchecks the golden file is loaded from golden_path.
SuiteReport run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                      const std::string& golden_path);

}  // namespace sendov::oracle

#endif
