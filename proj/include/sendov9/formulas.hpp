#ifndef SENDOV9_FORMULAS_HPP
#define SENDOV9_FORMULAS_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "sendov9/constants.hpp"
#include "sendov9/expr.hpp"
#include "sendov9/interval.hpp"
#include "sendov9/poly.hpp"

namespace sendov {

/// Formula-layer constants, adjustable through the CLI --mutate test hook.
/// Defaults are the shipped proof constants.
struct Params {
  Rational R{23, 50};      // zero-modulus threshold (0.46)
  int p_exp = 7;           // exponent of (1 + a - a^2) in the threshold margin
  Rational m_exp{1, 4};    // exponent m of f (fixed; f_factored is m=1/4 only)
  Rational ustar_scale{1}; // scales u_star in the contradiction check
  bool q_feasibility_clip = true;
  std::optional<double> two_sin_sq_override;

  /// Applies "key=value" mutations (R, p_exp, ustar_scale, two_sin_sq,
  /// qclip). Throws DomainError on unknown keys or unparsable values.
  static Params with_mutations(const std::map<std::string, std::string>& mutations);
  std::string describe() const;
  bool is_default() const;
};

enum class CaseId { I, II, IIIa, IIIb, IV };

/// One of the five zero-distribution cases: (n1, n2) split of the eight
/// zeros by r_k < 1, with the case's q lower bound and the feasibility
/// constraint q (1+a)^{n2} >= 9.
struct CaseSpec {
  CaseId id;
  int n1;
  int n2;
  const char* name;  // "i", "ii", "iii_a", "iii_b", "iv"

  Interval q_lower(const Params& params) const;
  bool has_q() const { return n1 > 0; }
  static const std::array<CaseSpec, 5>& all();
  static const CaseSpec& by_name(const std::string& name);
};

// ---- scalar formulas ------------------------------------------------------

/// 9 - 4a^2/(1+a^2) - 6a, the floor of the Blaschke product comparison.
Interval const_2_1(const Interval& a);

struct LambdaResult {
  Interval lambda;           // 1 - (1 - aR)^(1/9)
  bool lambda_le_sin_ok;     // lambda <= sin(pi/9) certified on the input
  bool r_bound_ok;           // R <= a^-1 (1 - (1 - sin(pi/9))^9) certified
};
LambdaResult lambda_of(const Interval& a, const Interval& R);

/// Threshold margin F(a): const_2_1(a) (aR+1)/(R+a)
///   - sqrt(1 + (1-a^2) lambda(lambda+2)) (1+a-a^2)^p.
/// Nonnegative on [0.845, 1] with equality exactly at a = 1.
Interval threshold_margin(const Interval& a, const Params& params);

/// G(a) = F(a)/(1-a), algebraically identical quotient with the (1-a) factor
/// removed; finite and positive at a = 1, which is what lets the closed strip
/// at the right endpoint be certified by plain subdivision.
Interval threshold_quotient(const Interval& a, const Params& params);

/// f(x) = (x^2-1) / ((1-x^(1/4)) (a+x)^2) in the factored form
/// -(1+u)(1+u^2)(1+x)/(a+x)^2 with u = x^(1/4); the x=1 singularity is
/// removable and removed. Valid for exponent m = 1/4 only.
Interval f_factored(const Interval& x, const Interval& a);

/// Literal f with symbolic exponent m; requires x.hi < 1 (pole guard).
Interval f_raw(const Interval& x, const Interval& a, const Rational& m_exp);

/// Numerator Y of f' for m = 1/4, in the factored form
/// (1-u)^2 W(u,a) / (4u^3); identical to the literal polynomial expression
/// and exactly zero at x = 1.
Interval y_factored(const Interval& x, const Interval& a);
/// Literal Y = ((m-2)x^{m+1} - m x^{m-1} + 2x) a + m x^{m+2} - (2+m)x^m + 2
/// at m = 1/4 (kept for cross-validation of the factored route).
Interval y_raw(const Interval& x, const Interval& a);
/// W(u,a) = u^3 (u^7+2u^6+...+8) - a (7u^6+6u^5+...+1).
Interval w_poly(const Interval& u, const Interval& a);

// ---- inverse-square product-floor bound -----------------------------------

struct BoundParams {
  int N = 1;
  Interval m{1.0};
  Interval M{1.0};
  Interval C{1.0};
  std::optional<int> v;  // explicit threshold index; computed if absent
};

/// Candidate range for a step index over an interval box; decided when
/// lo == hi.
struct VCandidates {
  int lo = 0;
  int hi = 0;
  bool decided() const { return lo == hi; }
};

/// v = min{ j in Z : M^j m^(N-j) >= C } over interval data; the returned
/// range covers every pointwise value in the box.
VCandidates v_threshold(int N, const Interval& m, const Interval& M, const Interval& C,
                        int j_floor = -16, int j_cap = 64);

/// (N-v)/m^2 + (v-1)/M^2 + (m^(N-v) M^(v-1) / C)^2 for an explicit v.
Interval sigma_bound_for_v(int N, const Interval& m, const Interval& M, const Interval& C,
                           int v);

/// Bound with v from the definitional minimum; hulls the candidate range when
/// the comparison is interval-ambiguous (callers that need an exact v split).
/// Throws InfeasibleBound if certainly m^N > C or C > M^N.
Interval sigma_bound(const BoundParams& p);

// ---- the contradiction pair ------------------------------------------------

/// v* = min{ j : j >= 7 log((1+a)/s) / log((1+a)^{15/8} / (9^{1/8} s^{7/8})) },
/// s = 2 sin(pi/9); equals the product-floor index for N=8,
/// m=(s/(1+a))^{7/8}, M=(1+a)/9^{1/8}, C=1.
VCandidates v_star(const Interval& a);

/// U*(a) = (8-v*)(s/(1+a))^{-7/4} + (v*-1)((1+a)/9^{1/8})^{-2}
///         + ((s/(1+a))^{7(8-v*)/8} ((1+a)/9^{1/8})^{v*-1})^2,
/// hulled across v* candidates (sound when used as an upper bound).
Interval u_star(const Interval& a, const Params& params);
Interval u_star_for_v(const Interval& a, int v, const Params& params);

struct UCaseResult {
  Interval UA{0.0};
  Interval UB{0.0};
  Interval U{0.0};
  VCandidates v1{0, 0};
  VCandidates v2{0, 0};
};

/// Case-wise upper bound U(a,q) = U_A + U_B; hulls across the candidate
/// v1/v2 values (sound for every feasible point of the box; v2 candidates
/// are capped at n2, which holds pointwise wherever q (1+a)^{n2} >= 9).
UCaseResult u_case(const CaseSpec& cs, const Interval& a, const Interval& q,
                   const Params& params);

enum class Feasibility { Yes, No, Unknown };
/// q (1+a)^{n2} >= 9, decided by directed rounding.
Feasibility case_feasibility(const CaseSpec& cs, const Interval& a, const Interval& q);

/// 4U/(U-4) ((8 - 9U/8) / (1-a^2)^3)^{1/4}. DomainError if U touches 4 or
/// 64/9 or a touches 1.
Interval contradiction_lhs(const Interval& U, const Interval& a);

/// Lower bound of the contradiction lhs valid for every a in [a.lo, 1),
/// used on boxes whose a-range touches 1, where (1-a^2)^{-3/4} diverges.
double contradiction_lhs_lower_on_strip(const Interval& U, const Interval& a);

// ---- evaluation-only diagnostics -------------------------------------------

/// 1/sqrt(1 + lambda(lambda+2) - a^2 lambda(lambda+2)).
Interval gamma0_lower_bound(const Interval& a, const Interval& lambda);
/// 1/(1 + a - a^2), the Moebius image threshold that forces rho_j <= 1.
Interval mobius_threshold(const Interval& a);
/// -8/a + 8a + (9/(8a)) (1-a^2) sigma.
Interval delta_upper_bound(const Interval& a, const Interval& sigma);
/// (a^2 - 1 + (1/4) sum (|z_k|^2 - a^2)/r_k^2)^4.
Interval critpoint_product_factor(const PolyConfig& config, const DerivedQuantities& d);
/// prod |w_k| / const_2_1(a), the bound on prod |gamma_j|.
Interval gamma_product_bound(const PolyConfig& config, const DerivedQuantities& d);
/// sum 1/R_k^2 (compared against u_star in reports).
Interval normalized_inverse_square_sum(const DerivedQuantities& d);

// ---- identity + exact-evaluation surface ------------------------------------

struct ProductIdentity {
  Interval nine_over_crit;  // 9 / prod over 2 sin(pi k/9) >= 1
  Interval two_sin_sq;      // (2 sin(pi/9))^2 (or the mutated override)
  Interval difference;
  bool holds;  // overlap and |difference| <= 2^-40
};
ProductIdentity sin_product_identity(const Params& params);

/// Expression trees for exact endpoint evaluation. Variable conventions:
/// const21: var0=a; threshold: var0=a; y_literal: var0=x, var1=a.
ExprPtr const21_expr();
ExprPtr threshold_expr(const Params& params);
ExprPtr y_literal_expr();

/// JSON report of derived quantities plus the diagnostic bounds.
std::string poly_report_json(const PolyConfig& config, const Params& params,
                             std::uint64_t seed = 0);

}  // namespace sendov

#endif
