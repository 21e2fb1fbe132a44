#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sendov9/formulas.hpp"
#include "testutil.hpp"

using namespace sendov;
using testutil::contains_value;
using testutil::u01;

namespace {

// dense rational polynomial helpers for the exact factorization checks
using RPoly = std::vector<Rational>;  // coefficient of x^i at index i

RPoly rp_mul(const RPoly& a, const RPoly& b) {
  RPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

bool rp_equal(const RPoly& a, const RPoly& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Rational ai = i < a.size() ? a[i] : Rational(0);
    Rational bi = i < b.size() ? b[i] : Rational(0);
    if (ai != bi) return false;
  }
  return true;
}

Interval rand_sub(std::mt19937_64& rng, double lo, double hi, double max_w) {
  double a = lo + (hi - lo) * u01(rng);
  double w = max_w * u01(rng);
  double b = std::min(hi, a + w);
  return Interval(a, b);
}

}  // namespace

TEST_CASE("positivity floor against oracle values") {
  CHECK(contains_value(const_2_1(Interval(0.845)),
                       "2.2636882484211142656100651711211904476313216789647e+00"));
  CHECK(contains_value(const_2_1(Interval(0.9)),
                       "1.8099447513812152875869742489668870569528162617461e+00"));
  Interval whole = const_2_1(Interval(0.845, 1.0));
  CHECK(whole.lo > 0.0);
  CHECK_THROWS_AS(const_2_1(Interval(0.0, 0.5)), DomainError);
}

TEST_CASE("lambda and its side conditions") {
  Interval R = Interval::enclose(Rational(23, 50));
  LambdaResult l = lambda_of(Interval(0.845), R);
  CHECK(contains_value(l.lambda, "5.3216919150802184284202081642128064589991249025951e-02"));
  CHECK(l.lambda_le_sin_ok);
  CHECK(l.r_bound_ok);

  LambdaResult at1 = lambda_of(Interval(1.0), R);
  CHECK(contains_value(at1.lambda, "6.6173974778271894851449058662943501065474137931636e-02"));
  CHECK(at1.lambda_le_sin_ok);

  LambdaResult zero = lambda_of(Interval(0.845), Interval(0.0));
  CHECK(zero.lambda.lo == 0.0);
  CHECK(zero.lambda.hi == 0.0);

  LambdaResult whole = lambda_of(Interval(0.845, 1.0), R);
  CHECK(whole.lambda_le_sin_ok);
  CHECK(whole.r_bound_ok);
}

TEST_CASE("threshold margin against oracle values") {
  Params params;
  CHECK(contains_value(threshold_margin(Interval(0.845), params),
                       "5.3304668994293575680057029401868598309868237378816e-03"));
  CHECK(contains_value(threshold_margin(Interval(0.9), params),
                       "3.3284174074133021126875349882005248249947510399747e-02"));
  CHECK(contains_value(threshold_quotient(Interval(0.9), params),
                       "3.3284174074133028517446632428843291042102471500815e-01"));
  double near_one = 1.0 - 0x1p-20;
  CHECK(contains_value(threshold_quotient(Interval(near_one), params),
                       "1.2331260759726193332269037959091056228205919351216e+00"));
}

TEST_CASE("quotient identity: margin = (1-a) * quotient") {
  Params params;
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    Interval a = rand_sub(rng, 0.845, 0.999999, 0.01);
    Interval lhs = threshold_margin(a, params);
    Interval rhs = (Interval(1.0) - a) * threshold_quotient(a, params);
    CHECK(lhs.intersects(rhs));
  }
}

TEST_CASE("exact polynomial division behind the quotient form") {
  // N(a) = (-6a^3 + 5a^2 - 6a + 9)(Ra + 1) - (R + a)(1 + a^2) must equal
  // (1 - a)(6R a^3 + (R+7) a^2 + (8R+2) a + (9-R)) identically in a.
  for (const Rational& R : {Rational(23, 50), Rational(47, 100), Rational(1, 2)}) {
    RPoly c21_num = {Rational(9), Rational(-6), Rational(5), Rational(-6)};
    RPoly aR1 = {Rational(1), R};
    RPoly lhs = rp_mul(c21_num, aR1);
    RPoly sub = rp_mul({R, Rational(1)}, {Rational(1), Rational(0), Rational(1)});
    RPoly n(5, Rational(0));
    for (std::size_t i = 0; i < lhs.size(); ++i) n[i] = n[i] + lhs[i];
    for (std::size_t i = 0; i < sub.size(); ++i) n[i] = n[i] - sub[i];

    RPoly quot = {Rational(9) - R, Rational(8) * R + Rational(2), R + Rational(7),
                  Rational(6) * R};
    RPoly recomposed = rp_mul({Rational(1), Rational(-1)}, quot);
    CHECK(rp_equal(n, recomposed));
  }
}

TEST_CASE("exact geometric expansion behind the quotient form") {
  // (1+t)^p - 1 = t * sum_{i<p} (1+t)^i with t = a - a^2, p = 7
  std::mt19937_64 rng(71);
  for (int i = 0; i < 200; ++i) {
    Rational a(static_cast<long>(rng() % 2000) - 1000, 1009);
    Rational t = a - a * a;
    Rational lhs = (Rational(1) + t).pow_int(7) - Rational(1);
    Rational sum(0);
    for (int k = 0; k < 7; ++k) sum = sum + (Rational(1) + t).pow_int(k);
    CHECK(lhs == t * sum);
  }
}

TEST_CASE("f: factored and literal routes overlap below the pole") {
  std::mt19937_64 rng(15);
  Rational quarter(1, 4);
  for (int i = 0; i < 10000; ++i) {
    Interval x = rand_sub(rng, 0.46, 1.0 - 1e-6, 0.01);
    Interval a = rand_sub(rng, 0.845, 1.0, 0.01);
    Interval f1 = f_factored(x, a);
    Interval f2 = f_raw(x, a, quarter);
    CHECK(f1.intersects(f2));
  }
}

TEST_CASE("f at the removable singularity") {
  // u = 1 collapse: f(1, a) = -8/(1+a)^2, exactly -2 at a = 1
  Interval at1 = f_factored(Interval(1.0), Interval(1.0));
  CHECK(at1.lo <= -2.0);
  CHECK(at1.hi >= -2.0);
  CHECK(at1.width() <= 1e-14);
  CHECK(contains_value(f_factored(Interval(1.0), Interval(0.845)),
                       "-2.3501590029450430684471495882869127384440501794367e+00"));
  CHECK(contains_value(f_factored(Interval(0.46), Interval(0.9)),
                       "-2.4157096768821558860017296261386445697949614542050e+00"));
  CHECK_THROWS_AS(f_raw(Interval(0.5, 1.0), Interval(0.9), Rational(1, 4)), DomainError);
}

TEST_CASE("exact factorization of x^2 - 1 over 1 - x^(1/4)") {
  // with x = u^4: (x^2 - 1)/(1 - u) = -(1+u)(1+u^2)(1+x)
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    Rational u(1 + static_cast<long>(rng() % 997), 1999);
    Rational x = u.pow_int(4);
    Rational lhs = x * x - Rational(1);
    Rational rhs = -(Rational(1) - u) * (Rational(1) + u) * (Rational(1) + u * u) *
                   (Rational(1) + x);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Y: exact integer factorization behind the factored form") {
  // 4 u^3 Y(u^4, a) = a(-7u^8 + 8u^7 - 1) + (u^12 - 9u^4 + 8u^3)
  //                 = (1-u)^2 (u^3 (u^7+2u^6+...+8) - a (7u^6+...+1))
  RPoly sq = rp_mul({Rational(1), Rational(-1)}, {Rational(1), Rational(-1)});

  RPoly b_inner(11, Rational(0));  // u^3 * (u^7 + 2u^6 + ... + 8)
  for (int i = 0; i <= 7; ++i) b_inner[static_cast<std::size_t>(3 + i)] = Rational(8 - i);
  RPoly b_expanded = rp_mul(sq, b_inner);
  RPoly b_expected(13, Rational(0));
  b_expected[12] = Rational(1);
  b_expected[4] = Rational(-9);
  b_expected[3] = Rational(8);
  CHECK(rp_equal(b_expanded, b_expected));

  RPoly a_inner(7, Rational(0));  // 7u^6 + 6u^5 + ... + 1
  for (int i = 0; i <= 6; ++i) a_inner[static_cast<std::size_t>(i)] = Rational(i + 1);
  RPoly a_expanded = rp_mul(sq, a_inner);
  RPoly a_expected(9, Rational(0));  // 7u^8 - 8u^7 + 1 (sign flipped below)
  a_expected[8] = Rational(7);
  a_expected[7] = Rational(-8);
  a_expected[0] = Rational(1);
  CHECK(rp_equal(a_expanded, a_expected));
}

TEST_CASE("Y: factored and literal routes overlap") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 10000; ++i) {
    Interval x = rand_sub(rng, 0.46, 1.0, 0.01);
    Interval a = rand_sub(rng, 0.845, 1.0, 0.01);
    CHECK(y_factored(x, a).intersects(y_raw(x, a)));
  }
}

TEST_CASE("Y against oracle values") {
  CHECK(contains_value(y_factored(Interval(0.9), Interval(0.9)),
                       "1.5760820300225193940919633242520340384242639354570e-03"));
  CHECK(contains_value(y_factored(Interval(0.46), Interval(1.0)),
                       "4.2476466864667274152510949487961301181042936361996e-05"));
  // exactly zero at x = 1 in the factored route
  Interval p = y_factored(Interval(1.0), Interval(0.9));
  CHECK(p.lo == 0.0);
  CHECK(p.hi == 0.0);
}

TEST_CASE("product-floor bound: pinned examples") {
  BoundParams p;
  p.N = 2;
  p.m = Interval(1.0);
  p.M = Interval(2.0);
  p.C = Interval(2.0);
  Interval b = sigma_bound(p);
  // brute-force maximum of 1/c1^2 + 1/c2^2 on the set is 1.25 at (1, 2)
  CHECK(b.contains(1.25));
  CHECK(b.width() <= 1e-14);
  VCandidates v = v_threshold(2, p.m, p.M, p.C);
  CHECK(v.lo == 1);
  CHECK(v.hi == 1);

  BoundParams single;
  single.N = 1;
  single.m = single.M = single.C = Interval(0.5);
  CHECK(sigma_bound(single).contains(4.0));

  BoundParams ub;
  ub.N = 8;
  ub.m = Interval(1.0);
  ub.M = Interval(1.9);
  ub.C = Interval(9.0);
  CHECK(contains_value(sigma_bound(ub),
                       "5.4118382764269348046547538236555540721594354730093e+00"));

  BoundParams bad = ub;
  bad.C = Interval(300.0);
  CHECK_THROWS_AS(sigma_bound(bad), InfeasibleBound);
  bad.C = Interval(0.5);
  bad.m = Interval(0.9);
  CHECK_THROWS_AS(sigma_bound(bad), InfeasibleBound);
}

TEST_CASE("v at an exact tie and at index zero") {
  // tie: M^1 m^1 = C exactly
  VCandidates tie = v_threshold(2, Interval(1.0), Interval(2.0), Interval(2.0));
  CHECK(tie.lo == 1);
  CHECK(tie.hi == 1);
  // v = 0 when C = m^N exactly
  VCandidates zero = v_threshold(2, Interval(0.5), Interval(1.0), Interval(0.25));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);
  Interval b = sigma_bound_for_v(2, Interval(0.5), Interval(1.0), Interval(0.25), 0);
  CHECK(b.contains(8.0));  // 2/m^2 - 1 + (m^2/C)^2 = 8 - 1 + 1
}

TEST_CASE("sigma bound dominates dense sampling (spot run)") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    int N = 1 + static_cast<int>(rng() % 8);
    double m = 0.1 + 1.5 * u01(rng);
    double M = m * (1.0 + 2.0 * u01(rng));
    double C = std::pow(m, N) * std::pow(M / m, N * u01(rng));
    C = std::clamp(C, std::pow(m, N), std::pow(M, N));
    BoundParams p;
    p.N = N;
    p.m = Interval(m);
    p.M = Interval(M);
    p.C = Interval(C);
    double bound = sigma_bound(p).hi;
    for (int s = 0; s < 200; ++s) {
      std::vector<double> c(static_cast<std::size_t>(N));
      double prod = 1.0;
      for (auto& ci : c) {
        ci = m + (M - m) * u01(rng);
        prod *= ci;
      }
      if (prod < C) {
        double scale = std::pow(C / prod, 1.0 / N);
        prod = 1.0;
        for (auto& ci : c) {
          ci = std::min(M, ci * scale);
          prod *= ci;
        }
        if (prod < C * (1.0 - 1e-9)) continue;
      }
      double sum = 0.0;
      for (double ci : c) sum += 1.0 / (ci * ci);
      CHECK(sum <= bound + 1e-9);
    }
  }
}

TEST_CASE("u_star and v_star") {
  Params params;
  VCandidates v = v_star(Interval(0.845, 1.0));
  CHECK(v.lo == 6);
  CHECK(v.hi == 6);
  CHECK(contains_value(u_star(Interval(0.9), params),
                       "1.5452620548821851031897737685428425032525863255661e+01"));
  CHECK(contains_value(u_star(Interval(0.845), params),
                       "1.4807473997123125654399880296753127053447623800834e+01"));
  CHECK_THROWS_AS(v_star(Interval(0.5)), DomainError);

  // v* agrees with the product-floor index at N=8, m=(s/(1+a))^{7/8},
  // M=(1+a)/9^{1/8}, C=1 (the normalized-distance reading)
  const ConstantTable& t = ConstantTable::get();
  for (double a : {0.845, 0.9, 0.95, 0.999}) {
    Interval ai(a);
    Interval m = pow(t.two_sin_pi_9 / (Interval(1.0) + ai), Rational(7, 8));
    Interval M = (Interval(1.0) + ai) / pow(Interval(9.0), Rational(1, 8));
    VCandidates via_floor = v_threshold(8, m, M, Interval(1.0));
    VCandidates via_ratio = v_star(ai);
    CHECK(via_floor.lo == via_ratio.lo);
    CHECK(via_floor.hi == via_ratio.hi);
  }

  Params scaled;
  scaled.ustar_scale = Rational(13, 10);
  Interval u1 = u_star(Interval(0.9), params);
  Interval u2 = u_star(Interval(0.9), scaled);
  CHECK(u2.lo > u1.hi);  // scaling hook really scales
}

TEST_CASE("case-wise U bound") {
  Params params;
  const CaseSpec& ci = CaseSpec::by_name("i");
  UCaseResult r = u_case(ci, Interval(0.9), Interval(1.0), params);
  CHECK(r.UA.lo == 0.0);
  CHECK(r.UA.hi == 0.0);
  CHECK(r.v2.lo == 4);
  CHECK(r.v2.hi == 4);
  CHECK(contains_value(r.U, "5.4118382764269348046547538236555540721594354730093e+00"));

  const CaseSpec& civ = CaseSpec::by_name("iv");
  UCaseResult r4 = u_case(civ, Interval(0.845), Interval(0.78), params);
  CHECK(r4.v1.lo == 4);
  CHECK(r4.v2.lo == 4);
  CHECK(contains_value(r4.U, "5.8212315221651690023723225742668483906593570625868e+00"));

  // q -> 1 limit of case ii: U_A = q^{-2} = 1 exactly
  const CaseSpec& cii = CaseSpec::by_name("ii");
  UCaseResult r2 = u_case(cii, Interval(0.9), Interval(1.0), params);
  CHECK(r2.UA.lo == 1.0);
  CHECK(r2.UA.hi == 1.0);

  CHECK_THROWS_AS(u_case(ci, Interval(0.9), Interval(1.5), params), DomainError);
}

TEST_CASE("u_case box evaluation contains every pointwise value") {
  Params params;
  std::mt19937_64 rng(53);
  for (const CaseSpec& cs : CaseSpec::all()) {
    if (!cs.has_q()) continue;
    double qlo = cs.q_lower(params).hi;
    for (int i = 0; i < 400; ++i) {
      Interval a = rand_sub(rng, 0.845, 0.9999, 0.05);
      Interval q = rand_sub(rng, qlo, 1.0, 0.08);
      // keep to the feasible side so the v2 cap applies pointwise
      if (case_feasibility(cs, a, q) != Feasibility::Yes) continue;
      UCaseResult box = u_case(cs, a, q, params);
      for (int s = 0; s < 20; ++s) {
        double ap = a.lo + (a.hi - a.lo) * u01(rng);
        double qp = q.lo + (q.hi - q.lo) * u01(rng);
        UCaseResult pt = u_case(cs, Interval(ap), Interval(qp), params);
        CHECK(box.U.lo <= pt.U.lo + 1e-12);
        CHECK(pt.U.hi <= box.U.hi + 1e-12);
      }
    }
  }
}

TEST_CASE("feasibility test is three-valued and correct") {
  const CaseSpec& civ = CaseSpec::by_name("iv");
  CHECK(case_feasibility(civ, Interval(0.845), Interval(0.9)) == Feasibility::Yes);
  CHECK(case_feasibility(civ, Interval(0.845, 1.0), Interval(0.47, 0.5)) == Feasibility::No);
  CHECK(case_feasibility(civ, Interval(0.845, 1.0), Interval(0.7, 0.8)) ==
        Feasibility::Unknown);
  // the q floor 9/(1+a)^4 at a = 0.845 is about 0.7767
  Interval edge = Interval(9.0) / pow_int(Interval(1.0) + Interval(0.845), 4);
  CHECK(edge.contains(0.77670666));
}

TEST_CASE("contradiction lhs: domain guards and pinned value") {
  Interval U(5.4118382764269346, 5.411838276426935);
  CHECK(contains_value(contradiction_lhs(U, Interval(0.9)),
                       "6.2648194307375436152297082729817996887583590825375e+01"));
  CHECK_THROWS_AS(contradiction_lhs(Interval(3.9, 5.0), Interval(0.9)), DomainError);
  CHECK_THROWS_AS(contradiction_lhs(Interval(5.0, 7.2), Interval(0.9)), DomainError);
  CHECK_THROWS_AS(contradiction_lhs(Interval(5.0, 5.5), Interval(0.99, 1.0)), DomainError);
}

TEST_CASE("contradiction lhs is decreasing in U") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 1000; ++i) {
    double a = 0.845 + 0.14 * u01(rng);
    double u1 = 4.05 + 2.5 * u01(rng);
    double u2 = u1 + (7.0 - u1) * u01(rng) * 0.4;
    if (u2 <= u1 + 1e-9 || u2 >= 64.0 / 9.0 - 1e-6) continue;
    Interval l1 = contradiction_lhs(Interval(u1), Interval(a));
    Interval l2 = contradiction_lhs(Interval(u2), Interval(a));
    CHECK(l1.lo > l2.hi - 1e-9);
  }
}

TEST_CASE("strip lower bound really bounds the lhs from below") {
  Interval U(5.3, 5.6);
  Interval a(0.9995, 1.0);
  double lb = contradiction_lhs_lower_on_strip(U, a);
  CHECK(lb > 0.0);
  for (double ap : {0.9995, 0.9999, 0.99999, 0.999999}) {
    Interval lhs = contradiction_lhs(U, Interval(ap));
    CHECK(lhs.lo >= lb - 1e-9);
  }
}

TEST_CASE("case q lower bounds per the table") {
  Params params;
  const ConstantTable& t = ConstantTable::get();
  CHECK(CaseSpec::by_name("i").q_lower(params).lo == 1.0);
  CHECK(CaseSpec::by_name("ii").q_lower(params).lo == t.two_sin_pi_9.lo);
  CHECK(CaseSpec::by_name("iii_a").q_lower(params).lo == t.two_sin_pi_9_sq.lo);
  CHECK(CaseSpec::by_name("iv").q_lower(params).lo == t.two_sin_pi_9_sq.lo);
  CHECK_THROWS_AS(CaseSpec::by_name("v"), DomainError);
}

TEST_CASE("diagnostics") {
  CHECK(contains_value(mobius_threshold(Interval(0.9)),
                       "9.174311926605504736668365e-01"));
  Interval g0 = gamma0_lower_bound(Interval(0.9), Interval(0.0));
  CHECK(g0.lo == 1.0);
  CHECK(g0.hi == 1.0);
  Interval du = delta_upper_bound(Interval(0.9), Interval(5.0));
  CHECK(du.lo <= du.hi);
}

TEST_CASE("mutation parsing") {
  Params p = Params::with_mutations({{"R", "0.5"}, {"p_exp", "8"}, {"qclip", "off"}});
  CHECK(p.R == Rational(1, 2));
  CHECK(p.p_exp == 8);
  CHECK_FALSE(p.q_feasibility_clip);
  CHECK_FALSE(p.is_default());
  CHECK(Params{}.is_default());
  CHECK_THROWS_AS(Params::with_mutations({{"bogus", "1"}}), DomainError);
  CHECK_THROWS_AS(Params::with_mutations({{"R", "1.5"}}), DomainError);
  CHECK_THROWS_AS(Params::with_mutations({{"qclip", "maybe"}}), DomainError);
  Params u = Params::with_mutations({{"ustar_scale", "1.3"}});
  CHECK(u.ustar_scale == Rational(13, 10));
}
