#include "sendov9/formulas.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace sendov {

namespace {
const Interval kOne(1.0);

Interval one_minus_a_sq(const Interval& a) { return Interval(1.0) - pow_int(a, 2); }

Interval disk_poly(const Interval& a) {  // 1 + a - a^2
  return Interval(1.0) + a - pow_int(a, 2);
}
}  // namespace

Params Params::with_mutations(const std::map<std::string, std::string>& mutations) {
  Params p;
  for (const auto& [key, value] : mutations) {
    if (key == "R") {
      p.R = Rational::from_string(value);
      if (p.R.sign() < 0 || p.R.cmp(1.0) >= 0)
        throw DomainError("mutation R must lie in [0,1)");
    } else if (key == "p_exp") {
      p.p_exp = std::stoi(value);
      if (p.p_exp < 1 || p.p_exp > 64) throw DomainError("mutation p_exp out of range");
    } else if (key == "ustar_scale") {
      p.ustar_scale = Rational::from_string(value);
      if (p.ustar_scale.sign() <= 0) throw DomainError("mutation ustar_scale must be positive");
    } else if (key == "two_sin_sq") {
      p.two_sin_sq_override = Rational::from_string(value).to_double();
    } else if (key == "qclip") {
      if (value == "off" || value == "0" || value == "false")
        p.q_feasibility_clip = false;
      else if (value == "on" || value == "1" || value == "true")
        p.q_feasibility_clip = true;
      else
        throw DomainError("mutation qclip expects on/off");
    } else {
      throw DomainError("unknown mutation key '" + key + "'");
    }
  }
  return p;
}

bool Params::is_default() const {
  Params d;
  return R == d.R && p_exp == d.p_exp && m_exp == d.m_exp && ustar_scale == d.ustar_scale &&
         q_feasibility_clip == d.q_feasibility_clip && !two_sin_sq_override.has_value();
}

std::string Params::describe() const {
  std::ostringstream os;
  os << "R=" << R.to_string() << ";p_exp=" << p_exp << ";m_exp=" << m_exp.to_string()
     << ";ustar_scale=" << ustar_scale.to_string()
     << ";qclip=" << (q_feasibility_clip ? "on" : "off");
  if (two_sin_sq_override) os << ";two_sin_sq=" << *two_sin_sq_override;
  return os.str();
}

const std::array<CaseSpec, 5>& CaseSpec::all() {
  static const std::array<CaseSpec, 5> cases = {{
      {CaseId::I, 0, 8, "i"},
      {CaseId::II, 1, 7, "ii"},
      {CaseId::IIIa, 2, 6, "iii_a"},
      {CaseId::IIIb, 3, 5, "iii_b"},
      {CaseId::IV, 4, 4, "iv"},
  }};
  return cases;
}

const CaseSpec& CaseSpec::by_name(const std::string& name) {
  for (const CaseSpec& cs : all())
    if (name == cs.name) return cs;
  throw DomainError("unknown case '" + name + "'");
}

Interval CaseSpec::q_lower(const Params& params) const {
  const ConstantTable& t = ConstantTable::get();
  switch (id) {
    case CaseId::I:
      return Interval(1.0);
    case CaseId::II:
      return t.two_sin_pi_9;
    default:
      if (params.two_sin_sq_override) return Interval(*params.two_sin_sq_override);
      return t.two_sin_pi_9_sq;
  }
}

Interval const_2_1(const Interval& a) {
  if (a.lo <= 0.0 || a.hi > 1.0) throw DomainError("const_2_1: a must lie in (0,1]");
  Interval a2 = pow_int(a, 2);
  return Interval(9.0) - (Interval(4.0) * a2) / (Interval(1.0) + a2) - Interval(6.0) * a;
}

LambdaResult lambda_of(const Interval& a, const Interval& R) {
  if (a.lo < 0.0 || R.lo < 0.0) throw DomainError("lambda_of: negative inputs");
  Interval aR = a * R;
  if (aR.hi >= 1.0) throw DomainError("lambda_of: aR must stay below 1");
  LambdaResult out;
  out.lambda = Interval(1.0) - nth_root(Interval(1.0) - aR, 9);

  const ConstantTable& t = ConstantTable::get();
  const Interval& sin1 = t.sin_pi_k_9[1];
  out.lambda_le_sin_ok = out.lambda.hi <= sin1.lo;
  Interval cap = (Interval(1.0) - pow_int(Interval(1.0) - sin1, 9)) / a;
  out.r_bound_ok = R.hi <= cap.lo;
  return out;
}

Interval threshold_margin(const Interval& a, const Params& params) {
  Interval R = Interval::enclose(params.R);
  Interval t1 = const_2_1(a) * (a * R + 1.0) / (R + a);
  Interval lambda = lambda_of(a, R).lambda;
  Interval g = lambda * (lambda + 2.0);
  Interval s = Interval(1.0) + one_minus_a_sq(a) * g;
  Interval t2 = sqrt(s) * pow_int(disk_poly(a), params.p_exp);
  return t1 - t2;
}

Interval threshold_quotient(const Interval& a, const Params& params) {
  // F(a)/(1-a) with the (1-a) factor cancelled exactly:
  //   rational part   : ((1+a^2) c21 (aR+1) - (R+a)(1+a^2)) / (1-a)
  //                     = 6R a^3 + (R+7) a^2 + (8R+2) a + (9-R)   (poly division)
  //   sqrt part       : (sqrt(S)-1) P = (1-a^2) g P / (sqrt(S)+1)
  //   power part      : (P-1) = a (1-a) sum_{i<p} (1+a-a^2)^i
  const Rational& R = params.R;
  Interval c3 = Interval::enclose(Rational(6) * R);
  Interval c2 = Interval::enclose(R + Rational(7));
  Interval c1 = Interval::enclose(Rational(8) * R + Rational(2));
  Interval c0 = Interval::enclose(Rational(9) - R);
  Interval n1 = ((c3 * a + c2) * a + c1) * a + c0;
  Interval Ri = Interval::enclose(R);
  Interval term1 = n1 / ((Interval(1.0) + pow_int(a, 2)) * (Ri + a));

  Interval w = nth_root(Interval(1.0) - a * Ri, 9);
  Interval g = (Interval(1.0) - w) * (Interval(3.0) - w);
  Interval s = Interval(1.0) + one_minus_a_sq(a) * g;
  Interval p = pow_int(disk_poly(a), params.p_exp);
  Interval term2 = ((Interval(1.0) + a) * g * p) / (sqrt(s) + 1.0);

  Interval geo(0.0);
  for (int i = 0; i < params.p_exp; ++i) geo = geo + pow_int(disk_poly(a), i);
  Interval term3 = a * geo;

  return term1 - term2 - term3;
}

Interval f_factored(const Interval& x, const Interval& a) {
  if (x.lo <= 0.0 || x.hi > 1.0) throw DomainError("f_factored: x must lie in (0,1]");
  Interval u = nth_root(x, 4);
  Interval num = (Interval(1.0) + u) * (Interval(1.0) + pow_int(u, 2)) * (Interval(1.0) + x);
  return -num / pow_int(a + x, 2);
}

Interval f_raw(const Interval& x, const Interval& a, const Rational& m_exp) {
  if (x.lo <= 0.0) throw DomainError("f_raw: x must be positive");
  if (x.hi >= 1.0) throw DomainError("f_raw: x must stay below 1 (pole at x=1)");
  Interval num = pow_int(x, 2) - 1.0;
  Interval den = (Interval(1.0) - pow(x, m_exp)) * pow_int(a + x, 2);
  return num / den;
}

Interval w_poly(const Interval& u, const Interval& a) {
  Interval b = ((((((u + 2.0) * u + 3.0) * u + 4.0) * u + 5.0) * u + 6.0) * u + 7.0) * u + 8.0;
  Interval c = (((((Interval(7.0) * u + 6.0) * u + 5.0) * u + 4.0) * u + 3.0) * u + 2.0) * u + 1.0;
  return pow_int(u, 3) * b - a * c;
}

Interval y_factored(const Interval& x, const Interval& a) {
  if (x.lo <= 0.0 || x.hi > 1.0) throw DomainError("y_factored: x must lie in (0,1]");
  Interval u = nth_root(x, 4);
  Interval w = w_poly(u, a);
  return pow_int(Interval(1.0) - u, 2) * w / (Interval(4.0) * pow_int(u, 3));
}

Interval y_raw(const Interval& x, const Interval& a) {
  if (x.lo <= 0.0 || x.hi > 1.0) throw DomainError("y_raw: x must lie in (0,1]");
  Interval coeff = Interval::enclose(Rational(-7, 4)) * pow(x, Rational(5, 4)) -
                   Interval::enclose(Rational(1, 4)) * pow(x, Rational(-3, 4)) +
                   Interval(2.0) * x;
  return a * coeff + Interval::enclose(Rational(1, 4)) * pow(x, Rational(9, 4)) -
         Interval::enclose(Rational(9, 4)) * pow(x, Rational(1, 4)) + Interval(2.0);
}

VCandidates v_threshold(int N, const Interval& m, const Interval& M, const Interval& C,
                        int j_floor, int j_cap) {
  if (m.lo <= 0.0 || M.lo <= 0.0 || C.lo <= 0.0)
    throw DomainError("v_threshold: inputs must be positive");
  VCandidates out{j_cap, j_cap};
  bool lo_found = false, hi_found = false;
  for (int j = j_floor; j <= j_cap; ++j) {
    Interval t = pow_int(M, j) * pow_int(m, N - j);
    if (!lo_found && t.hi >= C.lo) {
      out.lo = j;
      lo_found = true;
    }
    if (!hi_found && t.lo >= C.hi) {
      out.hi = j;
      hi_found = true;
      break;
    }
  }
  if (!lo_found || !hi_found)
    throw DomainError("v_threshold: index not located within scan range");
  return out;
}

Interval sigma_bound_for_v(int N, const Interval& m, const Interval& M, const Interval& C,
                           int v) {
  Interval first = Interval(static_cast<double>(N - v)) / pow_int(m, 2);
  Interval second = Interval(static_cast<double>(v - 1)) / pow_int(M, 2);
  Interval third = pow_int(pow_int(m, N - v) * pow_int(M, v - 1) / C, 2);
  return first + second + third;
}

Interval sigma_bound(const BoundParams& p) {
  if (p.N < 1) throw DomainError("sigma_bound: N must be positive");
  if (p.m.lo <= 0.0 || p.M.lo <= 0.0 || p.C.lo <= 0.0)
    throw DomainError("sigma_bound: parameters must be positive");
  if (p.m.lo > p.M.hi) throw DomainError("sigma_bound: m > M");
  Interval mN = pow_int(p.m, p.N);
  Interval MN = pow_int(p.M, p.N);
  if (mN.lo > p.C.hi)
    throw InfeasibleBound("sigma_bound: m^N > C");
  if (p.C.lo > MN.hi)
    throw InfeasibleBound("sigma_bound: C > M^N");
  int vlo, vhi;
  if (p.v) {
    vlo = vhi = *p.v;
  } else {
    VCandidates cand = v_threshold(p.N, p.m, p.M, p.C);
    vlo = cand.lo;
    vhi = cand.hi;
  }
  Interval out = sigma_bound_for_v(p.N, p.m, p.M, p.C, vlo);
  for (int v = vlo + 1; v <= vhi; ++v)
    out = hull(out, sigma_bound_for_v(p.N, p.m, p.M, p.C, v));
  return out;
}

VCandidates v_star(const Interval& a) {
  if (a.lo < 0.845 || a.hi > 1.0) throw DomainError("v_star: a must lie in [0.845, 1]");
  const ConstantTable& t = ConstantTable::get();
  const Interval& s = t.two_sin_pi_9;
  Interval one_a = Interval(1.0) + a;
  Interval num = Interval(7.0) * log(one_a / s);
  Interval nine_r8 = pow(Interval(9.0), Rational(1, 8));
  Interval den = log(pow(one_a, Rational(15, 8)) / (nine_r8 * pow(s, Rational(7, 8))));
  if (den.lo <= 0.0) throw DomainError("v_star: degenerate denominator");
  Interval ratio = num / den;
  return VCandidates{static_cast<int>(std::ceil(ratio.lo)), static_cast<int>(std::ceil(ratio.hi))};
}

Interval u_star_for_v(const Interval& a, int v, const Params& params) {
  const ConstantTable& t = ConstantTable::get();
  Interval one_a = Interval(1.0) + a;
  Interval b1 = t.two_sin_pi_9 / one_a;           // < 1
  Interval b2 = one_a / pow(Interval(9.0), Rational(1, 8));
  Interval first = Interval(static_cast<double>(8 - v)) * pow(b1, Rational(-7, 4));
  Interval second = Interval(static_cast<double>(v - 1)) * pow_int(b2, -2);
  Interval third = pow_int(pow(b1, Rational(7 * (8 - v), 8)) * pow_int(b2, v - 1), 2);
  Interval out = first + second + third;
  if (!params.ustar_scale.is_one()) out = out * Interval::enclose(params.ustar_scale);
  return out;
}

Interval u_star(const Interval& a, const Params& params) {
  VCandidates cand = v_star(a);
  Interval out = u_star_for_v(a, cand.lo, params);
  for (int v = cand.lo + 1; v <= cand.hi; ++v) out = hull(out, u_star_for_v(a, v, params));
  return out;
}

Feasibility case_feasibility(const CaseSpec& cs, const Interval& a, const Interval& q) {
  Interval t = q * pow_int(Interval(1.0) + a, cs.n2);
  if (t.lo >= 9.0) return Feasibility::Yes;
  if (t.hi < 9.0) return Feasibility::No;
  return Feasibility::Unknown;
}

UCaseResult u_case(const CaseSpec& cs, const Interval& a, const Interval& q,
                   const Params& params) {
  (void)params;  // reserved for the mutation hook; U is mutation-free today
  const ConstantTable& t = ConstantTable::get();
  UCaseResult out;
  Interval qq = cs.has_q() ? q : Interval(1.0);
  if (qq.lo <= 0.0 || qq.hi > 1.0) throw DomainError("u_case: q must lie in (0,1]");

  switch (cs.id) {
    case CaseId::I:
      out.UA = Interval(0.0);
      break;
    case CaseId::II:
      out.UA = pow_int(qq, -2);
      break;
    default: {
      // product floor over the r_k < 1 block: m = 2 sin(pi/9), M = 1, C = q
      out.v1 = v_threshold(cs.n1, t.two_sin_pi_9, kOne, qq, -8, 16);
      out.UA = sigma_bound_for_v(cs.n1, t.two_sin_pi_9, kOne, qq, out.v1.lo);
      for (int v = out.v1.lo + 1; v <= out.v1.hi; ++v)
        out.UA = hull(out.UA, sigma_bound_for_v(cs.n1, t.two_sin_pi_9, kOne, qq, v));
      break;
    }
  }

  // r_k >= 1 block: m = 1, M = 1+a, C = 9/q; v2 capped at n2, which every
  // feasible point satisfies (q (1+a)^{n2} >= 9).
  Interval C = Interval(9.0) / qq;
  Interval M = Interval(1.0) + a;
  out.v2 = v_threshold(cs.n2, kOne, M, C, 0, 64);
  if (out.v2.hi > cs.n2) out.v2.hi = cs.n2;
  if (out.v2.lo > out.v2.hi) out.v2.lo = out.v2.hi;
  out.UB = sigma_bound_for_v(cs.n2, kOne, M, C, out.v2.lo);
  for (int v = out.v2.lo + 1; v <= out.v2.hi; ++v)
    out.UB = hull(out.UB, sigma_bound_for_v(cs.n2, kOne, M, C, v));

  out.U = out.UA + out.UB;
  return out;
}

Interval contradiction_lhs(const Interval& U, const Interval& a) {
  static const Rational kCap(64, 9);
  if (!(U.lo > 4.0)) throw DomainError("contradiction_lhs: U touches 4");
  if (!(Rational::from_double(U.hi) < kCap))
    throw DomainError("contradiction_lhs: U touches 64/9");
  if (!(a.hi < 1.0)) throw DomainError("contradiction_lhs: a touches 1");
  Interval t1 = Interval(4.0) * U / (U - 4.0);
  Interval t2 = Interval(8.0) - U * Interval(1.125);
  Interval d3 = pow_int(one_minus_a_sq(a), 3);
  return t1 * nth_root(t2 / d3, 4);
}

double contradiction_lhs_lower_on_strip(const Interval& U, const Interval& a) {
  static const Rational kCap(64, 9);
  if (!(U.lo > 4.0) || !(Rational::from_double(U.hi) < kCap))
    throw DomainError("contradiction_lhs_lower_on_strip: U outside (4, 64/9)");
  // For every a' in [a.lo, 1): (1-a'^2) <= 1 - a.lo^2, and the lhs grows as
  // (1-a'^2)^(-3/4), so bounding the denominator from above bounds the lhs
  // from below uniformly on the half-open strip.
  Interval t1 = Interval(4.0) * U / (U - 4.0);
  Interval t2 = Interval(8.0) - U * Interval(1.125);
  Interval d_hi(one_minus_a_sq(Interval(a.lo)).hi);
  Interval ratio = t2 / pow_int(d_hi, 3);
  return (t1 * nth_root(ratio, 4)).lo;
}

Interval gamma0_lower_bound(const Interval& a, const Interval& lambda) {
  Interval g = lambda * (lambda + 2.0);
  return Interval(1.0) / sqrt(Interval(1.0) + g - pow_int(a, 2) * g);
}

Interval mobius_threshold(const Interval& a) {
  return Interval(1.0) / disk_poly(a);
}

Interval delta_upper_bound(const Interval& a, const Interval& sigma) {
  return Interval(-8.0) / a + Interval(8.0) * a +
         (Interval(9.0) / (Interval(8.0) * a)) * one_minus_a_sq(a) * sigma;
}

Interval critpoint_product_factor(const PolyConfig& config, const DerivedQuantities& d) {
  Interval a(config.a);
  Interval sum(0.0);
  for (std::size_t k = 0; k < 8; ++k) {
    Interval zk2(std::norm(config.zeros[k]));
    Interval rk(d.r[k]);
    sum = sum + (zk2 - pow_int(a, 2)) / pow_int(rk, 2);
  }
  return pow_int(pow_int(a, 2) - 1.0 + Interval::enclose(Rational(1, 4)) * sum, 4);
}

Interval gamma_product_bound(const PolyConfig& config, const DerivedQuantities& d) {
  Interval prod(1.0);
  for (std::size_t k = 0; k < 8; ++k) prod = prod * Interval(std::abs(d.w[k]));
  return prod / const_2_1(Interval(config.a));
}

Interval normalized_inverse_square_sum(const DerivedQuantities& d) {
  Interval sum(0.0);
  for (std::size_t k = 0; k < 8; ++k) sum = sum + pow_int(Interval(d.Rk_norm[k]), -2);
  return sum;
}

ProductIdentity sin_product_identity(const Params& params) {
  const ConstantTable& t = ConstantTable::get();
  ProductIdentity out;
  out.nine_over_crit = Interval(9.0) / t.crit_product;
  out.two_sin_sq = params.two_sin_sq_override ? Interval(*params.two_sin_sq_override)
                                              : t.two_sin_pi_9_sq;
  out.difference = out.nine_over_crit - out.two_sin_sq;
  const double tol = std::ldexp(1.0, -40);
  out.holds = out.nine_over_crit.intersects(out.two_sin_sq) && out.difference.hi <= tol &&
              out.difference.lo >= -tol;
  return out;
}

ExprPtr const21_expr() {
  ExprPtr a = Expr::variable(0);
  ExprPtr a2 = Expr::pow_int(a, 2);
  return Expr::constant(9) - Expr::constant(4) * a2 / (Expr::constant(1) + a2) -
         Expr::constant(6) * a;
}

ExprPtr threshold_expr(const Params& params) {
  ExprPtr a = Expr::variable(0);
  ExprPtr a2 = Expr::pow_int(a, 2);
  ExprPtr c21 = Expr::constant(9) - Expr::constant(4) * a2 / (Expr::constant(1) + a2) -
                Expr::constant(6) * a;
  ExprPtr R = Expr::constant(params.R);
  ExprPtr t1 = c21 * (a * R + Expr::constant(1)) / (R + a);
  ExprPtr w = Expr::root(Expr::constant(1) - a * R, 9);
  ExprPtr lam = Expr::constant(1) - w;
  ExprPtr g = lam * (lam + Expr::constant(2));
  ExprPtr s = Expr::constant(1) + (Expr::constant(1) - a2) * g;
  ExprPtr p = Expr::pow_int(Expr::constant(1) + a - a2, params.p_exp);
  return t1 - Expr::sqrt(s) * p;
}

ExprPtr y_literal_expr() {
  ExprPtr x = Expr::variable(0);
  ExprPtr a = Expr::variable(1);
  ExprPtr coeff = Expr::constant(-7, 4) * Expr::pow_rat(x, Rational(5, 4)) -
                  Expr::constant(1, 4) * Expr::pow_rat(x, Rational(-3, 4)) +
                  Expr::constant(2) * x;
  return a * coeff + Expr::constant(1, 4) * Expr::pow_rat(x, Rational(9, 4)) -
         Expr::constant(9, 4) * Expr::pow_rat(x, Rational(1, 4)) + Expr::constant(2);
}

namespace {
nlohmann::json interval_json(const Interval& v) {
  return nlohmann::json{{"lo", v.lo}, {"hi", v.hi}};
}
}  // namespace

std::string poly_report_json(const PolyConfig& config, const Params& params,
                             std::uint64_t seed) {
  DerivedQuantities d = derive(config, seed);
  IdentityResiduals res = identity_residuals(config, seed);
  nlohmann::json j;
  j["a"] = config.a;
  j["r"] = d.r;
  j["rho"] = d.rho;
  j["I_a"] = d.I_a;
  j["sigma"] = d.sigma;
  j["delta"] = d.delta;
  j["q"] = d.q;
  j["n1"] = d.n1;
  j["n2"] = d.n2;
  j["Rk_norm"] = d.Rk_norm;
  j["root_residual"] = d.root_residual;
  j["boundary_ambiguous"] = d.boundary_ambiguous;
  nlohmann::json wlist = nlohmann::json::array(), glist = nlohmann::json::array();
  for (std::size_t k = 0; k < 8; ++k) {
    wlist.push_back({d.w[k].real(), d.w[k].imag()});
    glist.push_back({d.gamma[k].real(), d.gamma[k].imag()});
  }
  j["w"] = wlist;
  j["gamma"] = glist;
  j["residuals"] = {{"product_identity", res.product_identity},
                    {"log_derivative", res.log_derivative}};

  Interval a(config.a);
  nlohmann::json diag;
  diag["mobius_threshold"] = interval_json(mobius_threshold(a));
  diag["delta_upper_bound"] = interval_json(delta_upper_bound(a, Interval(d.sigma)));
  diag["critpoint_product_factor"] = interval_json(critpoint_product_factor(config, d));
  diag["gamma_product_bound"] = interval_json(gamma_product_bound(config, d));
  Interval inv_sq = normalized_inverse_square_sum(d);
  diag["normalized_inverse_square_sum"] = interval_json(inv_sq);
  LambdaResult lam = lambda_of(a, Interval::enclose(params.R));
  diag["lambda"] = interval_json(lam.lambda);
  diag["gamma0_lower_bound"] = interval_json(gamma0_lower_bound(a, lam.lambda));
  // extremal-hypothesis comparison is observational: it only applies when
  // rho_1 > 1, which random configs essentially never satisfy
  if (config.a >= 0.845 && config.a < 1.0) {
    Interval us = u_star(a, params);
    diag["u_star"] = interval_json(us);
    diag["inverse_square_sum_le_u_star"] = inv_sq.hi <= us.lo;
  }
  // lower (1.3) bound 2 rho_1 sin(pi/9) is a cited extremal property, reported
  // as a flag, never asserted
  const ConstantTable& t = ConstantTable::get();
  double lower13 = 2.0 * d.I_a * t.sin_pi_k_9[1].lo;
  diag["extremal_lower_bound_13"] = lower13;
  diag["extremal_lower_bound_13_holds"] = lower13 <= d.r[0] + 1e-12;
  j["diagnostics"] = diag;
  j["sendov_monitor"] = {{"I_a", d.I_a}, {"violation", d.I_a > 1.0 + 1e-8}};
  return j.dump(2);
}

}  // namespace sendov
