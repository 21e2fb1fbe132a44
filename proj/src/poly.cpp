#include "sendov9/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace sendov {

namespace {
constexpr double kExclusionTol = 1e-12;
constexpr double kBoundaryTol = 1e-10;
constexpr double kResidualTarget = 1e-10;

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}
}  // namespace

void PolyConfig::validate() const {
  if (!(a > 0.0) || !(a < 1.0))
    throw DomainError("PolyConfig: a must lie in (0,1)");
  for (const Complex& z : zeros) {
    double m = std::abs(z);
    if (m > 1.0 + kExclusionTol)
      throw DomainError("PolyConfig: zero outside the closed unit disk");
    if (m < kExclusionTol) throw DomainError("PolyConfig: zero at the origin");
    if (std::abs(z - Complex(a, 0.0)) < kExclusionTol)
      throw DomainError("PolyConfig: zero coincides with a");
  }
}

PolyConfig PolyConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PolyConfig cfg;
  cfg.a = j.at("a").get<double>();
  const auto& zs = j.at("zeros");
  if (zs.size() != 8) throw DomainError("PolyConfig: exactly 8 zeros expected");
  for (std::size_t k = 0; k < 8; ++k)
    cfg.zeros[k] = Complex(zs[k][0].get<double>(), zs[k][1].get<double>());
  cfg.validate();
  return cfg;
}

std::string PolyConfig::to_json_text() const {
  nlohmann::json j;
  j["a"] = a;
  nlohmann::json zs = nlohmann::json::array();
  for (const Complex& z : zeros) zs.push_back({z.real(), z.imag()});
  j["zeros"] = zs;
  return j.dump();
}

std::vector<Complex> poly_coefficients(const PolyConfig& config) {
  std::vector<Complex> c{Complex(-config.a, 0.0), Complex(1.0, 0.0)};
  for (const Complex& z : config.zeros) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= z * c[i];
    }
    c = std::move(next);
  }
  return c;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
  std::vector<Complex> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d[i - 1] = coeffs[i] * static_cast<double>(i);
  return d;
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs,
                                  double* residual_out, std::uint64_t seed,
                                  int max_iterations) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  std::vector<Complex> monic(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs.back();
  std::vector<Complex> deriv = poly_derivative(monic);

  // Fujiwara-style radius bound for the initial ring.
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double mag = std::abs(monic[n - 1 - k]);
    if (mag > 0.0) radius = std::max(radius, std::pow(mag, 1.0 / (k + 1)));
  }
  radius = std::clamp(2.0 * radius, 0.25, 8.0);

  // Deterministic ring start; the seed only rotates the ring so retries can
  // escape symmetric stalls.
  const double tau = 6.283185307179586;
  double offset = 0.35 + 0.1 * static_cast<double>(seed % 61);
  std::vector<Complex> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    double ang = tau * (static_cast<double>(j) + 0.5) / static_cast<double>(n) + offset;
    z[j] = radius * Complex(std::cos(ang), std::sin(ang));
  }

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Complex p = horner(monic, z[j]);
      Complex dp = horner(deriv, z[j]);
      Complex newton = (std::abs(dp) > 0.0) ? p / dp : Complex(0.0, 0.0);
      Complex repulse(0.0, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        Complex diff = z[j] - z[i];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
        repulse += Complex(1.0, 0.0) / diff;
      }
      Complex denom = Complex(1.0, 0.0) - newton * repulse;
      Complex w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[j] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[j])));
    }
    if (worst <= 1e-14) {
      ++iter;
      break;
    }
  }

  if (residual_out) {
    double norm1 = 0.0;
    for (const Complex& c : coeffs) norm1 += std::abs(c);
    double worst = 0.0;
    for (const Complex& root : z) worst = std::max(worst, std::abs(horner(coeffs, root)));
    *residual_out = worst / norm1;
  }
  return z;
}

CriticalPoints critical_points(const PolyConfig& config, std::uint64_t seed) {
  config.validate();
  std::vector<Complex> p = poly_coefficients(config);
  std::vector<Complex> dp = poly_derivative(p);

  CriticalPoints out;
  double residual = 0.0;
  std::vector<Complex> roots;
  std::uint64_t attempt_seed = seed;
  for (int attempt = 0; attempt < 3; ++attempt) {
    roots = aberth_roots(dp, &residual, attempt_seed, 500);
    if (residual <= kResidualTarget) break;
    attempt_seed += 17;
  }
  if (residual > kResidualTarget)
    throw NonConvergence("critical_points: residual " + std::to_string(residual) +
                         " above target after retries");
  std::sort(roots.begin(), roots.end(), [&](const Complex& x, const Complex& y) {
    double dx = std::abs(x - Complex(config.a, 0.0));
    double dy = std::abs(y - Complex(config.a, 0.0));
    if (dx != dy) return dx < dy;
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  for (std::size_t j = 0; j < 8; ++j) out.zeta[j] = roots[j];
  out.residual = residual;
  return out;
}

Complex mobius(Complex z, double a) {
  Complex denom = a * z - Complex(1.0, 0.0);
  if (std::abs(denom) < 1e-14) throw PoleError("mobius: a*z too close to 1");
  return (z - Complex(a, 0.0)) / denom;
}

DerivedQuantities derive(const PolyConfig& config, std::uint64_t seed) {
  CriticalPoints cp = critical_points(config, seed);
  DerivedQuantities d;
  for (std::size_t k = 0; k < 8; ++k) {
    d.r[k] = std::abs(Complex(config.a, 0.0) - config.zeros[k]);
    d.rho[k] = std::abs(Complex(config.a, 0.0) - cp.zeta[k]);
  }
  std::sort(d.r.begin(), d.r.end());
  std::sort(d.rho.begin(), d.rho.end());
  d.I_a = d.rho[0];
  d.root_residual = cp.residual;

  double prod_r = 1.0;
  for (double rk : d.r) {
    d.sigma += 1.0 / (rk * rk);
    prod_r *= rk;
    if (rk < 1.0) {
      ++d.n1;
      d.q *= rk;
    } else {
      ++d.n2;
    }
    if (std::fabs(rk - 1.0) <= kBoundaryTol) d.boundary_ambiguous = true;
  }

  Complex inv_sum(1.0 / config.a, 0.0);
  for (const Complex& z : config.zeros) inv_sum += Complex(1.0, 0.0) / z;
  d.delta = inv_sum.real();

  double geo = std::pow(prod_r, -1.0 / 8.0);
  for (std::size_t k = 0; k < 8; ++k) d.Rk_norm[k] = d.r[k] * geo;

  for (std::size_t k = 0; k < 8; ++k) {
    d.w[k] = mobius(config.zeros[k], config.a);
    d.gamma[k] = mobius(cp.zeta[k], config.a);
  }
  return d;
}

IdentityResiduals identity_residuals(const PolyConfig& config, std::uint64_t seed) {
  CriticalPoints cp = critical_points(config, seed);
  IdentityResiduals out;

  double prod_r = 1.0, prod_rho = 1.0;
  for (std::size_t k = 0; k < 8; ++k) {
    prod_r *= std::abs(Complex(config.a, 0.0) - config.zeros[k]);
    prod_rho *= std::abs(Complex(config.a, 0.0) - cp.zeta[k]);
  }
  double rhs = 9.0 * prod_rho;
  out.product_identity = std::fabs(prod_r - rhs) / std::max(rhs, 1e-300);

  std::vector<Complex> p = poly_coefficients(config);
  std::vector<Complex> dp = poly_derivative(p);
  Complex lhs = dp[0] / p[0];
  Complex inv_sum(1.0 / config.a, 0.0);
  for (const Complex& z : config.zeros) inv_sum += Complex(1.0, 0.0) / z;
  out.log_derivative = std::abs(lhs + inv_sum) / std::max(std::abs(inv_sum), 1e-300);
  return out;
}

}  // namespace sendov
