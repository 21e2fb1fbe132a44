#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sendov9/poly.hpp"
#include "testutil.hpp"

using namespace sendov;
using testutil::u01;

namespace {

PolyConfig z9_config() {
  return PolyConfig::from_json_text(testutil::read_file(testutil::source_path("data/z9.json")));
}

PolyConfig random_config(std::mt19937_64& rng) {
  const double tau = 6.283185307179586;
  PolyConfig cfg;
  cfg.a = 0.05 + 0.9 * u01(rng);
  for (auto& z : cfg.zeros) {
    double r = std::sqrt(u01(rng));
    double th = tau * u01(rng);
    z = Complex(r * std::cos(th), r * std::sin(th));
    if (std::abs(z) < 1e-6) z = Complex(0.3, 0.1);
    if (std::abs(z - Complex(cfg.a, 0.0)) < 1e-6) z += Complex(0.05, 0.05);
  }
  return cfg;
}

// 2D cross product sign for the convex-hull membership oracle
double cross(Complex o, Complex p, Complex q) {
  return (p.real() - o.real()) * (q.imag() - o.imag()) -
         (p.imag() - o.imag()) * (q.real() - o.real());
}

// Gauss-Lucas oracle: point within dist of the convex hull of pts
bool in_hull(const std::vector<Complex>& pts_in, Complex z, double tol) {
  std::vector<Complex> pts = pts_in;
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> hull;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t start = hull.size();
    for (const Complex& p : pts) {
      while (hull.size() >= start + 2 &&
             cross(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.size() < 3) {
    // degenerate hull: fall back to distance from the segment set
    double best = 1e300;
    for (const Complex& p : pts) best = std::min(best, std::abs(z - p));
    return best <= 1.0 + tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    Complex a = hull[i], b = hull[(i + 1) % hull.size()];
    double c = cross(a, b, z);
    double len = std::abs(b - a);
    if (len > 0 && c < -tol * len) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("z^9 - 1/2 fixture: eightfold critical point at the origin") {
  PolyConfig cfg = z9_config();
  CriticalPoints cp = critical_points(cfg);
  CHECK(cp.residual <= 1e-10);
  for (const Complex& z : cp.zeta) CHECK(std::abs(z) <= 1e-6);

  DerivedQuantities d = derive(cfg);
  CHECK(d.I_a == doctest::Approx(std::pow(0.5, 1.0 / 9.0)).epsilon(1e-9));
  CHECK(d.I_a == doctest::Approx(0.92587471228729).epsilon(1e-10));

  IdentityResiduals res = identity_residuals(cfg);
  CHECK(res.product_identity <= 1e-10);
  CHECK(res.log_derivative <= 1e-10);
}

TEST_CASE("degree-2 regression fixture: z^2 - 1") {
  // p' = 2z, critical point 0; prod r_k = 2 = n prod rho_j exactly
  double residual = 0.0;
  std::vector<Complex> roots = aberth_roots({Complex(0.0), Complex(2.0)}, &residual);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0]) <= 1e-14);
  CHECK(residual <= 1e-14);
  double prod_r = std::abs(Complex(1.0) - Complex(-1.0, 0.0));
  double prod_rho = std::abs(Complex(1.0) - roots[0]);
  CHECK(prod_r == doctest::Approx(2.0 * prod_rho).epsilon(1e-14));
}

TEST_CASE("critical points satisfy Gauss-Lucas on random configs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    PolyConfig cfg = random_config(rng);
    CriticalPoints cp = critical_points(cfg, static_cast<std::uint64_t>(trial));
    std::vector<Complex> zeros(cfg.zeros.begin(), cfg.zeros.end());
    zeros.push_back(Complex(cfg.a, 0.0));
    for (const Complex& zeta : cp.zeta) CHECK(in_hull(zeros, zeta, 1e-8));
  }
}

TEST_CASE("upper distance bound r_k <= 1 + a holds unconditionally") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    PolyConfig cfg = random_config(rng);
    DerivedQuantities d = derive(cfg, static_cast<std::uint64_t>(trial));
    for (double rk : d.r) CHECK(rk <= 1.0 + cfg.a + 1e-12);
    CHECK(d.n1 + d.n2 == 8);
    if (d.n1 >= 1) CHECK(d.q < 1.0);
    if (d.n1 == 0) CHECK(d.q == 1.0);
    CHECK(std::is_sorted(d.r.begin(), d.r.end()));
    CHECK(std::is_sorted(d.rho.begin(), d.rho.end()));
    double prod_Rk = 1.0;
    for (double v : d.Rk_norm) prod_Rk *= v;
    CHECK(std::fabs(prod_Rk - 1.0) <= 1e-10);
  }
}

TEST_CASE("zero relabeling leaves the sorted distances unchanged") {
  std::mt19937_64 rng(13);
  PolyConfig cfg = random_config(rng);
  DerivedQuantities base = derive(cfg);
  PolyConfig shuffled = cfg;
  std::shuffle(shuffled.zeros.begin(), shuffled.zeros.end(), rng);
  DerivedQuantities perm = derive(shuffled);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(base.r[k] == doctest::Approx(perm.r[k]).epsilon(1e-12));
    CHECK(base.rho[k] == doctest::Approx(perm.rho[k]).epsilon(1e-9));
  }
  CHECK(base.n1 == perm.n1);
  CHECK(base.sigma == doctest::Approx(perm.sigma).epsilon(1e-12));
}

TEST_CASE("moebius transform basics") {
  CHECK(std::abs(mobius(Complex(0.7, 0.0), 0.7)) <= 1e-15);
  CHECK(mobius(Complex(0.0, 0.0), 0.9).real() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(std::abs(mobius(Complex(0.0, 0.0), 0.9).imag()) <= 1e-15);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    double th = 6.283185307179586 * u01(rng);
    double a = 0.05 + 0.9 * u01(rng);
    Complex z(std::cos(th), std::sin(th));
    CHECK(std::fabs(std::abs(mobius(z, a)) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(mobius(Complex(1.0 / 0.9, 0.0), 0.9), PoleError);
}

TEST_CASE("moebius threshold implication (spot run)") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    double a = 0.5 + 0.4999 * u01(rng);
    double r = std::sqrt(u01(rng));
    double th = 6.283185307179586 * u01(rng);
    Complex zeta(r * std::cos(th), r * std::sin(th));
    double threshold = 1.0 / (1.0 + a - a * a);
    if (std::abs(mobius(zeta, a)) <= threshold)
      CHECK(std::abs(zeta - Complex(a, 0.0)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("identity residuals small on random configs") {
  std::mt19937_64 rng(57);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    PolyConfig cfg = random_config(rng);
    IdentityResiduals res = identity_residuals(cfg, static_cast<std::uint64_t>(trial));
    worst = std::max(worst, std::max(res.product_identity, res.log_derivative));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("conditioning stress: a zero within 1e-3 of a") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    PolyConfig cfg = random_config(rng);
    cfg.a = 0.5;
    cfg.zeros[0] = Complex(cfg.a + 1e-3, 0.0);
    IdentityResiduals res = identity_residuals(cfg, static_cast<std::uint64_t>(trial));
    CHECK(res.product_identity <= 1e-6);
    CHECK(res.log_derivative <= 1e-6);
  }
}

TEST_CASE("sendov monitor: no counterexamples in random sampling") {
  std::mt19937_64 rng(19);
  double max_Ia = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    PolyConfig cfg = random_config(rng);
    DerivedQuantities d = derive(cfg, static_cast<std::uint64_t>(trial));
    max_Ia = std::max(max_Ia, d.I_a);
    CHECK(d.I_a <= 1.0 + 1e-8);
  }
  CHECK(max_Ia > 0.1);  // the monitor is actually exercising something
}

TEST_CASE("boundary-ambiguous classification is flagged") {
  PolyConfig cfg;
  cfg.a = 0.5;
  cfg.zeros = {Complex(-0.5, 0.0), Complex(0.3, 0.4), Complex(0.3, -0.4),
               Complex(-0.2, 0.6), Complex(-0.2, -0.6), Complex(0.8, 0.3),
               Complex(0.8, -0.3), Complex(0.1, 0.9)};
  // r for the first zero is exactly 1
  DerivedQuantities d = derive(cfg);
  CHECK(d.boundary_ambiguous);
}

TEST_CASE("config validation rejects the excluded inputs") {
  PolyConfig cfg = z9_config();
  PolyConfig bad = cfg;
  bad.a = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.a = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.zeros[3] = Complex(1.5, 0.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.zeros[0] = Complex(0.0, 0.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.zeros[0] = Complex(bad.a, 0.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("config JSON round trip") {
  PolyConfig cfg = z9_config();
  PolyConfig back = PolyConfig::from_json_text(cfg.to_json_text());
  CHECK(back.a == cfg.a);
  for (std::size_t k = 0; k < 8; ++k) CHECK(back.zeros[k] == cfg.zeros[k]);
  CHECK_THROWS(PolyConfig::from_json_text("{\"a\":0.5,\"zeros\":[[0.1,0.2]]}"));
}
