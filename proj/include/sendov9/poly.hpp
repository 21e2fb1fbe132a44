#ifndef SENDOV9_POLY_HPP
#define SENDOV9_POLY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sendov9/errors.hpp"

namespace sendov {

using Complex = std::complex<double>;

/// Monic degree-9 polynomial (z - a) * prod (z - z_k) with the distinguished
/// zero a in (0,1) and the other eight zeros in the closed unit disk.
struct PolyConfig {
  double a = 0.5;
  std::array<Complex, 8> zeros{};

  void validate() const;  // DomainError on violations
  static PolyConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct CriticalPoints {
  std::array<Complex, 8> zeta{};
  double residual = 0.0;  // max |p'(zeta_j)| / ||p'||_1
  int iterations = 0;
};

struct DerivedQuantities {
  std::array<double, 8> r{};        // |a - z_k|, ascending
  std::array<double, 8> rho{};      // |a - zeta_j|, ascending
  std::array<double, 8> Rk_norm{};  // r_k * (prod r_j)^(-1/8), ascending
  std::array<Complex, 8> w{};       // Moebius images of the zeros
  std::array<Complex, 8> gamma{};   // Moebius images of the critical points
  double I_a = 0.0;                 // rho_1
  double sigma = 0.0;               // sum 1/r_k^2
  double delta = 0.0;               // Re(1/a + sum 1/z_k)
  double q = 1.0;                   // prod over r_k < 1 (empty product = 1)
  double root_residual = 0.0;
  int n1 = 0;  // #{r_k < 1}
  int n2 = 0;  // #{r_k >= 1}
  bool boundary_ambiguous = false;  // some |r_k - 1| <= 1e-10
};

struct IdentityResiduals {
  double product_identity = 0.0;  // prod r_k vs 9 prod rho_j, relative
  double log_derivative = 0.0;    // p'(0)/p(0) vs -(1/a + sum 1/z_k), relative
};

/// All eight roots of p', located by seeded Aberth iteration.
/// Throws NonConvergence if the residual target 1e-10 is missed at the cap.
CriticalPoints critical_points(const PolyConfig& config, std::uint64_t seed = 0);

DerivedQuantities derive(const PolyConfig& config, std::uint64_t seed = 0);

/// w = (z - a)/(a z - 1); PoleError within 1e-14 of the pole.
Complex mobius(Complex z, double a);

IdentityResiduals identity_residuals(const PolyConfig& config, std::uint64_t seed = 0);

/// Degree-n simultaneous root finder on explicit coefficients (c[0] + c[1] z
/// + ...), used by the degree-9 path and by small regression fixtures.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs,
                                  double* residual_out = nullptr,
                                  std::uint64_t seed = 0, int max_iterations = 500);

/// Coefficients of (z - a) * prod (z - z_k), low degree first.
std::vector<Complex> poly_coefficients(const PolyConfig& config);
/// Coefficients of the derivative of a coefficient vector.
std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs);

}  // namespace sendov

#endif
