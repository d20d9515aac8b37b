#pragma once

// Real-argument special functions used by the energy expansions.

#include <vector>

namespace greedy_riesz::special {

enum class ZetaBackend {
  alternating,      ///< accelerated alternating eta series (default)
  euler_maclaurin,  ///< Euler-Maclaurin summation, used for cross-checks
};

/// Riemann zeta on |s| <= 200, s != 1. Throws PoleError near s = 1.
double zeta(double s, ZetaBackend backend = ZetaBackend::alternating);

/// psi = Gamma'/Gamma for x > 0.
double digamma(double x);

/// v(s) = 2^{-s} Gamma((1-s)/2) / (sqrt(pi) Gamma(1 - s/2)); equals the
/// s-energy of normalized arclength for -2 < s < 1. Pole at odd positive s.
double v_s(double s);

/// Maclaurin coefficients of sinc^{-s}(z) = sum_n beta_n(s) z^{2n}.
struct BetaTable {
  double s = 0.0;
  std::vector<double> coeffs;

  [[nodiscard]] double operator[](std::size_t n) const { return coeffs.at(n); }
  [[nodiscard]] std::size_t size() const { return coeffs.size(); }
  /// Partial sum over the first `terms` coefficients (all when terms < 0).
  [[nodiscard]] double evaluate(double z, int terms = -1) const;
};

/// beta_0(s), ..., beta_J(s); J <= 64.
BetaTable beta_coeffs(double s, int j_max, ZetaBackend backend = ZetaBackend::alternating);

/// d/ds beta_M(s) at s = 2M + 1.
double beta_prime(int m, ZetaBackend backend = ZetaBackend::alternating);

/// C_M = beta'_M(2M+1)/beta_M(2M+1) + psi(M+1)/2 - psi(M+1/2)/2.
double c_constant(int m, ZetaBackend backend = ZetaBackend::alternating);

/// q_M = (1/2)_M / (pi 2^{2M} M!), the N^2 log N coefficient for s = 2M + 1.
double q_coefficient(int m);

/// Gamma(a) / Gamma(b) with 1/Gamma(b) = 0 at non-positive integers b.
double gamma_ratio(double a, double b);

}  // namespace greedy_riesz::special
