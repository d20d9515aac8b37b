#include "greedy_riesz/special_fn.hpp"

#include <array>
#include <cmath>

#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/numeric.hpp"

namespace greedy_riesz::special {

namespace {

constexpr double kPoleGuard = 1e-9;
constexpr int kBorweinTerms = 48;

// B_2, B_4, ..., B_26
constexpr std::array<double, 13> kBernoulli = {
    1.0 / 6.0,           -1.0 / 30.0,          1.0 / 42.0,     -1.0 / 30.0,
    5.0 / 66.0,          -691.0 / 2730.0,      7.0 / 6.0,      -3617.0 / 510.0,
    43867.0 / 798.0,     -174611.0 / 330.0,    854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0,
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Weights (d_n - d_k)/d_n of the Borwein acceleration for the alternating series.
const std::array<double, kBorweinTerms>& borwein_weights() {
  static const std::array<double, kBorweinTerms> w = [] {
    std::array<long double, kBorweinTerms + 1> d{};
    const int n = kBorweinTerms;
    long double term = 1.0L / n;  // i = 0 term of sum (n+i-1)! 4^i / ((n-i)! (2i)!) scaled by n!/n
    long double acc = term;
    d[0] = acc;
    for (int i = 1; i <= n; ++i) {
      term *= static_cast<long double>(n + i - 1) * (n - i + 1) * 4.0L /
              (static_cast<long double>(2 * i - 1) * (2 * i));
      acc += term;
      d[i] = acc;
    }
    std::array<double, kBorweinTerms> out{};
    for (int k = 0; k < n; ++k) out[k] = static_cast<double>((d[n] - d[k]) / d[n]);
    return out;
  }();
  return w;
}

// Dirichlet eta function for s > 0.
double eta_alternating(double s) {
  const auto& w = borwein_weights();
  CompensatedSum acc;
  for (int k = 0; k < kBorweinTerms; ++k) {
    const double t = w[k] * std::pow(static_cast<double>(k + 1), -s);
    acc += (k % 2 == 0) ? t : -t;
  }
  return acc.value();
}

double zeta_positive_alternating(double s) {
  // zeta = eta / (1 - 2^{1-s})
  return eta_alternating(s) / -std::expm1((1.0 - s) * kLn2);
}

double zeta_positive_euler_maclaurin(double s) {
  constexpr int n = 24;
  CompensatedSum acc;
  for (int k = n - 1; k >= 1; --k) acc += std::pow(static_cast<double>(k), -s);
  const double nn = n;
  acc += std::pow(nn, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow(nn, -s);
  // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  double rising = s;                       // s (s+1) ... (s+2k-2)
  double fact = 2.0;                       // (2k)!
  double npow = std::pow(nn, -s - 1.0);    // N^{-s-2k+1}
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    acc += kBernoulli[k - 1] / fact * rising * npow;
    const double kk = static_cast<double>(k);
    rising *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk);
    fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
    npow /= nn * nn;
  }
  return acc.value();
}

double zeta_positive(double s, ZetaBackend backend) {
  if (s > 60.0) {
    // 1 + 2^{-s} + 3^{-s} + ... converges to full precision within a few terms
    CompensatedSum acc;
    for (int k = 8; k >= 2; --k) acc += std::pow(static_cast<double>(k), -s);
    acc += 1.0;
    return acc.value();
  }
  return backend == ZetaBackend::alternating ? zeta_positive_alternating(s)
                                             : zeta_positive_euler_maclaurin(s);
}

}  // namespace

double gamma_ratio(double a, double b) {
  if (is_nonpositive_integer(b)) return 0.0;
  if (is_nonpositive_integer(a)) throw PoleError("gamma_ratio: Gamma pole in numerator");
  if (std::abs(a) < 170.0 && std::abs(b) < 170.0) return std::tgamma(a) / std::tgamma(b);
  auto gamma_sign = [](double x) {
    if (x > 0.0) return 1.0;
    return (static_cast<long long>(std::ceil(-x)) % 2 == 0) ? 1.0 : -1.0;
  };
  return gamma_sign(a) * gamma_sign(b) * std::exp(std::lgamma(a) - std::lgamma(b));
}

double zeta(double s, ZetaBackend backend) {
  if (!std::isfinite(s)) throw DomainError("zeta: non-finite argument");
  if (std::abs(s - 1.0) < kPoleGuard) throw PoleError("zeta: pole at s = 1");
  if (std::abs(s) > 200.0) throw DomainError("zeta: |s| > 200 unsupported");
  if (s == 0.0) return -0.5;
  if (s > 0.0) return zeta_positive(s, backend);
  // zeta(s) = 2 (2 pi)^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  const double sn = sin_pi(0.5 * s);
  if (sn == 0.0) return 0.0;
  const double z1 = zeta_positive(1.0 - s, backend);
  if (1.0 - s < 170.0)
    return 2.0 * std::pow(2.0 * kPi, s - 1.0) * sn * std::tgamma(1.0 - s) * z1;
  return 2.0 * sn * z1 * std::exp((s - 1.0) * std::log(2.0 * kPi) + std::lgamma(1.0 - s));
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: x must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double p = inv2;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * p;
    p *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

double v_s(double s) {
  if (!std::isfinite(s)) throw DomainError("v_s: non-finite argument");
  if (s > 0.0 && s == std::floor(s) && std::fmod(s, 2.0) == 1.0)
    throw PoleError("v_s: pole at odd positive integer");
  return std::exp2(-s) / std::sqrt(kPi) * gamma_ratio(0.5 * (1.0 - s), 1.0 - 0.5 * s);
}

double BetaTable::evaluate(double z, int terms) const {
  const std::size_t n =
      terms < 0 ? coeffs.size() : std::min(coeffs.size(), static_cast<std::size_t>(terms));
  const double w = z * z;
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) acc = acc * w + coeffs[k];
  return acc;
}

BetaTable beta_coeffs(double s, int j_max, ZetaBackend backend) {
  if (j_max < 0 || j_max > 64) throw DomainError("beta_coeffs: J must lie in [0, 64]");
  // sinc^{-s} = exp(s sum_k zeta(2k) w^k / k), w = z^2; exponential recurrence
  std::vector<double> zeta_even(static_cast<std::size_t>(j_max) + 1, 0.0);
  for (int k = 1; k <= j_max; ++k) zeta_even[k] = zeta(2.0 * k, backend);
  BetaTable t;
  t.s = s;
  t.coeffs.assign(static_cast<std::size_t>(j_max) + 1, 0.0);
  t.coeffs[0] = 1.0;
  for (int n = 1; n <= j_max; ++n) {
    CompensatedSum acc;
    for (int k = 1; k <= n; ++k) acc += zeta_even[k] * t.coeffs[n - k];
    t.coeffs[n] = s / n * acc.value();
  }
  return t;
}

double beta_prime(int m, ZetaBackend backend) {
  if (m < 0) throw DomainError("beta_prime: M must be non-negative");
  if (m == 0) return 0.0;
  const auto table = beta_coeffs(2.0 * m + 1.0, m, backend);
  CompensatedSum acc;
  for (int k = 0; k < m; ++k) acc += table[k] * zeta(2.0 * (m - k), backend) / (m - k);
  return acc.value();
}

double c_constant(int m, ZetaBackend backend) {
  if (m < 0) throw DomainError("c_constant: M must be non-negative");
  const auto table = beta_coeffs(2.0 * m + 1.0, m, backend);
  return beta_prime(m, backend) / table[m] + 0.5 * digamma(m + 1.0) - 0.5 * digamma(m + 0.5);
}

double q_coefficient(int m) {
  if (m < 0) throw DomainError("q_coefficient: M must be non-negative");
  // (1/2)_M / (2^{2M} M!) = prod_{i<M} (i + 1/2) / (4 (i+1))
  double q = 1.0 / kPi;
  for (int i = 0; i < m; ++i) q *= (i + 0.5) / (4.0 * (i + 1));
  return q;
}

}  // namespace greedy_riesz::special
