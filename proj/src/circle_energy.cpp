#include "greedy_riesz/circle_energy.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "greedy_riesz/binary_core.hpp"
#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/numeric.hpp"

namespace greedy_riesz::energy {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_s(const EnergyParams& params) {
  if (!(params.s > -2.0)) throw DomainError("greedy energy requires s > -2");
}

double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Orientation: lower is better for s >= 0, higher is better for s < 0.
struct Orientation {
  bool maximize;
  [[nodiscard]] double score(double u) const { return maximize ? -u : u; }
};

double potential_at(const std::vector<double>& angles, double phi, const EnergyParams& params) {
  CompensatedSum acc;
  for (double a : angles) acc += params.kernel(chord(phi, a));
  return acc.value();
}

}  // namespace

double EnergyParams::kernel(double r) const {
  if (log_case) return -std::log(r);
  return std::pow(r, -s);
}

double n_log_n(double n) { return n * std::log(n); }

double roots_energy(std::uint64_t n, const EnergyParams& params) {
  if (n == 0) throw DomainError("roots_energy: N must be positive");
  if (n == 1) return 0.0;
  const auto nd = static_cast<double>(n);
  if (params.log_case) return -n_log_n(nd);
  // sum_{k=1}^{N-1} sin(pi k/N)^{-s}, folded about k = N/2
  CompensatedSum acc;
  const std::uint64_t half = (n - 1) / 2;
  for (std::uint64_t k = half; k >= 1; --k) {
    const double t = std::sin(kPi * static_cast<double>(k) / nd);
    acc += 2.0 * std::pow(t, -params.s);
  }
  if (n % 2 == 0) acc += 1.0;
  return std::exp2(-params.s) * nd * acc.value();
}

EnergyEvaluator::EnergyEvaluator(const EnergyParams& params) : params_(params) { require_s(params); }

double EnergyEvaluator::roots_pow2(int n) {
  if (n < 0 || n > 63) throw DomainError("roots_pow2: exponent out of range");
  if (!cached_[n]) {
    cache_[n] = roots_energy(std::uint64_t{1} << n, params_);
    cached_[n] = true;
  }
  return cache_[n];
}

double EnergyEvaluator::greedy(std::uint64_t n) {
  if (n == 0) throw DomainError("greedy_energy: N must be positive");
  if (n == 1) return 0.0;
  const auto d = binary::decompose(n);
  const auto& e = d.exponents;
  const std::size_t p = e.size();
  CompensatedSum acc;
  for (std::size_t k = 0; k < p; ++k) {
    // a_k = sum_{t>k} 2^{n_t - n_k} = (N mod 2^{n_k}) / 2^{n_k}, exact in binary
    const std::uint64_t low = n & ((std::uint64_t{1} << e[k]) - 1);
    const double a = std::ldexp(static_cast<double>(low), -e[k]);
    if (k + 1 < p) acc += a * roots_pow2(e[k] + 1);
    acc += (1.0 - 2.0 * a) * roots_pow2(e[k]);
  }
  return acc.value();
}

double EnergyEvaluator::extremal_potential(std::uint64_t n) {
  // Equal to (E(N+1) - E(N)) / 2. Each block of 2^{n_k} rotated roots sees
  // a_N at a midpoint, so its share is the potential of 2^{n_k} roots there.
  if (n == 0) throw DomainError("extremal_potential: N must be positive");
  CompensatedSum acc;
  for (int e : binary::decompose(n).exponents)
    acc += std::ldexp(roots_pow2(e + 1), -(e + 1)) - std::ldexp(roots_pow2(e), -e);
  return acc.value();
}

double greedy_energy(std::uint64_t n, const EnergyParams& params) {
  EnergyEvaluator ev(params);
  return ev.greedy(n);
}

double extremal_potential(std::uint64_t n, const EnergyParams& params) {
  EnergyEvaluator ev(params);
  return ev.extremal_potential(n);
}

double pairwise_energy(const CircleConfig& config, const EnergyParams& params) {
  CompensatedSum acc;
  const auto& a = config.angles;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) acc += params.kernel(chord(a[i], a[j]));
  return 2.0 * acc.value();
}

OracleResult greedy_oracle(int n, const EnergyParams& params, int grid_bits, double refine_tol,
                           unsigned jobs) {
  require_s(params);
  if (n < 2 || n > 4096) throw DomainError("greedy_oracle: N must lie in [2, 4096]");
  const int min_bits = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 4;
  if (grid_bits < min_bits || grid_bits > 26)
    throw DomainError("greedy_oracle: grid_bits out of range");
  if (!(refine_tol > 0.0)) throw DomainError("greedy_oracle: refine_tol must be positive");

  const std::size_t grid = std::size_t{1} << grid_bits;
  const double step = kTwoPi / static_cast<double>(grid);
  const Orientation orient{params.s < 0.0};

  std::vector<double> pot(grid, 0.0);
  OracleResult res;
  auto& angles = res.config.angles;
  angles.push_back(0.0);

  auto add_point = [&](double a) {
    parallel_chunks(grid, jobs, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) pot[i] += params.kernel(chord(step * i, a));
    });
  };
  add_point(0.0);

  while (static_cast<int>(angles.size()) < n) {
    // Smallest-angle extremizer; later candidates must beat it by a relative margin.
    std::size_t best = grid;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
      if (!std::isfinite(pot[i])) continue;
      const double sc = orient.score(pot[i]);
      if (best == grid || sc < best_score - 1e-12 * std::max(1.0, std::abs(best_score))) {
        best = i;
        best_score = sc;
      }
    }
    if (best == grid) throw ConstructionError("greedy_oracle: every candidate is coincident");

    // Golden-section refinement on [phi - step, phi + step].
    const double phi0 = step * static_cast<double>(best);
    auto f = [&](double phi) {
      const double u = potential_at(angles, phi, params);
      return std::isfinite(u) ? orient.score(u) : std::numeric_limits<double>::infinity();
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = phi0 - step;
    double hi = phi0 + step;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > refine_tol) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = f(x2);
      }
    }
    const double refined = 0.5 * (lo + hi);
    const double chosen = f(refined) < f(phi0) ? wrap_angle(refined) : phi0;
    angles.push_back(chosen);
    add_point(chosen);
  }

  res.energy = pairwise_energy(res.config, params);
  return res;
}

void write_config_csv(std::ostream& out, const CircleConfig& config) {
  const auto old_prec = out.precision();
  out << std::setprecision(17);
  out << "angle\n";
  for (double a : config.angles) out << a << '\n';
  out.precision(old_prec);
}

}  // namespace greedy_riesz::energy
