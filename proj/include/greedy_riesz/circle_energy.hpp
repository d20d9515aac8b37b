#pragma once

// Riesz s-energies on the unit circle: roots of unity, greedy sequences via
// the binary formula, and a brute-force greedy construction used as oracle.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace greedy_riesz::energy {

/// Kernel |z - w|^{-s}, or -log|z - w| when log_case.
struct EnergyParams {
  double s = 0.0;
  bool log_case = true;

  static EnergyParams for_s(double s) { return EnergyParams{s, s == 0.0}; }
  /// Kernel value at chord length r > 0.
  [[nodiscard]] double kernel(double r) const;
};

struct CircleConfig {
  std::vector<double> angles;  ///< radians in [0, 2 pi)
  [[nodiscard]] std::size_t size() const { return angles.size(); }
};

/// N log N, evaluated the same way everywhere so that s = 0 identities cancel exactly.
double n_log_n(double n);

/// L_s(N), the s-energy of the N-th roots of unity (L_s(1) = 0).
double roots_energy(std::uint64_t n, const EnergyParams& params);

/// Energy of N greedy points from the binary decomposition of N, with the
/// values L_s(2^n) cached. Not thread-safe; use one evaluator per thread.
class EnergyEvaluator {
 public:
  explicit EnergyEvaluator(const EnergyParams& params);

  [[nodiscard]] const EnergyParams& params() const { return params_; }
  /// L_s(2^n)
  double roots_pow2(int n);
  /// E_s(alpha_N)
  double greedy(std::uint64_t n);
  /// U_{N,s}(a_N) = (E(N+1) - E(N)) / 2
  double extremal_potential(std::uint64_t n);

 private:
  EnergyParams params_;
  std::array<double, 64> cache_{};
  std::array<bool, 64> cached_{};
};

/// E_s(alpha_{N,s}); s > -2.
double greedy_energy(std::uint64_t n, const EnergyParams& params);

/// U_{N,s}(a_N); s > -2.
double extremal_potential(std::uint64_t n, const EnergyParams& params);

/// Direct pairwise energy sum_{i != j} k(z_i, z_j).
double pairwise_energy(const CircleConfig& config, const EnergyParams& params);

struct OracleResult {
  CircleConfig config;
  double energy = 0.0;
};

/// Greedy construction from a_0 = 1: each new point extremizes the potential
/// (minimum for s >= 0, maximum for s < 0) over a 2^grid_bits grid, then is
/// refined by golden-section search to refine_tol in angle.
OracleResult greedy_oracle(int n, const EnergyParams& params, int grid_bits = 20,
                           double refine_tol = 1e-12, unsigned jobs = 1);

/// One angle per line, 17 significant digits.
void write_config_csv(std::ostream& out, const CircleConfig& config);

}  // namespace greedy_riesz::energy
