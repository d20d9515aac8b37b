#pragma once

// Scaled energy sequences T_{N,s} and F_{N,s}, their leading-order
// predictions, the multi-term energy expansion, and scan diagnostics.

#include <cstdint>
#include <vector>

#include "greedy_riesz/circle_energy.hpp"

namespace greedy_riesz::asymptotics {

/// Parameters within this distance of -1, 0 or 1 (but not equal) are rejected.
inline constexpr double kBranchGuard = 1e-9;

struct Prediction {
  double value = 0.0;
  /// Factor by which (scaled - prediction) is multiplied in boundedness checks.
  double remainder_scale = 1.0;
};

struct EnergyReport {
  std::uint64_t n = 0;
  double s = 0.0;
  double exact_energy = 0.0;  ///< E_s(alpha_N) for T, U_{N,s}(a_N) for F
  double scaled_value = 0.0;
  double prediction = 0.0;
  double remainder = 0.0;
  double remainder_scale = 1.0;

  [[nodiscard]] double scaled_remainder() const { return remainder * remainder_scale; }
};

/// I_s(sigma), the s-energy of normalized arclength; -2 < s < 1.
double arclength_energy(double s);

double t_sequence(std::uint64_t n, double s);
double t_sequence(energy::EnergyEvaluator& ev, std::uint64_t n);
double f_sequence(std::uint64_t n, double s);
double f_sequence(energy::EnergyEvaluator& ev, std::uint64_t n);

/// Leading asymptotic term of T_{N,s} for s >= -1.
Prediction predict_T(std::uint64_t n, double s);
/// Leading asymptotic term of F_{N,s} for s > 0.
Prediction predict_F(std::uint64_t n, double s);

EnergyReport t_report(energy::EnergyEvaluator& ev, std::uint64_t n);
EnergyReport f_report(energy::EnergyEvaluator& ev, std::uint64_t n);

/// Multi-term prediction of E_s(alpha_N) for s >= -1, s != 0.
double expansion_E(std::uint64_t n, double s);

enum class Sequence { T, F, expansion };

struct ScanRow {
  std::uint64_t n = 0;
  double s = 0.0;
  double exact = 0.0;
  double scaled = 0.0;
  double prediction = 0.0;
  double remainder = 0.0;
  double scaled_remainder = 0.0;
};

struct OctaveSup {
  int octave = 0;  ///< rows with 2^octave <= N < 2^{octave+1}
  double sup = 0.0;
  std::uint64_t argmax = 0;
  bool complete = false;  ///< the range covers the whole octave
};

struct ScanSummary {
  double s = 0.0;
  Sequence sequence = Sequence::T;
  std::vector<ScanRow> rows;
  std::vector<OctaveSup> octaves;
  double sup = 0.0;  ///< max |scaled remainder| over the range
  std::uint64_t argmax = 0;
  /// Roundoff level of the scaled remainders, 1024 eps max |scaled value * scale|.
  double noise_floor = 0.0;
  /// The last complete octave's sup exceeds the one before it by more than
  /// 20% and lies above the noise floor.
  bool divergence_alarm = false;
};

/// Empirical sup of |remainder| * scale over lo <= N <= hi (within [2, 2^14]).
ScanSummary remainder_scan(double s, std::uint64_t lo, std::uint64_t hi,
                           Sequence sequence = Sequence::T, unsigned jobs = 1);

/// T_{2N,s} - T_{N,s}
double doubling_gap(std::uint64_t n, double s);

/// (1/N) sum_{k=1}^{N} (U_{k,s}(a_k) - k I_s(sigma)) for -2 < s < 0, whose
/// limit is I_s(sigma)/2.
double cesaro_mean(std::uint64_t n, double s);

}  // namespace greedy_riesz::asymptotics
