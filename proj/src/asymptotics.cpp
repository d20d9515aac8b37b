#include "greedy_riesz/asymptotics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "greedy_riesz/arith_fn.hpp"
#include "greedy_riesz/binary_core.hpp"
#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/numeric.hpp"
#include "greedy_riesz/special_fn.hpp"

namespace greedy_riesz::asymptotics {

namespace {

using energy::EnergyEvaluator;
using energy::EnergyParams;

void reject_near_branch(double s) {
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  for (double b : {-1.0, 0.0, 1.0}) {
    if (s != b && std::abs(s - b) < kBranchGuard)
      throw DomainError("s lies within 1e-9 of the branch point " + std::to_string(b) +
                        "; pass the branch value exactly");
  }
}

bool is_odd_positive_integer(double s) {
  return s > 0.0 && s == std::floor(s) && std::fmod(s, 2.0) == 1.0;
}

// Remainder scale of the leading-term expansions for s > 0, s != 1.
double power_branch_scale(double nd, double s) {
  if (s == 2.0 || s > 3.0) return nd * nd;
  if (s == 3.0) return nd * nd / std::log(nd);
  return std::pow(nd, s - 1.0);  // 1 < s < 3
}

double zeta_factor(double s) { return 2.0 * special::zeta(s) / std::pow(2.0 * kPi, s); }

}  // namespace

double arclength_energy(double s) {
  if (!(s > -2.0 && s < 1.0)) throw DomainError("I_s(sigma) is finite only for -2 < s < 1");
  if (s == 0.0) return 0.0;  // logarithmic kernel
  return special::v_s(s);
}

double t_sequence(EnergyEvaluator& ev, std::uint64_t n) {
  const double s = ev.params().s;
  reject_near_branch(s);
  if (n < 2) throw DomainError("T_{N,s} requires N >= 2");
  const double nd = static_cast<double>(n);
  const double e = ev.greedy(n);
  if (s == 0.0) return (e + energy::n_log_n(nd)) / nd;
  if (s == 1.0) return (e - nd * energy::n_log_n(nd) / kPi) / (nd * nd);
  if (s > 1.0) return e / std::pow(nd, 1.0 + s);
  const double base = e - nd * nd * arclength_energy(s);
  if (s < -1.0) return base;
  if (s == -1.0) return base / std::log(nd);
  return base / std::pow(nd, 1.0 + s);
}

double t_sequence(std::uint64_t n, double s) {
  EnergyEvaluator ev(EnergyParams::for_s(s));
  return t_sequence(ev, n);
}

double f_sequence(EnergyEvaluator& ev, std::uint64_t n) {
  const double s = ev.params().s;
  reject_near_branch(s);
  if (n < 1) throw DomainError("F_{N,s} requires N >= 1");
  const double nd = static_cast<double>(n);
  const double u = ev.extremal_potential(n);
  if (s == 0.0) return -u / std::log(nd + 1.0);
  if (s == 1.0) return (u - energy::n_log_n(nd) / kPi) / nd;
  if (s > 1.0) return u / std::pow(nd, s);
  const double base = u - nd * arclength_energy(s);
  if (s < 0.0) return base;
  return base / std::pow(nd, s);
}

double f_sequence(std::uint64_t n, double s) {
  EnergyEvaluator ev(EnergyParams::for_s(s));
  return f_sequence(ev, n);
}

Prediction predict_T(std::uint64_t n, double s) {
  reject_near_branch(s);
  if (n < 2) throw DomainError("predict_T requires N >= 2");
  if (s < -1.0) throw DomainError("no leading-term prediction of T_{N,s} for s < -1");
  const auto theta = binary::eta(n);
  const double nd = static_cast<double>(n);
  if (s == 0.0) return {arith::R(theta), 1.0};
  if (s == -1.0) return {-kPi / 3.0 * arith::H(theta, -1.0) / std::log(nd), std::log(nd)};
  if (s == 1.0)
    return {(kEulerGamma + std::log(2.0 / kPi) + arith::K(theta)) / kPi, nd * nd};
  const double value = zeta_factor(s) * arith::H(theta, s);
  if (s < 1.0) return {value, std::pow(nd, 1.0 + s)};
  return {value, power_branch_scale(nd, s)};
}

Prediction predict_F(std::uint64_t n, double s) {
  reject_near_branch(s);
  if (n < 1) throw DomainError("predict_F requires N >= 1");
  if (!(s > 0.0)) throw DomainError("no leading-term prediction of F_{N,s} for s <= 0");
  const auto theta = binary::eta(n);
  const double nd = static_cast<double>(n);
  if (s == 1.0) return {(kEulerGamma + std::log(8.0 / kPi) + arith::Lambda(theta)) / kPi, nd};
  const double value = std::expm1(s * kLn2) * zeta_factor(s) * arith::G(theta, s);
  if (s < 1.0) return {value, std::pow(nd, s)};
  return {value, power_branch_scale(nd, s)};
}

EnergyReport t_report(EnergyEvaluator& ev, std::uint64_t n) {
  EnergyReport r;
  r.n = n;
  r.s = ev.params().s;
  r.exact_energy = ev.greedy(n);
  r.scaled_value = t_sequence(ev, n);
  const auto p = predict_T(n, r.s);
  r.prediction = p.value;
  r.remainder = r.scaled_value - r.prediction;
  r.remainder_scale = p.remainder_scale;
  return r;
}

EnergyReport f_report(EnergyEvaluator& ev, std::uint64_t n) {
  EnergyReport r;
  r.n = n;
  r.s = ev.params().s;
  r.exact_energy = ev.extremal_potential(n);
  r.scaled_value = f_sequence(ev, n);
  const auto p = predict_F(n, r.s);
  r.prediction = p.value;
  r.remainder = r.scaled_value - r.prediction;
  r.remainder_scale = p.remainder_scale;
  return r;
}

double expansion_E(std::uint64_t n, double s) {
  if (!(s >= -1.0)) throw DomainError("expansion_E requires s >= -1");
  if (s == 0.0) throw DomainError("expansion_E is not defined at s = 0");
  if (n < 2) throw DomainError("expansion_E requires N >= 2");
  const auto theta = binary::eta(n);
  const double nd = static_cast<double>(n);
  const double pref = 2.0 / std::pow(2.0 * kPi, s);

  CompensatedSum acc;
  int terms = 0;
  if (is_odd_positive_integer(s)) {
    const int m = static_cast<int>((s - 1.0) / 2.0);
    const double q = special::q_coefficient(m);
    acc += q * nd * energy::n_log_n(nd);
    acc += q * (kEulerGamma - std::log(kPi) + special::c_constant(m) + arith::K(theta)) * nd * nd;
    terms = m;  // j = 0 .. M-1
  } else {
    acc += special::v_s(s) * nd * nd;
    terms = static_cast<int>(std::floor((s + 1.0) / 2.0)) + 1;  // j = 0 .. floor((s+1)/2)
  }
  if (terms > 0) {
    const auto beta = special::beta_coeffs(s, terms - 1);
    for (int j = 0; j < terms; ++j) {
      const double sj = s - 2.0 * j;
      acc += pref * beta[j] * special::zeta(sj) * arith::H(theta, sj) * std::pow(nd, sj + 1.0);
    }
  }
  return acc.value();
}

ScanSummary remainder_scan(double s, std::uint64_t lo, std::uint64_t hi, Sequence sequence,
                           unsigned jobs) {
  reject_near_branch(s);
  if (lo < 2 || hi < lo || hi > (std::uint64_t{1} << 14))
    throw DomainError("remainder_scan: range must lie within [2, 2^14]");
  ScanSummary out;
  out.s = s;
  out.sequence = sequence;
  const std::size_t count = hi - lo + 1;
  out.rows.resize(count);

  parallel_chunks(count, jobs, [&](std::size_t b, std::size_t e, std::size_t) {
    EnergyEvaluator ev(EnergyParams::for_s(s));
    for (std::size_t i = b; i < e; ++i) {
      const std::uint64_t n = lo + i;
      ScanRow row;
      row.n = n;
      row.s = s;
      if (sequence == Sequence::expansion) {
        row.exact = ev.greedy(n);
        row.scaled = row.exact;
        row.prediction = expansion_E(n, s);
        row.remainder = row.exact - row.prediction;
        row.scaled_remainder = row.remainder;
      } else {
        const auto rep = sequence == Sequence::T ? t_report(ev, n) : f_report(ev, n);
        row.exact = rep.exact_energy;
        row.scaled = rep.scaled_value;
        row.prediction = rep.prediction;
        row.remainder = rep.remainder;
        row.scaled_remainder = rep.scaled_remainder();
      }
      out.rows[i] = row;
    }
  });

  for (const auto& row : out.rows) {
    const double mag = std::abs(row.scaled_remainder);
    const double scale = row.remainder != 0.0 ? std::abs(row.scaled_remainder / row.remainder) : 1.0;
    out.noise_floor = std::max(out.noise_floor, 1024.0 * std::numeric_limits<double>::epsilon() *
                                                    std::abs(row.scaled) * scale);
    const int oct = std::bit_width(row.n) - 1;
    if (out.octaves.empty() || out.octaves.back().octave != oct) {
      const std::uint64_t first = std::uint64_t{1} << oct;
      out.octaves.push_back({oct, 0.0, row.n, lo <= first && 2 * first - 1 <= hi});
    }
    auto& o = out.octaves.back();
    if (mag > o.sup) {
      o.sup = mag;
      o.argmax = row.n;
    }
    if (mag > out.sup) {
      out.sup = mag;
      out.argmax = row.n;
    }
  }
  std::vector<const OctaveSup*> full;
  for (const auto& o : out.octaves)
    if (o.complete) full.push_back(&o);
  if (full.size() >= 2)
    out.divergence_alarm =
        full.back()->sup > 1.2 * full[full.size() - 2]->sup && full.back()->sup > out.noise_floor;
  return out;
}

double doubling_gap(std::uint64_t n, double s) {
  EnergyEvaluator ev(EnergyParams::for_s(s));
  return t_sequence(ev, 2 * n) - t_sequence(ev, n);
}

double cesaro_mean(std::uint64_t n, double s) {
  if (!(s > -2.0 && s < 0.0)) throw DomainError("cesaro_mean requires -2 < s < 0");
  if (n < 1) throw DomainError("cesaro_mean requires N >= 1");
  const double nd = static_cast<double>(n);
  const double i_s = arclength_energy(s);
  // sum_{k=1}^{N} U_{k,s}(a_k) telescopes to E_s(alpha_{N+1}) / 2
  const double e = energy::greedy_energy(n + 1, EnergyParams::for_s(s));
  return e / (2.0 * nd) - 0.5 * (nd + 1.0) * i_s;
}

}  // namespace greedy_riesz::asymptotics
