#include "greedy_riesz/arith_fn.hpp"

#include <cmath>
#include <string>

#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/numeric.hpp"

namespace greedy_riesz::arith {

using binary::TailKind;

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_truncation_ok(double bound, double tol, const char* name) {
  if (bound > tol)
    throw DomainError(std::string(name) + ": truncated tail bound " + std::to_string(bound) +
                      " exceeds tolerance");
}

void require_nonempty(const ThetaVector& theta, const char* name) {
  if (theta.size() == 0) throw DomainError(std::string(name) + ": empty vector");
}

}  // namespace

double tail_bound_H(const ThetaVector& theta, double s) {
  if (theta.tail() != TailKind::truncated) return 0.0;
  const double t = theta.tail_bound();
  const double q = std::exp2(s + 1.0);
  return (q + 3.0) * std::pow(t, s + 1.0) / (q - 1.0);
}

double tail_bound_K(const ThetaVector& theta) {
  if (theta.tail() != TailKind::truncated) return 0.0;
  const double t = theta.tail_bound();
  if (t <= 0.0) return 0.0;
  const double lt = std::abs(std::log(t));
  return t * t / 3.0 * (3.0 * lt + 2.0 * kLn2) + 4.0 / 3.0 * kLn2 * t * t;
}

double tail_bound_R(const ThetaVector& theta) {
  if (theta.tail() != TailKind::truncated) return 0.0;
  const double t = theta.tail_bound();
  if (t <= 0.0) return 0.0;
  const auto p = static_cast<double>(theta.size());
  return 2.0 * kLn2 * (p + 1.0) * t + t * std::abs(std::log(t)) + 2.0 * kLn2 * t;
}

double tail_bound_G(const ThetaVector& theta, double s) {
  if (theta.tail() != TailKind::truncated) return 0.0;
  return std::pow(theta.tail_bound(), s) / std::expm1(s * kLn2);
}

double tail_bound_Lambda(const ThetaVector& theta) {
  if (theta.tail() != TailKind::truncated) return 0.0;
  const double t = theta.tail_bound();
  if (t <= 0.0) return 0.0;
  return t * std::abs(std::log(t)) + 2.0 * kLn2 * t;
}

double H(const ThetaVector& theta, double s, double tol) {
  require_nonempty(theta, "H");
  if (!theta.is_finite() && !(s > -1.0))
    throw DomainError("H: s must exceed -1 for vectors with an infinite tail");
  require_truncation_ok(tail_bound_H(theta, s), tol, "H");

  const double coef = 2.0 * std::expm1(s * kLn2);
  const auto& c = theta.components();
  const auto b = theta.suffix_masses();
  CompensatedSum acc;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    acc += std::pow(c[n], s) * (c[n] + coef * b[n]);
  }
  if (theta.tail() == TailKind::halving) acc += std::pow(c.back(), s + 1.0);
  return acc.value();
}

double K(const ThetaVector& theta, double tol) {
  require_nonempty(theta, "K");
  require_truncation_ok(tail_bound_K(theta), tol, "K");
  const auto& c = theta.components();
  const auto b = theta.suffix_masses();
  CompensatedSum acc;
  acc += 2.0 * kLn2;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    const double l = std::log(c[n]);
    acc += c[n] * c[n] * (l - 2.0 * kLn2);
    acc += 2.0 * b[n] * c[n] * l;
  }
  if (theta.tail() == TailKind::halving) {
    const double t = c.back();
    acc += t * t * (std::log(t) - 2.0 * kLn2);
  }
  return acc.value();
}

double R(const ThetaVector& theta, double tol) {
  require_nonempty(theta, "R");
  require_truncation_ok(tail_bound_R(theta), tol, "R");
  const auto& c = theta.components();
  CompensatedSum acc;
  for (std::size_t n = 0; n < c.size(); ++n) {
    acc += -2.0 * kLn2 * static_cast<double>(n) * c[n];
    acc += -xlogx(c[n]);
  }
  if (theta.tail() == TailKind::halving) {
    const double t = c.back();
    const auto p = static_cast<double>(c.size());
    acc += -2.0 * kLn2 * (p - 1.0) * t - 2.0 * kLn2 * t - xlogx(t);
  }
  return acc.value();
}

double G(const ThetaVector& theta, double s, double tol) {
  require_nonempty(theta, "G");
  if (!theta.is_finite() && !(s > 0.0))
    throw DomainError("G: s must be positive for vectors with an infinite tail");
  require_truncation_ok(tail_bound_G(theta, s), tol, "G");
  const auto& c = theta.components();
  CompensatedSum acc;
  for (double v : c) {
    if (v != 0.0) acc += std::pow(v, s);
  }
  if (theta.tail() == TailKind::halving) acc += std::pow(c.back(), s) / std::expm1(s * kLn2);
  return acc.value();
}

double Lambda(const ThetaVector& theta, double tol) {
  require_nonempty(theta, "Lambda");
  require_truncation_ok(tail_bound_Lambda(theta), tol, "Lambda");
  const auto& c = theta.components();
  CompensatedSum acc;
  for (double v : c) acc += xlogx(v);
  if (theta.tail() == TailKind::halving) {
    const double t = c.back();
    acc += xlogx(t) - 2.0 * kLn2 * t;
  }
  return acc.value();
}

std::vector<int> relative_exponents(const ThetaVector& theta) {
  const auto& c = theta.components();
  std::vector<int> n;
  n.reserve(c.size());
  if (c.empty()) return n;
  if (!(c[0] > 0.0)) throw StructureError("leading component must be positive");
  n.push_back(0);
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] == 0.0) throw StructureError("zero component inside the listed prefix");
    int exp = 0;
    const double mant = std::frexp(c[k - 1] / c[k], &exp);
    // ratio = 2^{exp-1} exactly when the mantissa is 1/2
    if (mant != 0.5 || exp < 2)
      throw StructureError("component ratio is not a power of two at index " +
                           std::to_string(k));
    n.push_back(n.back() + exp - 1);
  }
  if (theta.has_exact_components()) {
    const auto& e = theta.exact_components();
    for (std::size_t k = 1; k < e.size(); ++k) {
      if (e[k - 1] != e[k] * binary::Rational(std::int64_t{1} << (n[k] - n[k - 1]), 1))
        throw StructureError("exact component ratio is not a power of two");
    }
  }
  return n;
}

PartitionBlocks partition(const ThetaVector& theta) {
  PartitionBlocks out;
  out.exponents = relative_exponents(theta);
  const auto& c = theta.components();
  const auto b = theta.suffix_masses();
  std::size_t start = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const bool run_ends = k + 1 == c.size() || out.exponents[k + 1] != out.exponents[k] + 1;
    if (!run_ends) continue;
    Block blk;
    blk.first = start;
    blk.last = k;
    blk.infinite = k + 1 == c.size() && theta.tail() == TailKind::halving;
    blk.theta_first = c[start];
    blk.b_first = b[start];
    blk.theta_last = c[k];
    blk.b_last = b[k];
    out.blocks.push_back(blk);
    start = k + 1;
  }
  return out;
}

double telescoped_H(const PartitionBlocks& blocks, double s) {
  CompensatedSum acc;
  for (const auto& blk : blocks.blocks) {
    if (blk.infinite) {
      acc += std::pow(2.0 * blk.theta_first, s + 1.0);
      continue;
    }
    acc += std::pow(2.0 * blk.theta_first, s) * (2.0 * blk.b_first);
    acc += std::pow(blk.theta_last, s) * (blk.theta_last - 2.0 * blk.b_last);
  }
  return acc.value();
}

}  // namespace greedy_riesz::arith
