#pragma once

// Arithmetic functions H, K, R, G, Lambda of normalized binary vectors, and
// the block partition that makes H a telescoping sum.

#include <cstddef>
#include <vector>

#include "greedy_riesz/binary_core.hpp"

namespace greedy_riesz::arith {

using binary::ThetaVector;

inline constexpr double kDefaultTol = 1e-14;

/// H(theta; s) = sum theta_n^s (theta_n + 2 (2^s - 1) b_n). Any real s for
/// finite vectors; s > -1 when theta has a tail.
double H(const ThetaVector& theta, double s, double tol = kDefaultTol);

/// K(theta) = 2 log 2 + sum theta_n^2 log(theta_n / 4) + 2 sum b_n theta_n log theta_n.
double K(const ThetaVector& theta, double tol = kDefaultTol);

/// R(theta) = -2 log 2 sum (n-1) theta_n - sum theta_n log theta_n.
double R(const ThetaVector& theta, double tol = kDefaultTol);

/// G(theta; s) = sum theta_n^s; s > 0 when theta has a tail.
double G(const ThetaVector& theta, double s, double tol = kDefaultTol);

/// Lambda(theta) = sum theta_n log theta_n.
double Lambda(const ThetaVector& theta, double tol = kDefaultTol);

/// Relative exponents n_k with theta_k = theta_1 2^{-n_k}; throws
/// StructureError when consecutive ratios are not powers of two.
std::vector<int> relative_exponents(const ThetaVector& theta);

/// Maximal runs of consecutive relative exponents.
struct Block {
  std::size_t first = 0;  ///< 0-based index m of the first component
  std::size_t last = 0;   ///< 0-based index of the last listed component
  bool infinite = false;  ///< run continues through a halving tail
  double theta_first = 0.0;
  double b_first = 0.0;
  double theta_last = 0.0;
  double b_last = 0.0;

  [[nodiscard]] std::size_t size() const { return last - first + 1; }
};

struct PartitionBlocks {
  std::vector<Block> blocks;
  std::vector<int> exponents;  ///< relative exponents of the listed components
};

PartitionBlocks partition(const ThetaVector& theta);

/// H evaluated block by block:
/// sum (2 theta_m)^s (2 b_m) + theta_e^s (theta_e - 2 b_e), and (2 theta_m)^{s+1}
/// for an infinite final block. Truncated tails are ignored as in H.
double telescoped_H(const PartitionBlocks& blocks, double s);

/// Bounds on the contribution of unlisted components of a truncated vector.
double tail_bound_H(const ThetaVector& theta, double s);
double tail_bound_K(const ThetaVector& theta);
double tail_bound_R(const ThetaVector& theta);
double tail_bound_G(const ThetaVector& theta, double s);
double tail_bound_Lambda(const ThetaVector& theta);

}  // namespace greedy_riesz::arith
