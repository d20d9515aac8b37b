#pragma once

// Limit-point functions on [1/2, 1] and their extremum scans over the dyadic
// grids P_M.

#include <cstdint>
#include <optional>
#include <vector>

#include "greedy_riesz/binary_core.hpp"

namespace greedy_riesz::limits {

using binary::Rational;

/// H(theta(x); s), K(theta(x)), R(theta(x)) with theta(x) the vector of a
/// binary expansion of 1/x. At points with two expansions the value does not
/// depend on the choice; prefer_finite selects which one is evaluated.
double H_cal(const Rational& x, double s, double tol = 1e-14, bool prefer_finite = true);
double K_cal(const Rational& x, double tol = 1e-14, bool prefer_finite = true);
double R_cal(const Rational& x, double tol = 1e-14, bool prefer_finite = true);
/// G and Lambda jump at points with two expansions; these always use the finite one.
double G_cal(const Rational& x, double s, double tol = 1e-14);
double Lambda_tilde(const Rational& x, double tol = 1e-14);

double H_cal(double x, double s, double tol = 1e-14);
double K_cal(double x, double tol = 1e-14);
double R_cal(double x, double tol = 1e-14);
double G_cal(double x, double s, double tol = 1e-14);
double Lambda_tilde(double x, double tol = 1e-14);

enum class ScanTarget { H, K, R };

struct ScanPoint {
  Rational x;
  double value = 0.0;
};

struct ScanResult {
  int m = 0;
  std::optional<double> s;  ///< set for H scans only
  ScanTarget target = ScanTarget::H;
  std::vector<ScanPoint> values;  ///< ordered by n, i.e. by decreasing x
  bool maximize = true;
  double extremum = 0.0;
  Rational arg;
  std::size_t arg_index = 0;
  std::optional<double> error_bound;  ///< certified |d_{s,M} - d_s| bound (H only)
};

/// Orientation for H scans: minimum for 0 < s < 1, maximum otherwise.
bool h_scan_maximizes(double s);

/// Certified distance between d_{s,M} and d_s.
double scan_error_bound(double s, int m);

/// Evaluates the target at every x_{M,n} (1 <= M <= 24). Ties go to the smallest x.
ScanResult scan_extremum(int m, ScanTarget target, double s = 0.0, unsigned jobs = 1);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Estimated limit interval of T_{N,s} (s > -1) from the M-grid scan.
Interval interval_estimate(double s, int m, unsigned jobs = 1);

/// H(x,s) - 2(2^s-1)/(s+1) sum_n (x 2^{-k_n})^s over the infinite expansion of
/// 1/x; for x = 1 the expansion 1 = sum_{j>=1} 2^{-j} is used.
double stationarity_residual(const Rational& x, double s);
double stationarity_residual(double x, double s);

/// Both sides of the parent/child relations between H(x_{M,n}, s) and the
/// values at x_{M+1,2n+1} ("odd") and x_{M+1,2n} ("even").
struct ChildIdentities {
  double odd_lhs = 0.0;
  double odd_rhs = 0.0;
  double even_lhs = 0.0;
  double even_rhs = 0.0;

  [[nodiscard]] double max_mismatch() const;
};

ChildIdentities child_identities(int m, std::int64_t n, double s);

}  // namespace greedy_riesz::limits
