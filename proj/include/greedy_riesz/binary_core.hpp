#pragma once

// Binary decompositions of integers, the normalized part vectors eta(N),
// binary expansions of 1/x on [1/2, 1] and the dyadic grids P_M.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace greedy_riesz::binary {

/// Exact non-negative rational with 64-bit parts, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(std::int64_t value) : num_(value), den_(1) {}

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Strictly decreasing exponents n_1 > ... > n_p >= 0 with N = sum 2^{n_k}.
struct BinaryDecomposition {
  std::vector<int> exponents;

  [[nodiscard]] std::uint64_t value() const;
  [[nodiscard]] std::size_t size() const { return exponents.size(); }
};

BinaryDecomposition decompose(std::uint64_t n);

/// Number of ones in the binary representation.
int tau_b(std::uint64_t n);

enum class TailKind {
  none,       ///< finite vector, zeros beyond the listed components
  halving,    ///< listed prefix continues as c/2, c/4, ... with c the last component
  truncated,  ///< unknown terms beyond the prefix, total mass tail_mass <= tail_bound
};

/// Non-increasing vector of non-negative weights summing to one, possibly
/// infinite. Infinite vectors keep a finite prefix plus a tail descriptor.
class ThetaVector {
 public:
  ThetaVector() = default;

  static ThetaVector exact(std::vector<Rational> components);
  static ThetaVector finite(std::vector<double> components);
  static ThetaVector with_halving_tail(std::vector<double> prefix);
  static ThetaVector with_halving_tail(std::vector<Rational> prefix);
  static ThetaVector truncated(std::vector<double> prefix, double tail_mass, double tail_bound);

  [[nodiscard]] const std::vector<double>& components() const { return components_; }
  [[nodiscard]] const std::vector<Rational>& exact_components() const { return exact_; }
  [[nodiscard]] bool has_exact_components() const { return !exact_.empty(); }
  [[nodiscard]] std::size_t size() const { return components_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return components_[i]; }

  [[nodiscard]] TailKind tail() const { return tail_; }
  [[nodiscard]] bool is_finite() const { return tail_ == TailKind::none; }
  /// Mass of the components beyond the prefix (exact for none/halving).
  [[nodiscard]] double tail_mass() const { return tail_mass_; }
  /// Upper bound on the tail mass; 0 for finite vectors.
  [[nodiscard]] double tail_bound() const { return tail_bound_; }

  /// b_k = sum_{j>k} theta_j for every prefix index k (0-based), tail included.
  [[nodiscard]] std::vector<double> suffix_masses() const;

 private:
  std::vector<double> components_;
  std::vector<Rational> exact_;
  TailKind tail_ = TailKind::none;
  double tail_mass_ = 0.0;
  double tail_bound_ = 0.0;
};

/// eta(N) = (2^{n_1}/N, ..., 2^{n_p}/N), exact.
ThetaVector eta(std::uint64_t n);

/// A point x in [1/2, 1] with the exponents of a binary expansion
/// 1/x = sum_j 2^{-k_j}, 0 = k_1 < k_2 < ...
struct SVector {
  Rational x;
  std::vector<int> exponents;   ///< listed prefix k_1, k_2, ...
  bool finite = true;           ///< expansion ends after the prefix
  bool unit_gap_tail = false;   ///< exponents continue k_last + 1, k_last + 2, ...
  double tail_mass = 0.0;       ///< sum of x 2^{-k_j} over unlisted terms
  double tail_bound = 0.0;      ///< x 2^{-k_last} when not finite

  [[nodiscard]] ThetaVector theta() const;
};

inline constexpr int kDefaultMaxTerms = 64;

/// True when 1/x = q/2^k with q odd and k >= 1, i.e. two expansions exist.
bool has_two_expansions(const Rational& x);

/// Binary expansion of 1/x, x in [1/2, 1]. For dyadic 1/x the finite form is
/// returned when prefer_finite, otherwise the eventually-unit-gap form.
/// Expansions that do not terminate are truncated after max_terms terms.
SVector expand_reciprocal(const Rational& x, bool prefer_finite = true,
                          int max_terms = kDefaultMaxTerms);
SVector expand_reciprocal(double x, bool prefer_finite = true, int max_terms = kDefaultMaxTerms);

/// x_{M,n} = 2^M / (2^M + 2n + 1), n = 0 .. 2^{M-1} - 1.
Rational grid_point(int m, std::int64_t n);
std::vector<Rational> grid_points(int m);

/// Structural checks of the ThetaVector invariants, up to an additive slack.
struct InvariantReport {
  bool sums_to_one = false;
  bool leading_in_range = false;
  bool component_bounds = false;   ///< theta_k <= 1/(2^k - 1)
  bool suffix_dominated = false;   ///< sum_{j>k} theta_j <= theta_k
  bool partial_sum_bounds = false; ///< sum_{j<=k} theta_j >= 1 - 2^{-(k-1)}
  [[nodiscard]] bool all() const {
    return sums_to_one && leading_in_range && component_bounds && suffix_dominated &&
           partial_sum_bounds;
  }
};

InvariantReport check_invariants(const ThetaVector& theta, double slack = 1e-14);

}  // namespace greedy_riesz::binary
