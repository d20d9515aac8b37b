#include "greedy_riesz/binary_core.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "greedy_riesz/errors.hpp"

namespace greedy_riesz::binary {

namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(i128 num, i128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

bool is_power_of_two(std::int64_t v) { return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v)); }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
  if (value == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(value, &exp);  // value = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  int e = exp - 53;
  while (e < 0 && (m % 2) == 0) {
    m /= 2;
    ++e;
  }
  if (e >= 0) {
    if (e > 62 - static_cast<int>(std::bit_width(static_cast<std::uint64_t>(m < 0 ? -m : m))))
      throw std::overflow_error("double too large for rational");
    return Rational(m * (std::int64_t{1} << e), 1);
  }
  if (-e > 62) throw std::overflow_error("double too small for rational");
  return Rational(m, std::int64_t{1} << (-e));
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::uint64_t BinaryDecomposition::value() const {
  std::uint64_t n = 0;
  for (int e : exponents) n += std::uint64_t{1} << e;
  return n;
}

BinaryDecomposition decompose(std::uint64_t n) {
  if (n == 0) throw DomainError("decompose: N must be positive");
  BinaryDecomposition d;
  for (int bit = 63; bit >= 0; --bit) {
    if ((n >> bit) & 1U) d.exponents.push_back(bit);
  }
  return d;
}

int tau_b(std::uint64_t n) {
  if (n == 0) throw DomainError("tau_b: N must be positive");
  return std::popcount(n);
}

ThetaVector ThetaVector::exact(std::vector<Rational> components) {
  ThetaVector t;
  t.components_.reserve(components.size());
  for (const auto& c : components) t.components_.push_back(c.to_double());
  t.exact_ = std::move(components);
  return t;
}

ThetaVector ThetaVector::finite(std::vector<double> components) {
  ThetaVector t;
  t.components_ = std::move(components);
  return t;
}

ThetaVector ThetaVector::with_halving_tail(std::vector<double> prefix) {
  if (prefix.empty()) throw DomainError("halving tail needs a nonempty prefix");
  ThetaVector t;
  t.components_ = std::move(prefix);
  t.tail_ = TailKind::halving;
  t.tail_mass_ = t.components_.back();
  t.tail_bound_ = t.tail_mass_;
  return t;
}

ThetaVector ThetaVector::with_halving_tail(std::vector<Rational> prefix) {
  if (prefix.empty()) throw DomainError("halving tail needs a nonempty prefix");
  ThetaVector t = exact(std::move(prefix));
  t.tail_ = TailKind::halving;
  t.tail_mass_ = t.components_.back();
  t.tail_bound_ = t.tail_mass_;
  return t;
}

ThetaVector ThetaVector::truncated(std::vector<double> prefix, double tail_mass, double tail_bound) {
  if (tail_mass < 0.0 || tail_bound < tail_mass) throw DomainError("inconsistent tail metadata");
  ThetaVector t;
  t.components_ = std::move(prefix);
  t.tail_ = TailKind::truncated;
  t.tail_mass_ = tail_mass;
  t.tail_bound_ = tail_bound;
  return t;
}

std::vector<double> ThetaVector::suffix_masses() const {
  const std::size_t p = components_.size();
  std::vector<double> b(p, 0.0);
  if (p == 0) return b;

  bool common_den = !exact_.empty();
  for (std::size_t i = 1; common_den && i < exact_.size(); ++i)
    common_den = exact_[i].den() == exact_[0].den();
  if (common_den) {
    // Exact integer suffix sums over the shared denominator.
    const auto den = static_cast<long double>(exact_[0].den());
    i128 acc = 0;
    for (std::size_t k = p; k-- > 0;) {
      b[k] = static_cast<double>(static_cast<long double>(acc) / den + tail_mass_);
      acc += exact_[k].num();
    }
    return b;
  }

  double acc = tail_mass_;
  for (std::size_t k = p; k-- > 0;) {
    b[k] = acc;
    acc += components_[k];
  }
  return b;
}

ThetaVector eta(std::uint64_t n) {
  if (n > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("eta: N too large");
  const auto d = decompose(n);
  std::vector<Rational> comps;
  comps.reserve(d.size());
  for (int e : d.exponents)
    comps.emplace_back(std::int64_t{1} << e, static_cast<std::int64_t>(n));
  return ThetaVector::exact(std::move(comps));
}

ThetaVector SVector::theta() const {
  const double xv = x.to_double();
  const int width = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(x.den())));
  bool exact_ok = true;
  for (int k : exponents) exact_ok = exact_ok && width + k <= 62;

  if (exact_ok) {
    std::vector<Rational> comps;
    comps.reserve(exponents.size());
    for (int k : exponents) comps.emplace_back(x.num(), x.den() << k);
    if (finite) return ThetaVector::exact(std::move(comps));
    if (unit_gap_tail) return ThetaVector::with_halving_tail(std::move(comps));
    ThetaVector t = ThetaVector::exact(std::move(comps));
    return ThetaVector::truncated(t.components(), tail_mass, tail_bound);
  }

  std::vector<double> comps;
  comps.reserve(exponents.size());
  for (int k : exponents) comps.push_back(std::ldexp(xv, -k));
  if (finite) return ThetaVector::finite(std::move(comps));
  if (unit_gap_tail) return ThetaVector::with_halving_tail(std::move(comps));
  return ThetaVector::truncated(std::move(comps), tail_mass, tail_bound);
}

bool has_two_expansions(const Rational& x) { return x.num() >= 2 && is_power_of_two(x.num()); }

SVector expand_reciprocal(const Rational& x, bool prefer_finite, int max_terms) {
  if (x < Rational(1, 2) || x > Rational(1)) throw DomainError("expand_reciprocal: x outside [1/2, 1]");
  if (max_terms < 1) throw DomainError("expand_reciprocal: max_terms must be positive");

  SVector sv;
  sv.x = x;
  sv.exponents.push_back(0);
  const std::int64_t a = x.num();
  const std::int64_t b = x.den();
  if (a == b) return sv;

  const double xv = x.to_double();
  if (b == 2 * a) {
    // 1/2: only the all-ones expansion 1 + 1/2 + 1/4 + ...
    sv.finite = false;
    sv.unit_gap_tail = true;
    sv.tail_mass = 0.5;
    sv.tail_bound = 0.5;
    return sv;
  }

  // Long division of b by a; remainder r satisfies 1/x - sum 2^{-k} = r / (a 2^pos).
  u128 r = static_cast<u128>(b - a);
  int pos = 0;
  while (r != 0 && static_cast<int>(sv.exponents.size()) < max_terms) {
    r <<= 1;
    ++pos;
    if (r >= static_cast<u128>(a)) {
      sv.exponents.push_back(pos);
      r -= static_cast<u128>(a);
    }
  }

  if (r == 0) {
    if (prefer_finite) return sv;
    const int last = sv.exponents.back() + 1;
    sv.exponents.back() = last;
    sv.finite = false;
    sv.unit_gap_tail = true;
    sv.tail_mass = std::ldexp(xv, -last);
    sv.tail_bound = sv.tail_mass;
    return sv;
  }

  sv.finite = false;
  sv.tail_mass = std::ldexp(static_cast<double>(static_cast<long double>(r) / b), -pos);
  sv.tail_bound = std::ldexp(xv, -sv.exponents.back());
  return sv;
}

SVector expand_reciprocal(double x, bool prefer_finite, int max_terms) {
  if (!(x >= 0.5 && x <= 1.0)) throw DomainError("expand_reciprocal: x outside [1/2, 1]");
  return expand_reciprocal(Rational::from_double(x), prefer_finite, max_terms);
}

Rational grid_point(int m, std::int64_t n) {
  if (m < 1 || m > 60) throw DomainError("grid_point: M out of range");
  const std::int64_t half = std::int64_t{1} << (m - 1);
  if (n < 0 || n >= half) throw DomainError("grid_point: n out of range");
  const std::int64_t p = std::int64_t{1} << m;
  return Rational(p, p + 2 * n + 1);
}

std::vector<Rational> grid_points(int m) {
  if (m < 1 || m > 30) throw DomainError("grid_points: M out of range");
  const std::int64_t count = std::int64_t{1} << (m - 1);
  std::vector<Rational> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 0; n < count; ++n) pts.push_back(grid_point(m, n));
  return pts;
}

InvariantReport check_invariants(const ThetaVector& theta, double slack) {
  InvariantReport rep;
  const auto& c = theta.components();
  if (c.empty()) return rep;
  const auto b = theta.suffix_masses();

  double total = theta.tail_mass();
  for (double v : c) total += v;
  rep.sums_to_one = std::abs(total - 1.0) <= slack;
  rep.leading_in_range = c[0] >= 0.5 - slack && c[0] <= 1.0 + slack;

  rep.component_bounds = true;
  rep.suffix_dominated = true;
  rep.partial_sum_bounds = true;
  double partial = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const double bound = 1.0 / (std::ldexp(1.0, k) - 1.0);
    if (c[i] > bound + slack) rep.component_bounds = false;
    if (b[i] > c[i] + slack) rep.suffix_dominated = false;
    partial += c[i];
    if (partial < 1.0 - std::ldexp(1.0, -(k - 1)) - slack) rep.partial_sum_bounds = false;
  }
  return rep;
}

}  // namespace greedy_riesz::binary
