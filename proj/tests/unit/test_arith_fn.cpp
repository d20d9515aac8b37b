#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "greedy_riesz/arith_fn.hpp"
#include "greedy_riesz/binary_core.hpp"
#include "greedy_riesz/errors.hpp"
#include "oracles.hpp"

using namespace greedy_riesz;
using namespace greedy_riesz::arith;
using binary::eta;
using binary::expand_reciprocal;
using binary::grid_points;
using binary::Rational;

namespace {
const double kLog2 = std::numbers::ln2;

const ThetaVector kUnit = ThetaVector::finite({1.0});
const ThetaVector kHalving = ThetaVector::with_halving_tail(std::vector<double>{0.5});

bool is_power_of_two(std::uint64_t n) { return (n & (n - 1)) == 0; }

std::uint64_t random_non_power(std::mt19937_64& gen, std::uint64_t hi) {
  for (;;) {
    const std::uint64_t n = 3 + gen() % (hi - 2);
    if (!is_power_of_two(n)) return n;
  }
}
}  // namespace

TEST_CASE("H examples") {
  for (std::uint64_t n : {3, 7, 21, 100}) {
    CHECK(H(eta(n), 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(H(eta(n), 1) == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (double s : {-0.5, 2.0, 3.5}) CHECK(H(kUnit, s) == doctest::Approx(1.0).epsilon(1e-15));
  for (double s : {-0.5, 0.3, 2.0, 3.5}) CHECK(H(kHalving, s) == doctest::Approx(1.0).epsilon(1e-14));
  for (int p : {2, 3, 5}) {
    const std::uint64_t n = ((std::uint64_t{1} << (2 * p)) - 1) / 3;
    const double ref = 2.0 * p / 3 + 4.0 / 9 * (1 - std::pow(4.0, -p));
    CHECK(H(eta(n), -1) == doctest::Approx(ref).epsilon(1e-14));
  }
  CHECK_THROWS_AS(H(kHalving, -1), DomainError);
  CHECK_THROWS_AS(H(kHalving, -1.5), DomainError);
  CHECK_NOTHROW(H(eta(21), -1.5));
}

TEST_CASE("H, K, R, G, Lambda agree with the literal double sums") {
  auto gen = oracle::rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = 1 + gen() % (std::uint64_t{1} << 40);
    const auto th = eta(n);
    const auto t = oracle::eta_components(n);
    for (double s : {-1.5, -1.0, -0.5, 0.25, 1.0, 2.0, 3.5}) {
      const double ref = static_cast<double>(oracle::H(t, s));
      REQUIRE(std::abs(H(th, s) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
    for (double s : {0.25, 1.0, 2.5})
      REQUIRE(std::abs(G(th, s) - static_cast<double>(oracle::G(t, s))) <= 1e-13);
    REQUIRE(std::abs(K(th) - static_cast<double>(oracle::K(t))) <= 1e-13);
    REQUIRE(std::abs(R(th) - static_cast<double>(oracle::R(t))) <= 1e-13);
    REQUIRE(std::abs(Lambda(th) - static_cast<double>(oracle::Lambda(t))) <= 1e-13);
  }
}

TEST_CASE("K examples") {
  CHECK(std::abs(K(kUnit)) < 1e-15);
  CHECK(std::abs(K(kHalving)) < 1e-14);
  using mp = boost::multiprecision::cpp_bin_float_50;
  const mp a = mp(2) / 3;
  const mp b = mp(1) / 3;
  const mp ref = 2 * log(mp(2)) + a * a * log(a / 4) + b * b * log(b / 4) + 2 * b * a * log(a);
  const auto th = ThetaVector::exact({Rational(2, 3), Rational(1, 3)});
  CHECK(std::abs(K(th) - ref.convert_to<double>()) < 1e-15);
  CHECK(K(th) == doctest::Approx(0.13372).epsilon(1e-3));
}

TEST_CASE("R examples") {
  CHECK(R(kUnit) == 0.0);
  for (int k = 0; k <= 10; ++k) CHECK(std::abs(R(eta(std::uint64_t{1} << k))) < 1e-15);
  CHECK(R(eta(3)) == doctest::Approx(std::log(3.0) - 4.0 / 3 * kLog2).epsilon(1e-14));
  CHECK(R(eta(3)) == doctest::Approx(0.17441).epsilon(1e-4));
}

TEST_CASE("G and Lambda examples") {
  for (std::uint64_t n : {5, 21, 100}) CHECK(G(eta(n), 1) == doctest::Approx(1.0).epsilon(1e-15));
  for (double s : {0.5, 1.0, 2.0}) CHECK(G(kUnit, s) == 1.0);
  for (double s : {0.5, 2.0}) CHECK(G(kHalving, s) == doctest::Approx(1 / (std::pow(2.0, s) - 1)).epsilon(1e-14));
  CHECK_THROWS_AS(G(kHalving, 0), DomainError);
  CHECK_THROWS_AS(G(kHalving, -0.5), DomainError);
  CHECK(Lambda(kUnit) == 0.0);
  CHECK(Lambda(kHalving) == doctest::Approx(-2 * kLog2).epsilon(1e-14));
  CHECK(Lambda(eta(5)) == doctest::Approx(0.8 * std::log(0.8) + 0.2 * std::log(0.2)).epsilon(1e-15));
}

TEST_CASE("G and Lambda bounds on S-vectors") {
  auto gen = oracle::rng(5);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int i = 0; i < 3000; ++i) {
    const auto th = expand_reciprocal(u(gen)).theta();
    const double lam = Lambda(th, 1e-12);
    REQUIRE(lam <= 1e-15);
    REQUIRE(lam >= -2 * kLog2 - 1e-12);
    for (double s : {0.5, 1.0, 2.0}) {
      const double g = G(th, s, 1e-12);
      if (s < 1) REQUIRE(g >= 1 - 1e-12);
      if (s > 1) REQUIRE(g <= 1 + 1e-12);
      REQUIRE(g >= std::min(1.0, 1 / (std::pow(2.0, s) - 1)) - 1e-12);
      REQUIRE(g <= std::max(1.0, 1 / (std::pow(2.0, s) - 1)) + 1e-12);
    }
  }
}

TEST_CASE("truncated vectors: tail bounds and tolerance enforcement") {
  const Rational x(3, 5);
  const auto coarse = expand_reciprocal(x, true, 20).theta();
  const auto fine = expand_reciprocal(x, true, 60).theta();
  for (double s : {-0.5, 0.5, 2.0}) {
    CHECK(std::abs(H(coarse, s, 1.0) - H(fine, s, 1.0)) <= tail_bound_H(coarse, s));
    CHECK(std::abs(G(coarse, s + 1, 1.0) - G(fine, s + 1, 1.0)) <= tail_bound_G(coarse, s + 1));
  }
  CHECK(std::abs(K(coarse, 1.0) - K(fine, 1.0)) <= tail_bound_K(coarse));
  CHECK(std::abs(R(coarse, 1.0) - R(fine, 1.0)) <= tail_bound_R(coarse));
  CHECK(std::abs(Lambda(coarse, 1.0) - Lambda(fine, 1.0)) <= tail_bound_Lambda(coarse));
  CHECK_THROWS_AS(H(coarse, -0.5, 1e-14), DomainError);
  CHECK_THROWS_AS(R(coarse, 1e-14), DomainError);
  CHECK_NOTHROW(H(fine, -0.5, 1e-14));
  CHECK_NOTHROW(R(fine, 1e-14));
}

TEST_CASE("partition of the worked example") {
  const std::uint64_t n = (1U << 13) + (1U << 12) + (1U << 10) + (1U << 8) + (1U << 7) + (1U << 6) + 8 + 2 + 1;
  const auto pb = partition(eta(n));
  REQUIRE(pb.blocks.size() == 5);
  const std::vector<std::pair<std::size_t, std::size_t>> expect{{0, 1}, {2, 2}, {3, 5}, {6, 6}, {7, 8}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(pb.blocks[i].first == expect[i].first);
    CHECK(pb.blocks[i].last == expect[i].second);
    CHECK_FALSE(pb.blocks[i].infinite);
  }
  CHECK(pb.exponents == std::vector<int>{0, 1, 3, 5, 6, 7, 10, 12, 13});

  const auto unit = partition(kUnit);
  REQUIRE(unit.blocks.size() == 1);
  CHECK(unit.blocks[0].size() == 1);

  const auto halving = partition(kHalving);
  REQUIRE(halving.blocks.size() == 1);
  CHECK(halving.blocks[0].infinite);
  for (double s : {-0.5, 0.5, 2.0, 3.5}) CHECK(telescoped_H(halving, s) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(partition(ThetaVector::finite({0.6, 0.4})), StructureError);
  CHECK_THROWS_AS(relative_exponents(ThetaVector::finite({0.7, 0.2, 0.1})), StructureError);
}

TEST_CASE("block invariants and telescoping on random integers") {
  auto gen = oracle::rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + gen() % (std::uint64_t{1} << 20);
    const auto th = eta(n);
    const auto pb = partition(th);
    REQUIRE(pb.blocks.front().first == 0);
    REQUIRE(pb.blocks.back().last + 1 == th.components().size());
    for (std::size_t l = 0; l < pb.blocks.size(); ++l) {
      const auto& bl = pb.blocks[l];
      REQUIRE(pb.exponents[bl.last] == pb.exponents[bl.first] + static_cast<int>(bl.size()) - 1);
      REQUIRE(bl.theta_last - 2 * bl.b_last >= -1e-15);
      if (l + 1 < pb.blocks.size()) {
        REQUIRE(pb.blocks[l + 1].first == bl.last + 1);
        REQUIRE(pb.exponents[pb.blocks[l + 1].first] >= pb.exponents[bl.last] + 2);
      }
    }
    for (double s : {-0.5, 0.5, 2.0, 3.5}) REQUIRE(std::abs(H(th, s) - telescoped_H(pb, s)) <= 1e-12);
  }
}

TEST_CASE("telescoping on expansions with a halving tail") {
  for (int m = 1; m <= 8; ++m)
    for (const auto& x : grid_points(m)) {
      const auto th = expand_reciprocal(x, false).theta();
      const auto pb = partition(th);
      REQUIRE(pb.blocks.back().infinite);
      for (double s : {-0.5, 0.5, 2.0}) REQUIRE(std::abs(H(th, s) - telescoped_H(pb, s)) <= 1e-12);
    }
}

TEST_CASE("strict convexity of s -> H(eta(N); s)") {
  auto gen = oracle::rng(17);
  std::vector<double> grid;
  for (double s = -0.9; s <= 4.0 + 1e-9; s += 0.1) grid.push_back(s);
  for (int i = 0; i < 50; ++i) {
    const auto th = eta(random_non_power(gen, std::uint64_t{1} << 30));
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
      const double dd = H(th, grid[j - 1]) - 2 * H(th, grid[j]) + H(th, grid[j + 1]);
      REQUIRE(dd > 0);
    }
  }
}

TEST_CASE("convexity bounds and boundedness constants for N <= 2^14") {
  const std::vector<double> in_unit{0.0, 0.2, 0.5, 0.8, 1.0};
  const std::vector<double> outside{-0.9, -0.5, -0.1, 1.2, 2.0, 3.5};
  for (std::uint64_t n = 1; n <= (1U << 14); ++n) {
    const auto th = eta(n);
    for (double s : in_unit) REQUIRE(H(th, s) <= 1 + 1e-12);
    for (double s : outside) REQUIRE(H(th, s) >= 1 - 1e-12);
    for (double s : {1.0, 2.0, 3.5}) {
      const double h = H(th, s);
      REQUIRE(h > 0);
      REQUIRE(h < std::pow(2.0, s + 1) - 1);
    }
    for (double s : {0.2, 0.5, 0.9}) {
      const double h = H(th, s);
      REQUIRE(h > 0);
      REQUIRE(h < (std::pow(2.0, s + 1) - 1) / (std::pow(2.0, s) - 1));
    }
    for (double s : {-0.9, -0.5, -0.1}) {
      const double h = H(th, s);
      REQUIRE(h > 0);
      REQUIRE(h < std::pow(2.0, s + 1) / (std::pow(2.0, s + 1) - 1));
    }
    const double hm = H(th, -1) / std::log(n + 1.0);
    REQUIRE(hm > 0);
    REQUIRE(hm <= 1 / kLog2 + 1e-12);
    REQUIRE(std::abs(K(th)) <= 5 * std::log(4.0));
    const double r = R(th);
    REQUIRE(r >= -1e-15);
    REQUIRE(r < std::log(4.0 / 3));
  }
}

TEST_CASE("two expansions of a dyadic point give the same values") {
  for (int m = 1; m <= 8; ++m)
    for (const auto& x : grid_points(m)) {
      const auto fin = expand_reciprocal(x, true).theta();
      const auto inf = expand_reciprocal(x, false).theta();
      for (double s : {-0.5, 0.5, 2.0, 3.5})
        REQUIRE(std::abs(H(fin, s) - H(inf, s)) <= 1e-10 + tail_bound_H(inf, s));
      REQUIRE(std::abs(K(fin) - K(inf)) <= 1e-10 + tail_bound_K(inf));
      REQUIRE(std::abs(R(fin) - R(inf)) <= 1e-10 + tail_bound_R(inf));
    }
}

TEST_CASE("sum of theta |log theta| stays below log 4") {
  // every component lies in (0, 1], so the sum equals -Lambda
  auto gen = oracle::rng(23);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const auto th = expand_reciprocal(u(gen)).theta();
    REQUIRE(-Lambda(th, 1e-12) <= std::log(4.0) + 1e-12);
  }
  for (int m = 1; m <= 10; ++m)
    for (const auto& x : grid_points(m)) {
      REQUIRE(-Lambda(expand_reciprocal(x, true).theta()) <= std::log(4.0));
      REQUIRE(-Lambda(expand_reciprocal(x, false).theta()) <= std::log(4.0) + 1e-15);
    }
  for (std::uint64_t n = 1; n <= (1U << 14); ++n) REQUIRE(-Lambda(eta(n)) < std::log(4.0));
}
