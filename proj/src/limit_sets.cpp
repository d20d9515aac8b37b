#include "greedy_riesz/limit_sets.hpp"

#include <algorithm>
#include <cmath>

#include "greedy_riesz/arith_fn.hpp"
#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/numeric.hpp"

namespace greedy_riesz::limits {

namespace {

binary::ThetaVector theta_of(const Rational& x, bool prefer_finite) {
  return binary::expand_reciprocal(x, prefer_finite).theta();
}

Rational exact_x(double x) {
  if (!(x >= 0.5 && x <= 1.0)) throw DomainError("x must lie in [1/2, 1]");
  return Rational::from_double(x);
}

}  // namespace

double H_cal(const Rational& x, double s, double tol, bool prefer_finite) {
  if (!(s > -1.0)) throw DomainError("H_cal requires s > -1");
  return arith::H(theta_of(x, prefer_finite), s, tol);
}

double K_cal(const Rational& x, double tol, bool prefer_finite) {
  return arith::K(theta_of(x, prefer_finite), tol);
}

double R_cal(const Rational& x, double tol, bool prefer_finite) {
  return arith::R(theta_of(x, prefer_finite), tol);
}

double G_cal(const Rational& x, double s, double tol) {
  if (!(s > 0.0)) throw DomainError("G_cal requires s > 0");
  return arith::G(theta_of(x, true), s, tol);
}

double Lambda_tilde(const Rational& x, double tol) { return arith::Lambda(theta_of(x, true), tol); }

double H_cal(double x, double s, double tol) { return H_cal(exact_x(x), s, tol); }
double K_cal(double x, double tol) { return K_cal(exact_x(x), tol); }
double R_cal(double x, double tol) { return R_cal(exact_x(x), tol); }
double G_cal(double x, double s, double tol) { return G_cal(exact_x(x), s, tol); }
double Lambda_tilde(double x, double tol) { return Lambda_tilde(exact_x(x), tol); }

bool h_scan_maximizes(double s) { return !(s > 0.0 && s < 1.0); }

double scan_error_bound(double s, int m) {
  if (!(s > -1.0) || s == 0.0 || s == 1.0) throw DomainError("no grid error bound for this s");
  if (s < 0.0)
    return std::exp2((1.0 - m) * (s + 1.0)) / (kLn2 * std::expm1((s + 1.0) * kLn2));
  return std::exp2(s - (m - 1.0));
}

ScanResult scan_extremum(int m, ScanTarget target, double s, unsigned jobs) {
  if (m < 1 || m > 24) throw DomainError("scan_extremum: M must lie in [1, 24]");
  ScanResult res;
  res.m = m;
  res.target = target;
  if (target == ScanTarget::H) {
    if (!(s > -1.0)) throw DomainError("scan_extremum: H scans require s > -1");
    if (s == 0.0 || s == 1.0) throw DomainError("scan_extremum: H(x, s) is identically 1 here");
    res.s = s;
    res.maximize = h_scan_maximizes(s);
    res.error_bound = scan_error_bound(s, m);
  } else {
    res.maximize = true;
  }

  const auto pts = binary::grid_points(m);
  res.values.resize(pts.size());
  parallel_chunks(pts.size(), jobs, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      const auto theta = theta_of(pts[i], true);
      double v = 0.0;
      switch (target) {
        case ScanTarget::H: v = arith::H(theta, s); break;
        case ScanTarget::K: v = arith::K(theta); break;
        case ScanTarget::R: v = arith::R(theta); break;
      }
      res.values[i] = {pts[i], v};
    }
  });

  // Values are ordered by decreasing x, so scan from the end to favour small x on ties.
  std::size_t best = res.values.size() - 1;
  for (std::size_t i = res.values.size(); i-- > 0;) {
    const double v = res.values[i].value;
    const double cur = res.values[best].value;
    if (res.maximize ? v > cur : v < cur) best = i;
  }
  res.arg_index = best;
  res.arg = res.values[best].x;
  res.extremum = res.values[best].value;
  return res;
}

Interval interval_estimate(double s, int m, unsigned jobs) {
  if (!(s > -1.0)) throw DomainError("interval_estimate requires s > -1");
  if (s == 0.0) return {0.0, scan_extremum(m, ScanTarget::R, 0.0, jobs).extremum};
  if (s == 1.0) return {0.0, scan_extremum(m, ScanTarget::K, 0.0, jobs).extremum};
  const double d = scan_extremum(m, ScanTarget::H, s, jobs).extremum;
  if (s > 0.0 && s < 1.0) return {d, 1.0};
  return {1.0, d};
}

double stationarity_residual(const Rational& x, double s) {
  if (!(s > 0.0) || s == 1.0) throw DomainError("stationarity_residual requires s > 0, s != 1");
  const double factor = 2.0 * std::expm1(s * kLn2) / (s + 1.0);
  if (x == Rational(1)) {
    // 1 = sum_{j>=1} 2^{-j}: the sum of (2^{-j})^s is 1/(2^s - 1)
    return H_cal(x, s) - factor / std::expm1(s * kLn2);
  }
  const auto theta = theta_of(x, false);
  return arith::H(theta, s) - factor * arith::G(theta, s);
}

double stationarity_residual(double x, double s) { return stationarity_residual(exact_x(x), s); }

double ChildIdentities::max_mismatch() const {
  return std::max(std::abs(odd_lhs - odd_rhs), std::abs(even_lhs - even_rhs));
}

ChildIdentities child_identities(int m, std::int64_t n, double s) {
  if (m < 1 || m > 40) throw DomainError("child_identities: M out of range");
  const Rational x = binary::grid_point(m, n);
  const Rational xo = binary::grid_point(m + 1, 2 * n + 1);
  const Rational xe = binary::grid_point(m + 1, 2 * n);
  const auto sv = binary::expand_reciprocal(x, true);
  const auto& k = sv.exponents;
  const std::size_t p = k.size();

  const double hx = arith::H(sv.theta(), s);
  const double ho = arith::H(theta_of(xo, true), s);
  const double he = arith::H(theta_of(xe, true), s);
  const double xd = x.to_double();
  const double xod = xo.to_double();
  const double odd_ratio = (xo / x).to_double();
  const double even_ratio = (x / xe).to_double();
  const double c = std::expm1(s * kLn2) / std::ldexp(1.0, m);

  CompensatedSum all;
  CompensatedSum but_last;
  for (std::size_t j = 0; j < p; ++j) {
    const double t = std::exp2(-k[j] * s);
    all += t;
    if (j + 1 < p) but_last += t;
  }
  const double tail = std::exp2(-(m + 1.0) * (s + 1.0));

  ChildIdentities out;
  out.odd_lhs = hx - ho;
  out.odd_rhs = -std::expm1((s + 1.0) * std::log(odd_ratio)) * hx -
                std::pow(xod, s + 1.0) * (tail + c * all.value());
  out.even_lhs = hx - he;
  out.even_rhs = std::expm1((s + 1.0) * std::log(even_ratio)) * he +
                 std::pow(xd, s + 1.0) * (std::expm1((s + 1.0) * kLn2) * tail + c * but_last.value());
  return out;
}

}  // namespace greedy_riesz::limits
