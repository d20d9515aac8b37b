#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <numbers>
#include <thread>
#include <vector>

namespace greedy_riesz {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// sin(pi x), exact zeros at integers.
inline double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  if (r > 1.0) return -std::sin(kPi * (r - 1.0));
  return std::sin(kPi * r);
}

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Runs body(begin, end, chunk) over [0, count) in contiguous chunks, one per
/// worker. Chunk boundaries depend only on (count, jobs); callers that reduce
/// per chunk and then combine in chunk order get results independent of timing.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned jobs, Body&& body) {
  jobs = std::max(1u, resolve_jobs(jobs));
  const std::size_t chunks = std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    body(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t b = count * c / chunks;
    const std::size_t e = count * (c + 1) / chunks;
    workers.emplace_back([&body, &errors, b, e, c] {
      try {
        body(b, e, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace greedy_riesz
