#include "anlab/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace anlab {

std::pair<double, double> maximize_on_interval(const std::function<double(double)>& h, double a,
                                               double b) {
  if (b < a) std::swap(a, b);
  auto neg = [&](double x) {
    const double v = h(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : -v;
  };
  // Search in the offset from the midpoint so that Brent's absolute
  // tolerance floor resolves narrow peaks.
  const double c = 0.5 * (a + b);
  auto shifted = [&](double d) { return neg(c + d); };
  std::uintmax_t iters = 100;
  auto [d, fd] = boost::math::tools::brent_find_minima(shifted, a - c, b - c, 50, iters);
  return {c + d, -fd};
}

CircleMax maximize_on_circle(const std::function<double(double)>& h, double seed, int n0,
                             int n_max, double rel_tol, double abs_tol) {
  CircleMax best;
  best.theta = seed;
  best.value = -std::numeric_limits<double>::infinity();
  int n = std::max(8, n0);
  double prev = -std::numeric_limits<double>::infinity();
  while (true) {
    // Only the new (odd-index) nodes are evaluated after the first pass.
    const int step = (prev == -std::numeric_limits<double>::infinity()) ? 1 : 2;
    const int start = step == 1 ? 0 : 1;
    for (int i = start; i < n; i += step) {
      const double t = seed + kTwoPi * i / n;
      const double v = h(t);
      ++best.evaluations;
      if (v > best.value || std::isinf(v)) {
        best.value = v;
        best.theta = t;
      }
      if (std::isinf(v)) return best;
    }
    const double change = std::abs(best.value - prev);
    if (change <= rel_tol * std::abs(best.value) || change <= abs_tol || n >= n_max)
      break;
    prev = best.value;
    n *= 2;
  }
  const double half = kTwoPi / n;
  auto [t, v] = maximize_on_interval(h, best.theta - half, best.theta + half);
  best.evaluations += 60;
  if (v > best.value) {
    best.value = v;
    best.theta = t;
  }
  return best;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace anlab
