#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>

namespace anlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Magnitudes above this are reported as overflow instead of a number.
inline constexpr double kOverflowCeiling = 1e300;

inline cplx overflow_value() {
  return {std::numeric_limits<double>::infinity(), 0.0};
}

inline bool is_overflow(cplx z) {
  return !std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kOverflowCeiling;
}

inline cplx tag_overflow(cplx z) { return is_overflow(z) ? overflow_value() : z; }

// Maximizes h on [a, b] with Brent's method; returns (argmax, max).
std::pair<double, double> maximize_on_interval(const std::function<double(double)>& h, double a,
                                               double b);

// Maximum of a 2*pi periodic function: uniform sampling with doubling until
// the sampled maximum settles, then a Brent polish around the best sample.
// `seed` is included among the sample angles.
struct CircleMax {
  double theta = 0.0;
  double value = 0.0;
  int evaluations = 0;
};
CircleMax maximize_on_circle(const std::function<double(double)>& h, double seed = 0.0,
                             int n0 = 64, int n_max = 1 << 14, double rel_tol = 1e-3,
                             double abs_tol = 0.0);

// SplitMix64: small, portable, fully specified generator. Reports serialize
// the seed, so every draw must be reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers store results
// by index, so output order never depends on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace anlab
