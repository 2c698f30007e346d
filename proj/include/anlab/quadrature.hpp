#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anlab/common.hpp"
#include "anlab/discfun.hpp"

namespace anlab {

template <class T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  int nodes_used = 0;
  bool converged = false;
  std::vector<double> history;  // successive-difference trace of the trapezoid pass
};

struct CircleOptions {
  int min_nodes = 32;
  int max_nodes = 1 << 20;
  // After the trapezoid budget is spent, retry with adaptive Gauss-Kronrod
  // panels, which split around sharp peaks and near-zeros of the integrand.
  bool adaptive_fallback = true;
};

// (1/2pi) int_0^{2pi} g(r e^{it}) dt. Throws ToleranceNotMet (carrying the best
// value) if neither the trapezoid pass nor the panel fallback converges.
// An overflowing integrand returns value = +inf with converged = false.
QuadResult<double> circle_mean(const std::function<double(cplx)>& g, double r, double tol,
                               const CircleOptions& opts = {});
QuadResult<cplx> circle_mean_complex(const std::function<cplx(cplx)>& g, double r, double tol,
                                     const CircleOptions& opts = {});

// Circle mean of log|f|. A contour passing within 1e-13 of a zero is moved
// outward by 1e-9 (up to 5 times); `radius` reports the radius used.
// Factor products are integrated factor by factor through the substitution
// u = n theta, which keeps lacunary exponents tractable.
struct LogMean {
  QuadResult<double> quad;
  double radius = 0.0;
};
LogMean circle_mean_log_abs(const DiscFunction& f, double r, double tol);

struct DiscIntegralOptions {
  int j_max = 40;
  int circle_max_nodes = 1 << 12;
};

struct DiscIntegral {
  QuadResult<double> quad;
  bool divergent = false;
  std::string growth;         // "", "logarithmic", "power", "overflow"
  double growth_rate = 0.0;   // per-panel ratio (power) or per-panel increment (log)
  std::vector<double> panels; // contribution of each radial panel
};

// (alpha+1) int_D (1-|z|^2)^alpha g(z) dA(z) with dA normalized to unit mass.
// Radial panels [1-2^{1-j}, 1-2^{-j}] with 16-point Gauss-Legendre nodes,
// geometric tail extrapolation, and a divergence test on the panel sums.
DiscIntegral disc_integral(const std::function<double(cplx)>& g, double alpha, double tol,
                           const DiscIntegralOptions& opts = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace anlab
