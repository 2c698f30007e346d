#include "anlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "anlab/errors.hpp"

namespace anlab {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double v) { return std::abs(v); }
double magnitude(cplx v) { return std::abs(v); }
bool finite(double v) { return std::isfinite(v); }
bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T s = f(c - dx) + f(c + dx);
    kronrod += s * kWgk[j];
    if (j % 2 == 1) gauss += s * kWg[j / 2];
  }
  return {a, b, kronrod * h, magnitude((kronrod - gauss) * h)};
}

template <class T, class F>
QuadResult<T> adaptive_circle(const F& g, double r, double tol, int max_panels) {
  auto f = [&](double t) { return g(std::polar(r, t)); };
  std::vector<Panel<T>> panels;
  constexpr int kInitial = 16;
  for (int i = 0; i < kInitial; ++i)
    panels.push_back(gk15<T>(f, kTwoPi * i / kInitial, kTwoPi * (i + 1) / kInitial));
  QuadResult<T> out;
  out.nodes_used = 15 * kInitial;
  const double target = tol * kTwoPi;
  while (true) {
    T total{};
    double err = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      err += p.error;
    }
    out.value = total / kTwoPi;
    out.error_estimate = err / kTwoPi;
    if (!finite(total)) {
      out.converged = false;
      return out;
    }
    if (err <= target) {
      out.converged = true;
      return out;
    }
    if (static_cast<int>(panels.size()) >= max_panels) return out;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double a = worst->a, b = worst->b, m = 0.5 * (a + b);
    *worst = gk15<T>(f, a, m);
    panels.push_back(gk15<T>(f, m, b));
    out.nodes_used += 30;
  }
}

template <class T, class F>
QuadResult<T> circle_mean_impl(const F& g, double r, double tol, const CircleOptions& opts) {
  QuadResult<T> out;
  int n = 8;
  T sum{};
  for (int k = 0; k < n; ++k) sum += g(std::polar(r, kTwoPi * k / n));
  T prev = sum / static_cast<double>(n);
  out.nodes_used = n;
  int agreements = 0;
  while (true) {
    for (int k = 1; k < 2 * n; k += 2) sum += g(std::polar(r, kTwoPi * k / (2 * n)));
    n *= 2;
    out.nodes_used = n;
    const T mean = sum / static_cast<double>(n);
    if (!finite(mean)) {
      out.value = mean;
      out.error_estimate = std::numeric_limits<double>::infinity();
      out.converged = false;
      return out;
    }
    const double diff = magnitude(mean - prev);
    out.history.push_back(diff);
    out.value = mean;
    out.error_estimate = diff;
    prev = mean;
    agreements = diff < tol ? agreements + 1 : 0;
    if (agreements >= 2 && n >= opts.min_nodes) {
      out.converged = true;
      return out;
    }
    if (n >= opts.max_nodes) break;
  }
  if (opts.adaptive_fallback) {
    auto panel = adaptive_circle<T>(g, r, tol, 4000);
    panel.nodes_used += out.nodes_used;
    panel.history = std::move(out.history);
    if (panel.converged || panel.error_estimate < out.error_estimate) return panel;
  }
  return out;
}

}  // namespace

QuadResult<double> circle_mean(const std::function<double(cplx)>& g, double r, double tol,
                               const CircleOptions& opts) {
  auto res = circle_mean_impl<double>(g, r, tol, opts);
  if (!res.converged && std::isfinite(res.value))
    throw ToleranceNotMet("circle_mean did not converge", res.value, res.error_estimate);
  if (!std::isfinite(res.value)) res.value = std::numeric_limits<double>::infinity();
  return res;
}

QuadResult<cplx> circle_mean_complex(const std::function<cplx(cplx)>& g, double r, double tol,
                                     const CircleOptions& opts) {
  auto res = circle_mean_impl<cplx>(g, r, tol, opts);
  if (!res.converged && finite(res.value))
    throw ToleranceNotMet("circle_mean did not converge", std::abs(res.value), res.error_estimate);
  return res;
}

LogMean circle_mean_log_abs(const DiscFunction& f, double r, double tol) {
  if (!(r > 0 && r < 1)) throw DomainError("circle_mean_log_abs: radius must be in (0, 1)");
  const auto* fp = std::get_if<node::FactorProduct>(&f.node());
  double radius = r;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    bool near_zero = false;
    if (fp) {
      for (const auto& fac : fp->factors) {
        const double a = fac.c * std::pow(radius, static_cast<double>(fac.n));
        if (std::abs(a - 1.0) < 1e-13) near_zero = true;
      }
    } else {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (int k = 0; k < 1024; ++k) {
        const double v = std::abs(f(std::polar(radius, kTwoPi * k / 1024)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi < 1e-300) throw DegenerateInput("log|f| mean: f vanishes on the whole circle");
      near_zero = lo < 1e-13 * std::max(1.0, hi);
    }
    if (!near_zero) break;
    if (attempt == 5)
      throw ToleranceNotMet("log|f| mean: contour stays within 1e-13 of a zero after 5 nudges",
                            radius, 0.0);
    radius = radius + 1e-9 < 1.0 ? radius + 1e-9 : radius - 1e-9;
  }
  LogMean out;
  out.radius = radius;
  if (fp) {
    // mean_theta log|1 + a e^{i n theta}| = mean_u log|1 + a e^{iu}|.
    out.quad.converged = true;
    for (const auto& fac : fp->factors) {
      const double a = fac.c * std::pow(radius, static_cast<double>(fac.n));
      auto g = [a](cplx zeta) { return std::log(std::abs(1.0 + a * zeta)); };
      const auto q = circle_mean(g, 1.0, tol / static_cast<double>(fp->factors.size()));
      out.quad.value += q.value;
      out.quad.error_estimate += q.error_estimate;
      out.quad.nodes_used += q.nodes_used;
    }
    return out;
  }
  auto g = [&f](cplx z) {
    const cplx v = f(z);
    if (is_overflow(v)) return std::numeric_limits<double>::infinity();
    return std::log(std::abs(v));
  };
  out.quad = circle_mean(g, radius, tol);
  return out;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

DiscIntegral disc_integral(const std::function<double(cplx)>& g, double alpha, double tol,
                           const DiscIntegralOptions& opts) {
  if (!(alpha > -1)) throw DomainError("disc_integral: alpha must be > -1");
  static const auto rule = [] {
    std::pair<std::vector<double>, std::vector<double>> xw;
    gauss_legendre(16, xw.first, xw.second);
    return xw;
  }();
  const auto& [gx, gw] = rule;

  DiscIntegral out;
  CircleOptions copts;
  copts.max_nodes = opts.circle_max_nodes;
  double sum = 0.0, err = 0.0;
  std::vector<double> extrapolated;
  double last_mean = 1.0;

  auto mass = [alpha](double s) { return std::pow(s * (2.0 - s), alpha + 1.0); };

  for (int j = 1; j <= opts.j_max; ++j) {
    const double sa = std::ldexp(1.0, -(j - 1));  // 1 - r at the inner edge
    const double sb = std::ldexp(1.0, -j);
    const double panel_mass = mass(sa) - mass(sb);
    const double scale = std::max(1.0, std::abs(sum));
    double ctol = 0.02 * tol * scale / std::max(panel_mass, 1e-300);
    ctol = std::min(ctol, 1e-3 * std::max(1.0, std::abs(last_mean)));

    double contrib = 0.0, contrib_err = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double r = 1.0 - (sb + (sa - sb) * 0.5 * (1.0 - gx[i]));
      const double s = 1.0 - r;
      const double radial = (alpha + 1.0) * 2.0 * r * std::pow(s * (2.0 - s), alpha) * 0.5 * (sa - sb) * gw[i];
      QuadResult<double> m;
      if (r == 0.0) {
        m.value = g(0.0);
        m.converged = true;
      } else {
        m = circle_mean_impl<double>(g, r, ctol, copts);
      }
      out.quad.nodes_used += std::max(1, m.nodes_used);
      if (!std::isfinite(m.value)) {
        out.divergent = true;
        out.growth = "overflow";
        out.quad.value = std::numeric_limits<double>::infinity();
        out.quad.error_estimate = std::numeric_limits<double>::infinity();
        out.panels.push_back(std::numeric_limits<double>::infinity());
        return out;
      }
      last_mean = m.value;
      contrib += radial * m.value;
      contrib_err += std::abs(radial) * m.error_estimate;
    }
    out.panels.push_back(contrib);
    sum += contrib;
    err += contrib_err;

    const auto& c = out.panels;
    const std::size_t k = c.size() - 1;
    // Divergence: three consecutive panels each >= 0.9x the previous, past panel 10.
    if (j >= 13) {
      bool grows = true;
      for (std::size_t i = k - 2; i <= k; ++i)
        grows = grows && c[i] > 0 && c[i - 1] > 0 && c[i] >= 0.9 * c[i - 1];
      if (grows) {
        const double q = std::cbrt((c[k] / c[k - 1]) * (c[k - 1] / c[k - 2]) * (c[k - 2] / c[k - 3]));
        out.divergent = true;
        if (q < 1.1) {
          out.growth = "logarithmic";
          out.growth_rate = c[k];
        } else {
          out.growth = "power";
          out.growth_rate = q;
        }
        out.quad.value = sum;
        out.quad.error_estimate = std::numeric_limits<double>::infinity();
        out.quad.converged = false;
        return out;
      }
    }

    double total = sum;
    double q = 1.0;
    if (k >= 1 && c[k - 1] != 0.0) {
      q = c[k] / c[k - 1];
      if (q >= 0.0 && q < 0.95) total += c[k] * q / (1.0 - q);
    } else if (k >= 1 && c[k] == 0.0) {
      q = 0.0;
    }
    extrapolated.push_back(total);
    if (j >= 6) {
      const std::size_t e = extrapolated.size() - 1;
      const double sc = std::max(1.0, std::abs(total));
      const double d1 = std::abs(extrapolated[e] - extrapolated[e - 1]);
      const double d2 = std::abs(extrapolated[e - 1] - extrapolated[e - 2]);
      if (q < 0.9 && d1 <= 0.1 * tol * sc && d2 <= tol * sc) {
        out.quad.value = total;
        out.quad.error_estimate = d1 + err;
        out.quad.converged = out.quad.error_estimate <= tol * sc;
        return out;
      }
    }
  }
  const std::size_t e = extrapolated.size() - 1;
  out.quad.value = extrapolated[e];
  out.quad.error_estimate = std::abs(extrapolated[e] - extrapolated[e - 1]) + err;
  out.quad.converged = out.quad.error_estimate <= tol * std::max(1.0, std::abs(out.quad.value));
  return out;
}

}  // namespace anlab
