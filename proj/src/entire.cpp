#include "anlab/entire.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anlab/errors.hpp"

namespace anlab {
namespace {

constexpr double kLogCeiling = 690.0;  // log(1e300) ~ 690.8
constexpr long kMaxSeriesTerms = 400000;

// log|cos w| without overflow for large |Im w|.
double log_abs_cos(cplx w) {
  const double y = w.imag();
  if (std::abs(y) < 20.0) return std::log(std::abs(std::cos(w)));
  const cplx i{0.0, 1.0};
  const cplx rest = y > 0 ? std::exp(2.0 * i * w) : std::exp(-2.0 * i * w);
  return std::abs(y) - std::log(2.0) + std::log(std::abs(1.0 + rest));
}

double log_abs_sin(cplx w) { return log_abs_cos(w - kPi / 2.0); }

// sin((m) pi / 2) for integer m.
double quarter_sine(long m) {
  switch (((m % 4) + 4) % 4) {
    case 1: return 1.0;
    case 3: return -1.0;
    default: return 0.0;
  }
}

}  // namespace

EntireFunction EntireFunction::exp() { return scaled_exp(1.0, 1.0); }

EntireFunction EntireFunction::scaled_exp(cplx lambda, cplx amp) {
  EntireFunction f(Kind::ScaledExp);
  f.lambda_ = lambda;
  f.amp_ = amp;
  return f;
}

EntireFunction EntireFunction::cos_sqrt() { return EntireFunction(Kind::CosSqrt); }

EntireFunction EntireFunction::sine() { return EntireFunction(Kind::Trig); }

EntireFunction EntireFunction::polynomial(std::vector<cplx> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == cplx{}) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  EntireFunction f(Kind::Polynomial);
  f.coeffs_ = std::move(coeffs);
  return f;
}

EntireFunction EntireFunction::constant(cplx a) { return polynomial({a}); }

EntireFunction EntireFunction::identity() { return polynomial({0.0, 1.0}); }

bool EntireFunction::is_constant() const {
  return kind_ == Kind::Polynomial && coeffs_.size() == 1;
}

int EntireFunction::degree() const {
  return kind_ == Kind::Polynomial ? static_cast<int>(coeffs_.size()) - 1 : -1;
}

bool EntireFunction::has_nonnegative_coefficients() const {
  auto nonneg_real = [](cplx c) { return c.imag() == 0.0 && c.real() >= 0.0; };
  switch (kind_) {
    case Kind::Polynomial:
      return std::all_of(coeffs_.begin(), coeffs_.end(), nonneg_real);
    case Kind::ScaledExp:
      return nonneg_real(amp_) && nonneg_real(lambda_);
    default:
      return false;
  }
}

std::optional<GrowthMeta> EntireFunction::declared_growth() const {
  switch (kind_) {
    case Kind::Polynomial: return GrowthMeta{0.0, 0.0};
    case Kind::ScaledExp:
      if (amp_ == cplx{} || lambda_ == cplx{}) return GrowthMeta{0.0, 0.0};
      return GrowthMeta{1.0, std::abs(lambda_)};
    case Kind::CosSqrt: return GrowthMeta{0.5, 1.0};
    case Kind::Trig: return GrowthMeta{1.0, 1.0};
  }
  return std::nullopt;
}

LogCoeff EntireFunction::coefficient(long n) const {
  LogCoeff c;
  if (n < 0) return c;
  const double log_amp = std::log(std::abs(amp_));
  const double arg_amp = std::arg(amp_);
  switch (kind_) {
    case Kind::Polynomial: {
      if (n >= static_cast<long>(coeffs_.size()) || coeffs_[n] == cplx{}) return c;
      c.log_abs = std::log(std::abs(coeffs_[n]));
      c.unit = coeffs_[n] / std::abs(coeffs_[n]);
      return c;
    }
    case Kind::ScaledExp: {
      if (amp_ == cplx{}) return c;
      if (lambda_ == cplx{}) {
        if (n == 0) {
          c.log_abs = log_amp;
          c.unit = std::polar(1.0, arg_amp);
        }
        return c;
      }
      c.log_abs = log_amp + n * std::log(std::abs(lambda_)) - std::lgamma(n + 1.0);
      c.unit = std::polar(1.0, arg_amp + n * std::arg(lambda_));
      return c;
    }
    case Kind::CosSqrt: {
      const long k = deriv_;
      c.log_abs = log_amp + std::lgamma(n + k + 1.0) - std::lgamma(n + 1.0) -
                  std::lgamma(2.0 * (n + k) + 1.0);
      c.unit = std::polar(((n + k) % 2 == 0) ? 1.0 : -1.0, arg_amp);
      return c;
    }
    case Kind::Trig: {
      const double s = quarter_sine(n + deriv_);
      if (s == 0.0) return c;
      c.log_abs = log_amp - std::lgamma(n + 1.0);
      c.unit = std::polar(s, arg_amp);
      return c;
    }
  }
  return c;
}

cplx EntireFunction::eval_series(cplx u, double* tail_bound) const {
  if (kind_ == Kind::Polynomial) {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    if (tail_bound) *tail_bound = 0.0;
    return tag_overflow(acc);
  }
  const double log_u = std::log(std::abs(u));
  const double arg_u = std::arg(u);
  if (u == cplx{}) {
    if (tail_bound) *tail_bound = 0.0;
    return coefficient(0).value();
  }
  // Majorant b_n >= |a_n| with non-increasing ratios b_{n+1}/b_n.
  const double log_amp = std::log(std::abs(amp_));
  auto log_majorant = [&](long n) {
    if (kind_ == Kind::Trig) return log_amp - std::lgamma(n + 1.0);
    return coefficient(n).log_abs;
  };
  cplx sum{};
  double bound = std::numeric_limits<double>::infinity();
  for (long n = 0; n < kMaxSeriesTerms; ++n) {
    const LogCoeff a = coefficient(n);
    if (!a.is_zero()) {
      const double log_term = a.log_abs + n * log_u;
      if (log_term > kLogCeiling) {
        if (tail_bound) *tail_bound = std::numeric_limits<double>::infinity();
        return overflow_value();
      }
      sum += std::exp(log_term) * a.unit * std::polar(1.0, n * arg_u);
    }
    const double lb1 = log_majorant(n + 1) + (n + 1) * log_u;
    const double lb2 = log_majorant(n + 2) + (n + 2) * log_u;
    const double q = std::exp(lb2 - lb1);
    if (q < 1.0) {
      bound = std::exp(lb1) / (1.0 - q);
      if (bound <= 1e-17 * (1.0 + std::abs(sum))) break;
    }
  }
  if (tail_bound) *tail_bound = bound;
  return tag_overflow(sum);
}

cplx EntireFunction::operator()(cplx u) const {
  switch (kind_) {
    case Kind::Polynomial:
      return eval_series(u);
    case Kind::ScaledExp: {
      if (amp_ == cplx{}) return 0.0;
      const cplx e = lambda_ * u;
      if (e.real() + std::log(std::abs(amp_)) > kLogCeiling) return overflow_value();
      return tag_overflow(amp_ * std::exp(e));
    }
    case Kind::CosSqrt: {
      if (deriv_ == 0) {
        const cplx w = std::sqrt(u);
        if (std::abs(w.imag()) > kLogCeiling) return overflow_value();
        return tag_overflow(amp_ * std::cos(w));
      }
      if (deriv_ == 1 && std::abs(u) > 1e-4) {
        const cplx w = std::sqrt(u);
        if (std::abs(w.imag()) > kLogCeiling) return overflow_value();
        return tag_overflow(amp_ * (-std::sin(w) / (2.0 * w)));
      }
      return eval_series(u);
    }
    case Kind::Trig: {
      const cplx w = u + deriv_ * (kPi / 2.0);
      if (std::abs(w.imag()) > kLogCeiling) return overflow_value();
      // sin(u + k pi/2) cycles through sin, cos, -sin, -cos exactly.
      cplx base;
      switch (deriv_ % 4) {
        case 0: base = std::sin(u); break;
        case 1: base = std::cos(u); break;
        case 2: base = -std::sin(u); break;
        default: base = -std::cos(u); break;
      }
      return tag_overflow(amp_ * base);
    }
  }
  return 0.0;
}

double EntireFunction::log_abs(cplx u) const {
  const double log_amp = std::log(std::abs(amp_));
  switch (kind_) {
    case Kind::ScaledExp:
      return log_amp + (lambda_ * u).real();
    case Kind::CosSqrt:
      if (deriv_ == 0) return log_amp + log_abs_cos(std::sqrt(u));
      if (deriv_ == 1 && std::abs(u) > 1e-4) {
        const cplx w = std::sqrt(u);
        return log_amp + log_abs_sin(w) - std::log(2.0 * std::abs(w));
      }
      break;
    case Kind::Trig:
      return log_amp + log_abs_sin(u + deriv_ * (kPi / 2.0));
    case Kind::Polynomial:
      break;
  }
  const cplx v = eval_series(u);
  if (!is_overflow(v)) return std::log(std::abs(v));
  // Majorant sum |a_n| |u|^n in log space: an upper bound for log|phi(u)|.
  const double log_u = std::log(std::abs(u));
  double m = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  for (long n = 0; n < kMaxSeriesTerms; ++n) {
    const LogCoeff a = coefficient(n);
    if (a.is_zero()) continue;
    const double t = a.log_abs + n * log_u;
    logs.push_back(t);
    m = std::max(m, t);
    if (t < m - 60.0 && n > 10) break;
  }
  double s = 0.0;
  for (double t : logs) s += std::exp(t - m);
  return m + std::log(s);
}

EntireFunction EntireFunction::derivative() const {
  EntireFunction d = *this;
  switch (kind_) {
    case Kind::Polynomial: {
      std::vector<cplx> c;
      for (std::size_t n = 1; n < coeffs_.size(); ++n) c.push_back(static_cast<double>(n) * coeffs_[n]);
      return polynomial(std::move(c));
    }
    case Kind::ScaledExp:
      d.amp_ = amp_ * lambda_;
      return d;
    case Kind::CosSqrt:
    case Kind::Trig:
      d.deriv_ = deriv_ + 1;
      return d;
  }
  return d;
}

EntireFunction EntireFunction::scaled(cplx factor) const {
  if (kind_ == Kind::Polynomial) {
    std::vector<cplx> c = coeffs_;
    for (auto& x : c) x *= factor;
    return polynomial(std::move(c));
  }
  EntireFunction d = *this;
  d.amp_ = amp_ * factor;
  return d;
}

std::string EntireFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Polynomial:
      os << "poly(";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      os << ")";
      break;
    case Kind::ScaledExp: os << amp_ << "*exp(" << lambda_ << "*u)"; break;
    case Kind::CosSqrt: os << amp_ << "*cos_sqrt^(" << deriv_ << ")"; break;
    case Kind::Trig: os << amp_ << "*sin^(" << deriv_ << ")"; break;
  }
  return os.str();
}

EntireFunction::Parts EntireFunction::parts() const {
  Parts p;
  switch (kind_) {
    case Kind::Polynomial: p.family = "poly"; break;
    case Kind::ScaledExp: p.family = "scaledexp"; break;
    case Kind::CosSqrt: p.family = "cossqrt"; break;
    case Kind::Trig: p.family = "trig"; break;
  }
  p.coeffs = coeffs_;
  p.lambda = lambda_;
  p.amp = amp_;
  p.deriv = deriv_;
  return p;
}

double log_max_modulus(const EntireFunction& phi, double r) {
  if (r < 0) throw DomainError("max_modulus: negative radius");
  if (r == 0.0) return std::log(std::abs(phi(0.0)));
  if (phi.has_nonnegative_coefficients()) return phi.log_abs(r);
  auto h = [&](double t) { return phi.log_abs(std::polar(r, t)); };
  return maximize_on_circle(h, 0.0, 64, 1 << 14, 1e-12, 1e-13).value;
}

double max_modulus(const EntireFunction& phi, double r) {
  const double lm = log_max_modulus(phi, r);
  if (lm > std::log(kOverflowCeiling)) return std::numeric_limits<double>::infinity();
  return std::exp(lm);
}

namespace {

struct WindowPoint {
  long n;
  double neg_log_abs;  // -log|a_n|
};

std::vector<WindowPoint> coefficient_window(const EntireFunction& phi, int n_max) {
  if (n_max < 64) throw InvalidSpec("order/type estimate needs N >= 64");
  std::vector<WindowPoint> pts;
  for (long n = n_max / 2; n <= n_max; ++n) {
    const LogCoeff a = phi.coefficient(n);
    if (!a.is_zero()) pts.push_back({n, -a.log_abs});
  }
  if (pts.size() < 2)
    throw DegenerateInput("coefficient window [N/2, N] has fewer than two nonzero terms; use a larger N");
  return pts;
}

}  // namespace

double order_estimate(const EntireFunction& phi, int n_max) {
  if (phi.is_polynomial()) return 0.0;
  const auto pts = coefficient_window(phi, n_max);
  // -log|a_n| / n ~ (log n - log(e sigma rho)) / rho: slope in log n is 1/rho.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double x = std::log(static_cast<double>(p.n));
    const double y = p.neg_log_abs / p.n;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  if (!(slope > 0)) return std::numeric_limits<double>::infinity();
  return 1.0 / slope;
}

double type_estimate(const EntireFunction& phi, double rho, int n_max) {
  if (!(rho > 0)) throw InvalidSpec("type estimate needs rho > 0");
  if (phi.is_polynomial()) return 0.0;
  const auto pts = coefficient_window(phi, n_max);
  double best = 0.0;
  for (const auto& p : pts) {
    const double log_val = std::log(static_cast<double>(p.n)) - rho * p.neg_log_abs / p.n;
    best = std::max(best, std::exp(log_val));
  }
  return best / (std::exp(1.0) * rho);
}

SubexpThreshold subexp_threshold(const EntireFunction& phi, double bound) {
  if (!(bound > 0)) throw InvalidSpec("subexp_threshold needs bound > 0");
  SubexpThreshold out;
  for (int j = 0; j <= 40; ++j) {
    const double r = std::ldexp(1.0, j);
    out.table.emplace_back(r, log_max_modulus(phi, r) / r);
  }
  int first = static_cast<int>(out.table.size());
  for (int j = static_cast<int>(out.table.size()) - 1; j >= 0; --j) {
    if (out.table[j].second <= bound)
      first = j;
    else
      break;
  }
  if (first == static_cast<int>(out.table.size())) {
    std::ostringstream os;
    os << "log M(r)/r = " << out.table.back().second << " > " << bound << " at r = 2^40";
    throw PreconditionError("log M(r)/r -> 0: order less than one, or order one and type zero",
                            os.str());
  }
  out.r0 = out.table[first].first;
  out.log_m_r0 = out.table[first].second * out.r0;
  return out;
}

std::pair<double, double> cauchy_derivative_bound(const EntireFunction& phi, cplx u) {
  const double a = std::abs(u);
  if (a < 1.0) throw DomainError("cauchy_derivative_bound needs |u| >= 1");
  const double lhs = std::abs(phi.derivative()(u));
  const double rhs = max_modulus(phi, 2.0 * a) / (2.0 * a);
  return {lhs, rhs};
}

std::pair<double, double> cauchy_derivative_estimate(const EntireFunction& phi, cplx u) {
  const double a = std::abs(u);
  if (a < 1.0) throw DomainError("cauchy_derivative_estimate needs |u| >= 1");
  return {std::abs(phi.derivative()(u)), max_modulus(phi, 2.0 * a) / a};
}

}  // namespace anlab
