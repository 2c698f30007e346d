#include "anlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "anlab/errors.hpp"

namespace anlab {

struct Weight::Interp {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

Weight Weight::power(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw InvalidSpec("power weight: gamma must be > 0");
  Weight w;
  w.kind_ = Kind::Power;
  w.gamma_ = gamma;
  return w;
}

Weight Weight::log() {
  Weight w;
  w.kind_ = Kind::Log;
  return w;
}

Weight Weight::custom(std::vector<double> r, std::vector<double> v) {
  if (r.size() != v.size()) throw InvalidSpec("custom weight: r and v differ in length");
  if (r.size() < 4) throw InvalidSpec("custom weight: need at least 4 table points");
  if (r.front() != 0.0) throw InvalidSpec("custom weight: table must start at r = 0");
  if (!(r.back() < 1.0)) throw InvalidSpec("custom weight: table radii must be < 1");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(v[i]) || !(v[i] > 0)) throw InvalidSpec("custom weight: v must be positive");
    if (i > 0 && !(r[i] > r[i - 1])) throw InvalidSpec("custom weight: r must increase");
    if (i > 0 && !(v[i] < v[i - 1])) throw InvalidSpec("custom weight: v must strictly decrease");
  }
  Weight w;
  w.kind_ = Kind::Custom;
  w.table_r_ = r;
  w.table_v_ = v;
  w.interp_ = std::make_shared<const Interp>(
      Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(r), std::move(v))});
  const auto check = check_weight(w);
  if (!check.ok) throw InvalidSpec("custom weight: " + check.failure);
  return w;
}

double Weight::at(double r, double s) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(s, gamma_);
    case Kind::Log:
      return 1.0 / (1.0 - std::log(s));
    case Kind::Custom: {
      const double r_last = table_r_.back();
      if (r <= r_last) return interp_->spline(r);
      return table_v_.back() * s / (1.0 - r_last);
    }
  }
  return 0.0;
}

std::string Weight::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power:
      os << "(1-r)^" << gamma_;
      break;
    case Kind::Log:
      os << "1/log(e/(1-r))";
      break;
    case Kind::Custom:
      os << "custom(" << table_r_.size() << " points)";
      break;
  }
  return os.str();
}

WeightCheck check_weight(const Weight& v) {
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(i / 64.0);
  for (int j = 7; j <= 40; ++j) grid.push_back(1.0 - std::ldexp(1.0, -j));
  for (double r : v.table_r()) grid.push_back(r);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  WeightCheck out;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.failure = why;
    return out;
  };
  double prev = std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const double x = v.at(r, 1.0 - r);
    std::ostringstream at;
    at << " at r = " << r;
    if (!std::isfinite(x) || !(x > 0)) return fail("not positive" + at.str());
    if (!(x < prev)) return fail("not strictly decreasing" + at.str());
    prev = x;
  }
  // v -> 0 cannot be checked at finite depth; the log weight is 0.035 v(0)
  // at 1 - 2^-40, so ask for a tenth.
  const double tail = v.at(1.0 - std::ldexp(1.0, -40), std::ldexp(1.0, -40));
  if (!(tail <= v.at(0.0, 1.0) / 10.0)) return fail("v(1 - 2^-40) > v(0)/10: decays too slowly");
  return out;
}

SpaceSpec SpaceSpec::bergman(double p, double alpha) {
  if (!(p > 0)) throw InvalidSpec("bergman: p must be > 0");
  if (!(alpha > -1)) throw InvalidSpec("bergman: alpha must be > -1");
  SpaceSpec s;
  s.kind = Kind::Bergman;
  s.p = p;
  s.alpha = alpha;
  return s;
}

SpaceSpec SpaceSpec::bloch() { return SpaceSpec{}; }

SpaceSpec SpaceSpec::weighted_sup(Weight v) {
  SpaceSpec s;
  s.kind = Kind::WeightedSup;
  s.weight = std::make_shared<const Weight>(std::move(v));
  return s;
}

SpaceSpec SpaceSpec::weighted_deriv_sup(Weight v) {
  SpaceSpec s = weighted_sup(std::move(v));
  s.kind = Kind::WeightedDerivSup;
  return s;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Bergman:
      os << "A^" << p << "_" << alpha;
      break;
    case Kind::Bloch:
      os << "Bloch";
      break;
    case Kind::WeightedSup:
      os << "H^inf_v, v = " << weight->describe();
      break;
    case Kind::WeightedDerivSup:
      os << "DH^inf_v, v = " << weight->describe();
      break;
  }
  return os.str();
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Finite:
      return "finite";
    case VerdictKind::Divergent:
      return "divergent";
    case VerdictKind::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// Verdict on a non-decreasing running sequence R_1, R_2, ... once the level
// budget is exhausted: increments still shrinking geometrically over the last
// eight levels count as a finite (lower-bound) value.
void classify_exhausted(MembershipVerdict& out, const std::vector<double>& running) {
  const std::size_t n = running.size();
  out.value = running.back();
  if (n < 10) {
    out.kind = VerdictKind::Inconclusive;
    out.diagnostic = "too few levels";
    return;
  }
  std::vector<double> inc;
  for (std::size_t i = n - 8; i < n; ++i) inc.push_back(running[i] - running[i - 1]);
  bool shrinking = true;
  for (std::size_t i = 1; i < inc.size(); ++i) shrinking = shrinking && inc[i] <= inc[i - 1];
  std::ostringstream os;
  if (shrinking && inc.back() <= 0.75 * inc.front()) {
    out.kind = VerdictKind::Finite;
    os << "slow convergence: level budget reached with increments shrinking ("
       << inc.front() << " -> " << inc.back() << "); value is a lower bound";
  } else {
    out.kind = VerdictKind::Inconclusive;
    os << "level budget reached; last increment " << inc.back()
       << " not shrinking geometrically (slow growth possible)";
  }
  out.diagnostic = os.str();
}

// Returns true when the verdict is settled after appending R_j.
bool classify_step(MembershipVerdict& out, const std::vector<double>& R, double tol,
                   const SupOptions& opts) {
  const std::size_t j = R.size();  // levels so far, 1-based level index j
  const double cur = R.back();
  out.value = cur;
  if (std::isinf(cur) || cur > opts.unbounded_threshold) {
    out.kind = VerdictKind::Divergent;
    std::ostringstream os;
    os << (std::isinf(cur) ? "overflow" : "running sup above unbounded threshold") << " at level "
       << j;
    out.diagnostic = os.str();
    return true;
  }
  if (j >= 10) {
    const double a = R[j - 4], b = R[j - 3], c = R[j - 2];
    if (a > 0 && cur >= 1.5 * a && a < b && b < c && c < cur) {
      out.kind = VerdictKind::Divergent;
      std::ostringstream os;
      os << "running sup grows by factor " << cur / c << " per level (x" << cur / a
         << " over three levels)";
      out.diagnostic = os.str();
      return true;
    }
  }
  if (static_cast<int>(j) >= opts.min_levels) {
    const double lim = tol * (1.0 + std::abs(cur));
    bool settled = true;
    for (std::size_t i = j - 3; i < j; ++i) settled = settled && std::abs(R[i] - R[i - 1]) < lim;
    if (settled) {
      out.kind = VerdictKind::Finite;
      out.diagnostic = "running sup stabilized";
      return true;
    }
  }
  return false;
}

}  // namespace

MembershipVerdict disc_sup(const std::function<double(double, double, double)>& h_raw,
                           double tol, const SupOptions& opts) {
  // Hand h an s that equals 1 - r exactly, so boundary factors like 1/(1 - z)
  // and s^gamma see the same radius.
  auto h = [&h_raw](double r, double, double t) { return h_raw(r, 1.0 - r, t); };
  MembershipVerdict out;
  std::vector<double> running;
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int j = 1; j <= opts.j_max; ++j) {
    const double s_hi = std::ldexp(1.0, -(j - 1));
    const double s_lo = std::ldexp(1.0, -j);
    LevelRecord rec;
    rec.level = j;
    rec.level_sup = -std::numeric_limits<double>::infinity();
    double rec_s = s_hi;
    for (int k = 0; k < 4; ++k) {
      const double s = s_hi * std::exp2(-k / 4.0);
      const double r = 1.0 - s;
      auto m = maximize_on_circle([&](double t) { return h(r, s, t); }, best_theta, 64, 1 << 12,
                                  1e-3, 0.1 * tol);
      out.evaluations += m.evaluations;
      if (m.value > rec.level_sup) {
        rec.level_sup = m.value;
        rec.theta = m.theta;
        rec_s = s;
      }
      if (std::isinf(m.value)) break;
    }
    if (std::isfinite(rec.level_sup) && j > 1) {
      // Polish in the radius, then in the angle, around the level maximum.
      const double th = rec.theta;
      auto [s1, v1] = maximize_on_interval([&](double s) { return h(1.0 - s, s, th); }, s_lo, s_hi);
      out.evaluations += 60;
      if (v1 > rec.level_sup) {
        rec.level_sup = v1;
        rec_s = s1;
      }
      const double sp = rec_s;
      const double half = std::min(kPi / 32.0, 8.0 * sp);
      auto [t2, v2] = maximize_on_interval([&](double t) { return h(1.0 - sp, sp, t); }, th - half,
                                           th + half);
      out.evaluations += 60;
      if (v2 > rec.level_sup) {
        rec.level_sup = v2;
        rec.theta = t2;
      }
    }
    rec.r = 1.0 - rec_s;
    rec.theta = std::remainder(rec.theta, kTwoPi);
    if (rec.level_sup > best) {
      best = rec.level_sup;
      best_theta = rec.theta;
    }
    rec.running_sup = best;
    running.push_back(best);
    out.evidence.push_back(rec);
    out.grid_levels = j;
    if (classify_step(out, running, tol, opts)) return out;
  }
  classify_exhausted(out, running);
  return out;
}

MembershipVerdict bergman_norm(const DiscFunction& f, double p, double alpha, double tol) {
  if (!(p > 0)) throw InvalidSpec("bergman_norm: p must be > 0");
  if (!(alpha > -1)) throw InvalidSpec("bergman_norm: alpha must be > -1");
  auto g = [&f, p](cplx z) {
    const cplx v = f(z);
    if (is_overflow(v)) return std::numeric_limits<double>::infinity();
    return std::pow(std::abs(v), p);
  };
  const auto d = disc_integral(g, alpha, tol);
  MembershipVerdict out;
  out.quad = d.quad;
  out.constants = {{"p", p}, {"alpha", alpha}};
  double partial = 0.0;
  for (std::size_t j = 0; j < d.panels.size(); ++j) {
    partial += d.panels[j];
    LevelRecord rec;
    rec.level = static_cast<int>(j + 1);
    rec.r = 1.0 - std::ldexp(1.0, -rec.level);
    rec.level_sup = d.panels[j];
    rec.running_sup = partial;
    out.evidence.push_back(rec);
  }
  out.grid_levels = static_cast<int>(d.panels.size());
  out.evaluations = d.quad.nodes_used;
  if (d.divergent) {
    out.kind = VerdictKind::Divergent;
    out.value = partial;
    std::ostringstream os;
    os << "panel contributions do not decay: " << d.growth;
    if (d.growth == "power") os << " growth, ratio " << d.growth_rate << " per panel";
    if (d.growth == "logarithmic") os << " growth, about " << d.growth_rate << " per panel";
    out.diagnostic = os.str();
    return out;
  }
  if (!d.quad.converged)
    throw ToleranceNotMet("bergman_norm: radial extrapolation did not settle",
                          std::pow(std::max(0.0, d.quad.value), 1.0 / p), d.quad.error_estimate);
  out.kind = VerdictKind::Finite;
  out.value = std::pow(std::max(0.0, d.quad.value), 1.0 / p);
  out.diagnostic = "integral converged";
  return out;
}

MembershipVerdict bloch_norm(const DiscFunction& f, double tol, const SupOptions& opts) {
  const DiscFunction df = f.derivative();
  auto h = [&df](double r, double s, double t) {
    const cplx v = df(std::polar(r, t));
    if (is_overflow(v)) return std::numeric_limits<double>::infinity();
    return s * (2.0 - s) * std::abs(v);
  };
  auto out = disc_sup(h, tol, opts);
  const double f0 = std::abs(f(0.0));
  out.constants["f(0)"] = f0;
  out.constants["seminorm"] = out.value;
  out.value += f0;
  return out;
}

MembershipVerdict hinfv_norm(const DiscFunction& f, const Weight& v, double tol,
                             const SupOptions& opts) {
  auto h = [&f, &v](double r, double s, double t) {
    const cplx x = f(std::polar(r, t));
    if (is_overflow(x)) return std::numeric_limits<double>::infinity();
    return v.at(r, s) * std::abs(x);
  };
  return disc_sup(h, tol, opts);
}

MembershipVerdict dhinfv_norm(const DiscFunction& f, const Weight& v, double tol,
                              const SupOptions& opts) {
  auto out = hinfv_norm(f.derivative(), v, tol, opts);
  const double f0 = std::abs(f(0.0));
  out.constants["f(0)"] = f0;
  out.constants["derivative_sup"] = out.value;
  out.value += f0;
  return out;
}

MembershipVerdict norm(const DiscFunction& f, const SpaceSpec& space, double tol) {
  switch (space.kind) {
    case SpaceSpec::Kind::Bergman:
      return bergman_norm(f, space.p, space.alpha, tol);
    case SpaceSpec::Kind::Bloch:
      return bloch_norm(f, tol);
    case SpaceSpec::Kind::WeightedSup:
      return hinfv_norm(f, *space.weight, tol);
    case SpaceSpec::Kind::WeightedDerivSup:
      return dhinfv_norm(f, *space.weight, tol);
  }
  throw InvalidSpec("unknown space");
}

std::pair<double, double> bloch_growth_bound(const DiscFunction& f, cplx z, double bloch,
                                             double tol) {
  if (bloch < 0) {
    const auto b = bloch_norm(f, tol);
    if (!b.finite())
      throw PreconditionError("finite Bloch norm", "Bloch norm verdict is " + to_string(b.kind));
    bloch = b.constants.at("seminorm");
  }
  const double a = std::abs(z);
  const double lhs = std::abs(f(z));
  const double rhs = std::abs(f(0.0)) + 0.5 * bloch * std::log((1.0 + a) / (1.0 - a));
  return {lhs, rhs};
}

MembershipVerdict jensen_functional(const DiscFunction& f, double tol, int j_max) {
  if (f.is_zero()) throw DegenerateInput("jensen_functional: f is identically zero");
  MembershipVerdict out;
  std::vector<double> running;
  double best = -std::numeric_limits<double>::infinity();
  SupOptions opts;
  opts.j_max = j_max;
  for (int j = 1; j <= j_max; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    LogMean m;
    try {
      m = circle_mean_log_abs(f, r, tol);
    } catch (const ToleranceNotMet& e) {
      out.kind = VerdictKind::Inconclusive;
      out.value = best;
      out.diagnostic = std::string("circle mean stalled at level ") + std::to_string(j) + ": " +
                       e.what();
      return out;
    }
    out.evaluations += m.quad.nodes_used;
    best = std::max(best, m.quad.value);
    LevelRecord rec;
    rec.level = j;
    rec.r = m.radius;
    rec.level_sup = m.quad.value;
    rec.running_sup = best;
    out.evidence.push_back(rec);
    running.push_back(best);
    out.grid_levels = j;
    // Shift by the first value so that the 1.5x growth test sees the increase
    // of the functional rather than its (possibly negative) level.
    std::vector<double> shifted(running);
    const double base = running.front();
    for (double& x : shifted) x = x - base + 1.0;
    if (classify_step(out, shifted, tol, opts)) {
      out.value = best;
      return out;
    }
  }
  classify_exhausted(out, running);
  return out;
}

}  // namespace anlab
