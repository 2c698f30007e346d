#include "anlab/superpos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anlab/errors.hpp"
#include "anlab/quadrature.hpp"

namespace anlab {

using nlohmann::json;

json ProbeReport::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["inputs"] = inputs;
  json c = json::object();
  for (const auto& [k, v] : constants) c[k] = v;
  j["constants"] = c;
  j["samples"] = samples;
  j["verdict"] = verdict;
  j["seed"] = seed;
  return j;
}

namespace {

// sup over the unit circle of |P|, P given by its coefficients.
double poly_sup_on_circle(const std::vector<cplx>& a) {
  auto h = [&a](double t) {
    const cplx z = std::polar(1.0, t);
    cplx s = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) s = s * z + a[k];
    return std::abs(s);
  };
  return maximize_on_circle(h, 0.0, 256, 1 << 14, 1e-12, 1e-14).value;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& a : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= a * c[k];
    }
    c = std::move(next);
  }
  return c;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

bool strictly_increasing_tail(const std::vector<double>& R, std::size_t span) {
  if (R.size() <= span) return false;
  for (std::size_t i = R.size() - span; i < R.size(); ++i)
    if (!(R[i] > R[i - 1])) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

ProbeReport theorem1_witness(double p, double alpha, double c, int j_max,
                             const ExperimentOptions& opts) {
  if (!(c > 0)) throw InvalidSpec("theorem1: c must be > 0");
  if (j_max < 4 || j_max > 40) throw InvalidSpec("theorem1: j_max must be in [4, 40]");
  ProbeReport rep;
  rep.experiment = "theorem1";
  rep.inputs = {{"p", p}, {"alpha", alpha}, {"c", c}, {"j_max", j_max},
                {"phi", "exp"}, {"w", "1"}, {"f", "c*log(1/(1-z))"}};

  const DiscFunction f = DiscFunction::log_one_minus().scaled(c);
  const auto bn = bergman_norm(f, p, alpha, opts.tol);
  rep.constants["c"] = c;
  rep.constants["p"] = p;
  rep.constants["alpha"] = alpha;
  rep.constants["bergman_norm_f"] = bn.value;

  const DiscFunction S = superpose(EntireFunction::exp(), DiscFunction::constant(1.0), f);
  const DiscFunction dS = S.derivative();

  CsvTable table{"theorem1_levels",
                 {"j", "r", "theta", "seminorm_at_r", "closed_form", "rel_error", "running_sup"},
                 {}};
  std::vector<double> running;
  double R = std::abs(dS(0.0));  // r = 0
  double max_rel = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    const double s = std::ldexp(1.0, -j);
    const double r = 1.0 - s;
    auto h = [&](double t) {
      const cplx v = dS(std::polar(r, t));
      if (is_overflow(v)) return std::numeric_limits<double>::infinity();
      return s * (2.0 - s) * std::abs(v);
    };
    const auto m = maximize_on_circle(h, 0.0, 64, 1 << 12, 1e-6, 0.0);
    const double closed = c * (1.0 + r) * std::pow(s, -c);
    const double rel = std::abs(m.value - closed) / closed;
    max_rel = std::max(max_rel, rel);
    R = std::max(R, m.value);
    running.push_back(R);
    table.rows.push_back({double(j), r, std::remainder(m.theta, kTwoPi), m.value, closed, rel, R});
    rep.samples.push_back({{"j", j},
                           {"r", r},
                           {"seminorm_at_r", m.value},
                           {"closed_form", closed},
                           {"running_sup", R}});
  }
  rep.evidence.push_back(table);
  const std::size_t n = running.size();
  const double growth3 = running[n - 1] / running[n - 4];
  rep.constants["running_sup_final"] = running.back();
  rep.constants["growth_last_three_levels"] = growth3;
  rep.constants["max_rel_error_vs_closed_form"] = max_rel;
  const bool witness = bn.finite() && growth3 >= 1.5 && strictly_increasing_tail(running, 3);
  rep.verdict = witness ? "witness" : "inconclusive";
  return rep;
}

ProbeReport zero_inheritance_check(std::uint64_t seed, const ExperimentOptions& opts) {
  ProbeReport rep;
  rep.experiment = "zero_inheritance";
  rep.seed = seed;
  Rng rng(seed);
  std::vector<cplx> roots;
  for (int k = 0; k < 6; ++k) roots.push_back(std::polar(rng.uniform(0.1, 0.8), rng.uniform(0, kTwoPi)));
  const DiscFunction g = DiscFunction::taylor(poly_from_roots(roots));
  const DiscFunction w = DiscFunction::taylor({1.0, -0.5});
  const DiscFunction F = weighted_multiply(
      w, DiscFunction::sum({compose_entire(EntireFunction::exp(), g), DiscFunction::constant(-1.0)}));
  rep.inputs = {{"phi", "exp"}, {"w", "1 - z/2"}, {"r_max", 0.9}};
  json jr = json::array();
  for (const cplx& a : roots) jr.push_back(cplx_json(a));
  rep.inputs["roots_of_g"] = jr;

  LocateOptions lo;
  lo.threads = opts.threads;
  const ZeroList zl = locate_zeros(F, 0.9, opts.tol, lo);
  rep.constants["zeros_of_F"] = static_cast<double>(zl.length());
  rep.constants["incomplete"] = zl.incomplete ? 1.0 : 0.0;

  CsvTable table{"zero_inheritance", {"k", "root_re", "root_im", "distance", "residual"}, {}};
  bool all = !zl.entries.empty();
  double worst = 0.0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    cplx at = 0.0;
    for (const auto& e : zl.entries) {
      const double d = std::abs(e.location - roots[k]);
      if (d < best) {
        best = d;
        at = e.location;
      }
    }
    const double res = std::abs(F(at));
    const bool ok = best < 1e-8 && res < 1e-8;
    all = all && ok;
    worst = std::max(worst, std::max(best, res));
    table.rows.push_back({double(k + 1), roots[k].real(), roots[k].imag(), best, res});
    rep.samples.push_back({{"root", cplx_json(roots[k])},
                           {"located", cplx_json(at)},
                           {"distance", best},
                           {"residual", res},
                           {"found", ok}});
  }
  rep.constants["worst_distance_or_residual"] = worst;
  rep.evidence.push_back(table);
  rep.verdict = all ? "inherited" : "missing";
  return rep;
}

// ---------------------------------------------------------------------------

ProbeReport theorem2_probe(const EntireFunction& phi, const DiscFunction& w, double p,
                           double alpha, double beta, double K, int family_size,
                           std::uint64_t seed, const ExperimentOptions& opts) {
  if (!(p > 0) || !(K > 0) || family_size < 1)
    throw InvalidSpec("theorem2: need p > 0, K > 0 and a nonempty family");
  if (!(beta > -1 && beta < alpha))
    throw PreconditionError("w in A^p_beta for some -1 < beta < alpha",
                            "beta = " + std::to_string(beta) + ", alpha = " +
                                std::to_string(alpha));
  ProbeReport rep;
  rep.experiment = "theorem2";
  rep.seed = seed;
  rep.inputs = {{"phi", phi.describe()}, {"p", p},   {"alpha", alpha},
                {"beta", beta},          {"K", K},   {"family_size", family_size}};

  // Hypothesis on phi: order < 1, or order 1 and type 0.
  double order = 0.0, type = 0.0;
  if (!phi.is_polynomial()) {
    order = order_estimate(phi, 256);
    const bool below = order < 0.95;
    const bool order_one = std::abs(order - 1.0) <= 0.05;
    if (order_one) type = type_estimate(phi, 1.0, 256);
    if (!below && !(order_one && type <= 0.05)) {
      std::ostringstream os;
      os << "estimated order " << order;
      if (order_one) os << ", type " << type;
      throw PreconditionError("order less than one, or order one and type zero", os.str());
    }
  }
  rep.constants["order"] = order;
  rep.constants["type"] = type;

  const auto wb = bergman_norm(w, p, beta, opts.tol);
  if (!wb.finite())
    throw PreconditionError("w in A^p_beta", "Bergman verdict for w is " + to_string(wb.kind));
  rep.constants["w_norm_beta"] = wb.value;

  // r0 on the grid 2^j with half the proof's bound: log M is increasing, so
  // log M(r)/r <= 2 * (grid value) holds between grid points as well.
  const double bound = (alpha - beta) / (K * p);
  const auto th = subexp_threshold(phi, 0.5 * bound);
  const double M0 = std::exp(th.log_m_r0);
  // |f| <= |f(0)| + (||f||/2) log((1+|z|)/(1-|z|)) <= K log(C/(1-|z|)) with
  // log C = 1 + log(2)/2.
  const double logC = 1.0 + 0.5 * std::log(2.0);
  const double D = std::exp(logC * (alpha - beta) / p);

  auto wp = [&w, p](cplx z) {
    const cplx v = w(z);
    return is_overflow(v) ? std::numeric_limits<double>::infinity() : std::pow(std::abs(v), p);
  };
  const auto I_beta = disc_integral(
      [&](cplx z) { return std::pow(1.0 + std::abs(z), alpha - beta) * wp(z); }, beta, opts.tol);
  const auto I_alpha = disc_integral(wp, alpha, opts.tol);
  if (I_beta.divergent || I_alpha.divergent)
    throw PreconditionError("w in A^p_beta", "weighted integral of |w|^p diverges");
  const double cap = std::pow(D, p) * (alpha + 1.0) / (beta + 1.0) * I_beta.quad.value +
                     std::pow(M0, p) * I_alpha.quad.value;
  // The same split with the unnormalized weights (1-|z|)^beta, (1-|z|)^alpha.
  const auto P_beta = disc_integral(
      [&](cplx z) { return std::pow(1.0 - std::abs(z), beta) * wp(z); }, 0.0, opts.tol);
  const auto P_alpha = disc_integral(
      [&](cplx z) { return std::pow(1.0 - std::abs(z), alpha) * wp(z); }, 0.0, opts.tol);

  rep.constants["K"] = K;
  rep.constants["p"] = p;
  rep.constants["alpha"] = alpha;
  rep.constants["beta"] = beta;
  rep.constants["bound"] = bound;
  rep.constants["r0"] = th.r0;
  rep.constants["log_M_r0"] = th.log_m_r0;
  rep.constants["C"] = std::exp(logC);
  rep.constants["D"] = D;
  rep.constants["weighted_integral_beta"] = I_beta.quad.value;
  rep.constants["w_norm_alpha_p"] = I_alpha.quad.value;
  rep.constants["unnormalized_integral_beta"] = P_beta.quad.value;
  rep.constants["unnormalized_integral_alpha"] = P_alpha.quad.value;
  rep.constants["cap"] = cap;

  // Family, drawn sequentially so it does not depend on the thread count.
  struct Member {
    std::string kind;
    double param = 0.0;
    DiscFunction f = DiscFunction::constant(0.0);
  };
  Rng rng(seed);
  std::vector<Member> family;
  for (int i = 0; i < family_size; ++i) {
    Member m;
    switch (i % 3) {
      case 0: {
        m.kind = "rotated_log";
        m.param = rng.uniform(0.0, kTwoPi);
        // ||log(1/(1 - e^{i theta} z))||_B = 2.
        m.f = DiscFunction::rotated_scaled(0.5 * K, m.param, DiscFunction::log_one_minus());
        break;
      }
      case 1: {
        m.kind = "lacunary";
        const int terms = 4 + static_cast<int>(rng.next() % 7);  // z^{2^k}, k < terms
        m.param = terms;
        std::vector<std::pair<long, cplx>> t;
        for (int k = 0; k < terms; ++k) t.emplace_back(1L << k, 1.0);
        m.f = DiscFunction::sparse_taylor(std::move(t));
        break;
      }
      default: {
        m.kind = "taylor";
        const int deg = 1 + static_cast<int>(rng.next() % 6);
        m.param = deg;
        std::vector<cplx> a;
        for (int k = 0; k <= deg; ++k) a.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
        m.f = DiscFunction::taylor(std::move(a));
        break;
      }
    }
    family.push_back(std::move(m));
  }

  struct Outcome {
    double bloch = 0.0, normp = 0.0;
    std::string status;
  };
  std::vector<Outcome> out(family.size());
  parallel_for(static_cast<int>(family.size()), opts.threads, [&](int i) {
    auto& m = family[i];
    if (m.kind != "rotated_log") {
      const auto b = bloch_norm(m.f, opts.tol);
      m.f = m.f.scaled(K / b.value);
    }
    Outcome o;
    o.bloch = bloch_norm(m.f, opts.tol).value;
    try {
      const auto nv = bergman_norm(superpose(phi, w, m.f), p, alpha, opts.tol);
      if (nv.finite()) {
        o.normp = std::pow(nv.value, p);
        o.status = o.normp <= cap ? "pass" : "fail";
      } else {
        o.normp = std::numeric_limits<double>::infinity();
        o.status = "fail";
      }
    } catch (const ToleranceNotMet& e) {
      o.normp = std::pow(std::max(0.0, e.best_value()), p);
      o.status = "unresolved";
    }
    out[i] = o;
  });

  CsvTable table{"theorem2_samples", {"index", "kind", "param", "bloch_norm", "norm_p", "cap", "ratio"}, {}};
  int fails = 0, unresolved = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& o = out[i];
    fails += o.status == "fail";
    unresolved += o.status == "unresolved";
    worst = std::max(worst, o.normp / cap);
    const double kind_code = family[i].kind == "rotated_log" ? 0 : family[i].kind == "lacunary" ? 1 : 2;
    table.rows.push_back({double(i), kind_code, family[i].param, o.bloch, o.normp, cap, o.normp / cap});
    rep.samples.push_back({{"index", i},
                           {"kind", family[i].kind},
                           {"param", family[i].param},
                           {"bloch_norm", o.bloch},
                           {"norm_p", o.normp},
                           {"status", o.status}});
  }
  rep.evidence.push_back(table);
  rep.constants["worst_ratio_to_cap"] = worst;
  rep.verdict = fails > 0 ? "cap-violated" : unresolved > 0 ? "inconclusive" : "bounded-consistent";
  return rep;
}

// ---------------------------------------------------------------------------

ProbeReport theorem4_check(const EntireFunction& phi, const Weight& v, int family_size,
                           std::uint64_t seed, bool derivative_space,
                           const ExperimentOptions& opts) {
  if (family_size < 1) throw InvalidSpec("theorem4: family must be nonempty");
  ProbeReport rep;
  rep.experiment = derivative_space ? "theorem4_derivative_space" : "theorem4";
  rep.seed = seed;
  rep.inputs = {{"phi", phi.describe()},
                {"weight", v.describe()},
                {"family_size", family_size},
                {"derivative_space", derivative_space}};
  const EntireFunction dphi = phi.derivative();
  const double A = max_modulus(dphi, 1.0);
  const double v0 = v(0.0);
  rep.constants["A"] = A;
  rep.constants["v0"] = v0;

  struct Member {
    std::vector<cplx> coeffs;
    double norm = 0.0;
    DiscFunction f = DiscFunction::constant(0.0);
  };
  Rng rng(seed);
  std::vector<Member> family;
  for (int i = 0; i < family_size; ++i) {
    Member m;
    const int deg = 1 + static_cast<int>(rng.next() % 6);
    for (int k = 0; k <= deg; ++k) m.coeffs.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double target = 3.0 * rng.uniform(0.2, 1.0);
    const double sup = poly_sup_on_circle(m.coeffs);
    for (auto& a : m.coeffs) a *= target / sup;
    m.norm = poly_sup_on_circle(m.coeffs);
    m.f = DiscFunction::taylor(m.coeffs);
    family.push_back(std::move(m));
  }

  // L_f = sup_z v(z) M(2|f(z)|, phi) / ||f|| dominates v |S_phi(2 e^{i theta} f)| / ||f||
  // for every theta; the theta-grid value is reported as a lower diagnostic.
  struct Outcome {
    double L = 0.0, L_grid = 0.0;
    std::string L_verdict;
    double dh_phi = 0.0, dh_dphi = 0.0;
  };
  std::vector<Outcome> out(family.size());
  parallel_for(static_cast<int>(family.size()), opts.threads, [&](int i) {
    const auto& m = family[i];
    Outcome o;
    auto h = [&](double r, double s, double t) {
      const double a = std::abs(m.f(std::polar(r, t)));
      return v.at(r, s) * max_modulus(phi, 2.0 * a) / m.norm;
    };
    const auto sup = disc_sup(h, opts.tol);
    o.L = sup.value;
    o.L_verdict = to_string(sup.kind);
    for (int q = 0; q < 16; ++q) {
      const DiscFunction g = m.f.scaled(std::polar(2.0, kTwoPi * q / 16));
      const auto hv = hinfv_norm(compose_entire(phi, g), v, opts.tol);
      o.L_grid = std::max(o.L_grid, hv.value / m.norm);
    }
    if (derivative_space) {
      o.dh_phi = dhinfv_norm(compose_entire(phi, m.f), v, opts.tol).value;
      o.dh_dphi = dhinfv_norm(compose_entire(dphi, m.f), v, opts.tol).value;
    }
    out[i] = o;
  });

  double L = 0.0, L_grid = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].L_verdict == "divergent")
      throw PreconditionError("S_phi bounded from X into H^inf_v",
                              "sup v M(2|f|) diverges for family member " + std::to_string(i));
    L = std::max(L, out[i].L);
    L_grid = std::max(L_grid, out[i].L_grid);
  }
  rep.constants["L"] = L;
  rep.constants["L_theta_grid"] = L_grid;

  CsvTable table{"theorem4_grid",
                 {"member", "r", "theta", "abs_f", "lhs", "rhs", "small_case_bound"},
                 {}};
  long points = 0, small_points = 0, violations = 0, small_violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family[i];
    const double rhs = std::max(A * v0, L * m.norm / 2.0) + 1e-8;
    long member_viol = 0;
    for (int j = 0; j <= 20; ++j) {
      const double s = j == 0 ? 1.0 : std::ldexp(1.0, -j);
      const double r = 1.0 - s;
      for (int q = 0; q < 64; ++q) {
        const double t = kTwoPi * q / 64;
        const cplx u = m.f(std::polar(r, t));
        const double lhs = v.at(r, s) * std::abs(dphi(u));
        ++points;
        worst_margin = std::max(worst_margin, lhs - rhs);
        if (lhs > rhs) ++violations, ++member_viol;
        if (std::abs(u) <= 1.0) {
          ++small_points;
          if (lhs > A * v0 + 1e-8) ++small_violations;
        }
        if (q % 16 == 0) table.rows.push_back({double(i), r, t, std::abs(u), lhs, rhs, A * v0});
      }
    }
    json sj = {{"index", i},
               {"degree", m.coeffs.size() - 1},
               {"norm", m.norm},
               {"L_member", out[i].L},
               {"L_theta_grid_member", out[i].L_grid},
               {"bound", rhs},
               {"violations", member_viol}};
    if (derivative_space) {
      sj["dhinfv_S_phi"] = out[i].dh_phi;
      sj["dhinfv_S_dphi"] = out[i].dh_dphi;
    }
    rep.samples.push_back(sj);
  }
  rep.evidence.push_back(table);
  rep.constants["grid_points"] = static_cast<double>(points);
  rep.constants["small_case_points"] = static_cast<double>(small_points);
  rep.constants["violations"] = static_cast<double>(violations);
  rep.constants["small_case_violations"] = static_cast<double>(small_violations);
  rep.constants["worst_margin"] = worst_margin;
  bool ok = violations == 0 && small_violations == 0;
  if (derivative_space)
    for (const auto& o : out) ok = ok && std::isfinite(o.dh_phi) && std::isfinite(o.dh_dphi);
  rep.verdict = ok ? "derivative-bounded-consistent" : "bound-violated";
  return rep;
}

// ---------------------------------------------------------------------------

Corollary1Result corollary1_construction(const Weight& v, int depth, double c,
                                         const ExperimentOptions& opts) {
  if (depth < 1 || depth > 64) throw InvalidSpec("corollary1: depth must be in [1, 64]");
  if (!(c > 1)) throw InvalidSpec("corollary1: c must be > 1");
  constexpr int kGrid = 24;
  std::vector<double> s(kGrid + 1), logr(kGrid + 1), half_log_psi(kGrid + 1);
  for (int j = 1; j <= kGrid; ++j) {
    s[j] = std::ldexp(1.0, -j);
    logr[j] = std::log1p(-s[j]);
    half_log_psi[j] = -0.5 * std::log(v.at(1.0 - s[j], s[j]));
  }
  const double e2 = 2.0;  // psi > e^2  <=>  (1/2) log psi > 1
  std::vector<double> sums(kGrid + 1, 0.0);
  std::vector<long> n;
  std::string explanation;
  auto rn = [&](int j, long m) { return std::exp(static_cast<double>(m) * logr[j]); };
  for (int k = 1; k <= depth; ++k) {
    const double cap = std::ldexp(half_log_psi[kGrid], -k);
    auto ok = [&](long m) {
      for (int j = 1; j <= kGrid; ++j)
        if (half_log_psi[j] > 0.5 * e2 && c * (sums[j] + rn(j, m)) > half_log_psi[j]) return false;
      return c * rn(kGrid, m) <= cap;
    };
    const long lo = n.empty() ? 1 : n.back() + 1;
    long hi = lo;
    while (!ok(hi) && hi < (1L << 60)) hi *= 2;
    if (!ok(hi)) {
      std::ostringstream os;
      os << "no exponent fits factor " << k << ": psi grows too slowly on the grid";
      explanation = os.str();
      break;
    }
    long a = lo, b = hi;  // ok(b), minimal in (a-1, b]
    if (ok(a)) b = a;
    while (b - a > 1) {
      const long mid = a + (b - a) / 2;
      (ok(mid) ? b : a) = mid;
    }
    n.push_back(b);
    for (int j = 1; j <= kGrid; ++j) sums[j] += rn(j, b);
  }
  if (half_log_psi[kGrid] <= 0.5 * e2 && explanation.empty() && n.empty())
    explanation = "psi(r) never exceeds e^2 on the grid";

  std::vector<Factor> factors;
  for (long m : n) factors.push_back({c, m});
  Corollary1Result res{factors.empty() ? DiscFunction::constant(1.0)
                                       : DiscFunction::factor_product(factors),
                       ZeroList{}, ProbeReport{}, n};
  auto& rep = res.report;
  rep.experiment = "corollary1";
  rep.inputs = {{"weight", v.describe()}, {"depth", depth}, {"c", c}, {"grid", kGrid}};
  rep.constants["c"] = c;
  rep.constants["depth_requested"] = depth;
  rep.constants["depth_achieved"] = static_cast<double>(n.size());
  if (n.empty()) {
    rep.verdict = "depth-reduced";
    rep.samples.push_back({{"explanation", explanation}});
    return res;
  }
  res.zeros = analytic_zeros(res.f);

  CsvTable cert{"corollary1_certificate", {"j", "r", "v", "abs_f", "v_times_abs_f", "sqrt_v", "log_f_bound", "half_log_psi"}, {}};
  bool cert_ok = true;
  double sup_vf = 0.0;
  for (int j = 1; j <= kGrid; ++j) {
    const double r = 1.0 - s[j];
    const double vj = v.at(r, s[j]);
    const double af = std::abs(res.f(r));
    const double lhs = vj * af;
    const double rhs = std::sqrt(vj);
    cert_ok = cert_ok && lhs <= rhs * (1.0 + 1e-12);
    sup_vf = std::max(sup_vf, lhs);
    cert.rows.push_back({double(j), r, vj, af, lhs, rhs, c * sums[j], half_log_psi[j]});
  }
  rep.evidence.push_back(cert);
  rep.constants["certificate_sup_v_abs_f"] = sup_vf;

  CsvTable blaschke{"corollary1_blaschke", {"k", "n_k", "zero_modulus", "factor_contribution", "partial_sum"}, {}};
  std::vector<double> partial;
  double B = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double L = std::log(c) / static_cast<double>(n[k]);
    const double contrib = static_cast<double>(n[k]) * -std::expm1(-L);
    B += contrib;
    partial.push_back(B);
    blaschke.rows.push_back({double(k + 1), double(n[k]), std::exp(-L), contrib, B});
    rep.samples.push_back({{"k", k + 1},
                           {"n_k", n[k]},
                           {"zero_modulus", std::exp(-L)},
                           {"blaschke_partial_sum", B}});
  }
  rep.evidence.push_back(blaschke);
  bool increasing = true;
  for (std::size_t k = 1; k < partial.size(); ++k) increasing = increasing && partial[k] > partial[k - 1];
  rep.constants["blaschke_sum_total"] = B;
  rep.constants["blaschke_sum_check"] = blaschke_sum(res.zeros, res.zeros.length());

  const auto stats = zero_stats(res.zeros);
  const auto iv = zero_incompatibility_verdict(stats, ZeroLaw::blaschke());
  rep.inputs["incompatibility_law"] = "blaschke";
  rep.constants["zero_count"] = static_cast<double>(res.zeros.length());
  json trend = json::array();
  for (const auto& [k, inc] : iv.trend) trend.push_back(json::array({k, inc}));
  rep.samples.push_back({{"incompatibility_verdict", iv.verdict},
                         {"diagnostic", iv.diagnostic},
                         {"dyadic_increments", trend}});
  (void)opts;

  if (!cert_ok)
    rep.verdict = "certificate-failed";
  else if (static_cast<int>(n.size()) < depth)
    rep.verdict = "depth-reduced";
  else if (increasing && iv.verdict == "incompatible")
    rep.verdict = "non-blaschke-witness";
  else
    rep.verdict = "inconclusive";
  if (!explanation.empty()) rep.samples.push_back({{"explanation", explanation}});
  return res;
}

ProbeReport corollary2_experiment(int j_max, const ExperimentOptions& opts) {
  ProbeReport rep;
  rep.experiment = "corollary2";
  rep.inputs = {{"j_max", j_max}, {"f", "log(1/(1-z))"}, {"weight", "1/log(e/(1-r))"}};
  const DiscFunction f = DiscFunction::log_one_minus();
  const auto b = bloch_norm(f, opts.tol);
  const auto h = hinfv_norm(f, Weight::log(), opts.tol);
  const auto w = theorem1_witness(2.0, 0.0, 2.0, j_max, opts);
  rep.constants["bloch_norm"] = b.value;
  rep.constants["hinf_log_norm"] = h.value;
  rep.constants["witness_running_sup"] = w.constants.at("running_sup_final");
  rep.samples.push_back({{"check", "bloch"}, {"verdict", to_string(b.kind)}, {"value", b.value}});
  rep.samples.push_back(
      {{"check", "hinf_log"}, {"verdict", to_string(h.kind)}, {"value", h.value}, {"diagnostic", h.diagnostic}});
  rep.samples.push_back({{"check", "theorem1_witness_c2"}, {"verdict", w.verdict}});
  for (const auto& t : w.evidence) rep.evidence.push_back(t);
  const bool ok = b.finite() && std::abs(b.value - 2.0) <= 1e-6 && h.finite() && w.verdict == "witness";
  rep.verdict = ok ? "consistent" : "inconsistent";
  return rep;
}

}  // namespace anlab
