#include "anlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "anlab/errors.hpp"
#include "anlab/quadrature.hpp"

namespace anlab {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Analytic:
      return "analytic";
    case Provenance::Located:
      return "located";
    case Provenance::Synthetic:
      return "synthetic";
  }
  return "?";
}

std::string to_string(GrowthModel m) { return m == GrowthModel::Power ? "power" : "sqrtlog"; }

long ZeroList::length() const {
  long n = 0;
  for (const auto& e : entries) n += e.count();
  return n;
}

ZeroEntry make_zero(cplx z, int multiplicity) {
  ZeroEntry e;
  e.location = z;
  e.multiplicity = multiplicity;
  e.log_inv_modulus = -std::log(std::abs(z));
  return e;
}

namespace {

void sort_entries(std::vector<ZeroEntry>& v) {
  std::stable_sort(v.begin(), v.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
    if (a.log_inv_modulus != b.log_inv_modulus) return a.log_inv_modulus > b.log_inv_modulus;
    return std::arg(a.location) < std::arg(b.location);
  });
}

constexpr double kGoldenAngle = 2.399963229728653;  // pi (3 - sqrt 5)

}  // namespace

ZeroList synthetic_zeros_log(const std::vector<double>& log_inv_moduli) {
  ZeroList zl;
  zl.provenance = Provenance::Synthetic;
  for (std::size_t k = 0; k < log_inv_moduli.size(); ++k) {
    const double L = log_inv_moduli[k];
    if (!(L > 0)) throw InvalidSpec("synthetic zeros: moduli must lie in [0, 1)");
    ZeroEntry e;
    e.log_inv_modulus = L;
    e.location = std::polar(std::exp(-L), kGoldenAngle * static_cast<double>(k));
    zl.entries.push_back(e);
  }
  sort_entries(zl.entries);
  return zl;
}

ZeroList synthetic_zeros(const std::vector<double>& moduli) {
  std::vector<double> L;
  L.reserve(moduli.size());
  for (double m : moduli) {
    if (!(m >= 0 && m < 1)) throw InvalidSpec("synthetic zeros: moduli must lie in [0, 1)");
    L.push_back(m == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(m));
  }
  return synthetic_zeros_log(L);
}

ZeroList analytic_zeros(const DiscFunction& f) {
  const auto* fp = std::get_if<node::FactorProduct>(&f.node());
  if (!fp) throw InvalidSpec("analytic zeros are available for factor products only");
  ZeroList zl;
  zl.provenance = Provenance::Analytic;
  for (const auto& fac : fp->factors) {
    if (!(fac.c > 1)) continue;  // 1 + c z^n has no zeros in the disc
    ZeroEntry e;
    e.log_inv_modulus = std::log(fac.c) / static_cast<double>(fac.n);
    e.location = std::polar(std::exp(-e.log_inv_modulus), kPi / static_cast<double>(fac.n));
    e.ring_size = fac.n;
    zl.entries.push_back(e);
  }
  sort_entries(zl.entries);
  return zl;
}

// ---------------------------------------------------------------------------
// Winding numbers

namespace {

// Total change of arg f along path(t), t in [t0, t1]. Steps are refined until
// each one turns by at most pi/4 and agrees with its two halves.
double arg_change(const DiscFunction& f, const std::function<cplx(double)>& path, double t0,
                  double t1) {
  struct Seg {
    double a, b;
    cplx fa, fb;
  };
  auto value = [&](double t) {
    const cplx v = f(path(t));
    if (!(std::abs(v) > 1e-300) || is_overflow(v)) throw ContourHitsZero("f vanishes on the contour");
    return v;
  };
  const double min_len = 1e-13 * std::max(1.0, std::abs(t1 - t0));
  double total = 0.0;
  // Start from 32 pieces so that no single step can alias a full turn, and
  // go depth-first so pieces are summed left to right.
  constexpr int kPieces = 32;
  std::vector<Seg> stack;
  std::vector<cplx> v0(kPieces + 1);
  for (int i = 0; i <= kPieces; ++i) v0[i] = value(t0 + (t1 - t0) * i / kPieces);
  for (int i = kPieces - 1; i >= 0; --i)
    stack.push_back({t0 + (t1 - t0) * i / kPieces, t0 + (t1 - t0) * (i + 1) / kPieces, v0[i],
                     v0[i + 1]});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const cplx fm = value(m);
    const double d = std::arg(s.fb / s.fa);
    const double d1 = std::arg(fm / s.fa);
    const double d2 = std::arg(s.fb / fm);
    const bool ok = std::abs(d1) <= kPi / 4 && std::abs(d2) <= kPi / 4 &&
                    std::abs(d1 + d2 - d) < 1e-9;
    if (ok) {
      total += d1 + d2;
      continue;
    }
    if (std::abs(s.b - s.a) < min_len) throw ContourHitsZero("contour passes through a zero");
    stack.push_back({m, s.b, fm, s.fb});
    stack.push_back({s.a, m, s.fa, fm});
  }
  return total;
}

int rounded_winding(double total_arg) {
  const double w = total_arg / kTwoPi;
  const double k = std::round(w);
  if (std::abs(w - k) > 1e-6) throw ContourHitsZero("winding is not an integer");
  return static_cast<int>(k);
}

int circle_winding(const DiscFunction& f, double r, double t0) {
  return rounded_winding(
      arg_change(f, [r, t0](double t) { return std::polar(r, t0 + t); }, 0.0, kTwoPi));
}

// Distance estimate |f|/|f'| to the nearest zero from the contour |z| = r.
double contour_clearance(const DiscFunction& f, const DiscFunction& df, double r) {
  auto d = [&](double t) {
    const cplx z = std::polar(r, t);
    const double a = std::abs(f(z));
    const double b = std::abs(df(z));
    return b > 0 ? a / b : (a > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  };
  constexpr int n = 4096;
  double best = std::numeric_limits<double>::infinity(), best_t = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    const double v = d(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  if (best == 0.0) return 0.0;
  auto [t, neg] = maximize_on_interval([&](double t) { return -d(t); }, best_t - kTwoPi / n,
                                       best_t + kTwoPi / n);
  (void)t;
  return std::min(best, -neg);
}

double nudged_radius(const DiscFunction& f, const DiscFunction& df, double r) {
  double radius = r;
  for (int attempt = 0;; ++attempt) {
    if (contour_clearance(f, df, radius) >= 1e-9) return radius;
    if (attempt == 5)
      throw ToleranceNotMet("contour within 1e-9 of a zero after 5 nudges", radius, 0.0);
    radius = radius + 1e-9 < 1.0 ? radius + 1e-9 : radius - 1e-9;
  }
}

}  // namespace

int count_zeros_disk(const DiscFunction& f, double r, double tol) {
  if (!(r > 0 && r < 1)) throw DomainError("count_zeros_disk: r must be in (0, 1)");
  if (f.is_zero()) throw DegenerateInput("count_zeros_disk: f is identically zero");
  const DiscFunction df = f.derivative();
  const double radius = nudged_radius(f, df, r);
  auto g = [&](cplx z) {
    const cplx v = f(z);
    return z * df(z) / v;
  };
  const double qtol = std::clamp(tol, 1e-12, 1e-3);
  double w = std::numeric_limits<double>::quiet_NaN();
  try {
    const auto q = circle_mean_complex(g, radius, qtol);
    if (q.converged) w = q.value.real();
  } catch (const ToleranceNotMet&) {
  }
  if (std::isfinite(w) && std::abs(w - std::round(w)) <= 0.25)
    return static_cast<int>(std::round(w));
  // Fall back on tracking arg f around the circle.
  try {
    return circle_winding(f, radius, 0.0);
  } catch (const ContourHitsZero& e) {
    throw ToleranceNotMet(std::string("non-integer winding number: ") + e.what(), w, 0.5);
  }
}

// ---------------------------------------------------------------------------
// Subdivision

namespace {

// Annulus sector {ra <= |z| <= rb, ta <= arg z <= tb}. With full set the
// cell is the whole annulus (or the disc |z| <= rb when ra = 0).
struct Cell {
  double ra = 0, rb = 0, ta = 0, tb = 0;
  bool full = false;
  int count = 0;
  std::uint64_t id = 1;

  double size() const {
    if (full) return 2.0 * rb;
    return std::max(rb - ra, rb * (tb - ta));
  }
  cplx center() const {
    if (full && ra == 0.0) return 0.0;
    const double rm = 0.5 * (ra + rb);
    return full ? std::polar(rm, ta) : std::polar(rm, 0.5 * (ta + tb));
  }
  bool contains(cplx z) const {
    const double m = std::abs(z);
    const double eps = 1e-12;
    if (m < ra - eps || m > rb + eps) return false;
    if (full) return true;
    double t = std::arg(z);
    while (t < ta - eps) t += kTwoPi;
    while (t > ta + kTwoPi - eps) t -= kTwoPi;
    return t >= ta - eps && t <= tb + eps;
  }
};

double jitter(std::uint64_t id, int attempt) {
  Rng rng(id * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt) * 0x632be59bd9b4e019ULL);
  return 0.5 + 0.2 * (rng.uniform() - 0.5);  // split fraction in [0.4, 0.6]
}

int cell_winding(const DiscFunction& f, const Cell& c) {
  if (c.full) {
    int w = circle_winding(f, c.rb, c.ta);
    if (c.ra > 0) w -= circle_winding(f, c.ra, c.ta);
    return w;
  }
  double total = 0.0;
  total += arg_change(f, [&](double t) { return std::polar(c.rb, t); }, c.ta, c.tb);
  total += arg_change(f, [&](double s) { return std::polar(s, c.tb); }, c.rb, c.ra);
  if (c.ra > 0)
    total += arg_change(f, [&](double t) { return std::polar(c.ra, t); }, c.tb, c.ta);
  total += arg_change(f, [&](double s) { return std::polar(s, c.ta); }, c.ra, c.rb);
  return rounded_winding(total);
}

std::vector<Cell> split(const Cell& c, int attempt) {
  const double q = jitter(c.id, attempt);
  std::vector<Cell> out;
  auto child = [&](Cell k, std::uint64_t tag) {
    k.id = c.id * 8 + tag;
    out.push_back(k);
  };
  if (c.full && c.ra == 0.0) {
    Cell inner = c, ring = c;
    inner.rb = c.rb * q;
    ring.ra = inner.rb;
    child(inner, 0);
    child(ring, 1);
  } else if (c.full) {
    const double t0 = c.ta + 0.3 * (q - 0.5);
    for (int k = 0; k < 4; ++k) {
      Cell s = c;
      s.full = false;
      s.ta = t0 + k * kPi / 2;
      s.tb = t0 + (k + 1) * kPi / 2;
      child(s, static_cast<std::uint64_t>(k));
    }
  } else if (c.rb - c.ra > 0.5 * (c.ra + c.rb) * (c.tb - c.ta)) {
    Cell lo = c, hi = c;
    lo.rb = hi.ra = c.ra + (c.rb - c.ra) * q;
    child(lo, 0);
    child(hi, 1);
  } else {
    Cell lo = c, hi = c;
    lo.tb = hi.ta = c.ta + (c.tb - c.ta) * q;
    child(lo, 0);
    child(hi, 1);
  }
  return out;
}

struct CellOutcome {
  std::vector<ZeroEntry> zeros;
  std::vector<Cell> children;
  bool failed = false;
  std::string failure;
  long cells = 0;
};

std::optional<cplx> newton(const DiscFunction& f, const DiscFunction& df, cplx z, int m,
                           double size) {
  for (int it = 0; it < 50; ++it) {
    const cplx fz = f(z);
    const cplx dz = df(z);
    if (std::abs(fz) < 1e-12 * (1.0 + std::abs(dz) * size)) return z;
    if (dz == cplx{}) return std::nullopt;
    z -= static_cast<double>(m) * fz / dz;
    if (!(std::abs(z) < 1.0)) return std::nullopt;
  }
  const cplx fz = f(z);
  if (std::abs(fz) < 1e-12 * (1.0 + std::abs(df(z)) * size)) return z;
  return std::nullopt;
}

CellOutcome process(const DiscFunction& f, const DiscFunction& df, const Cell& c) {
  CellOutcome out;
  const double size = c.size();
  if (c.count == 1 || size < 1e-7) {
    auto z = newton(f, df, c.center(), c.count, size);
    if (z && c.contains(*z)) {
      // Take the last full Newton step for the best residual.
      cplx w = *z;
      for (int k = 0; k < 2; ++k) {
        const cplx d = df(w);
        if (d == cplx{}) break;
        const cplx w2 = w - static_cast<double>(c.count) * f(w) / d;
        if (std::abs(f(w2)) < std::abs(f(w)) && c.contains(w2)) w = w2;
      }
      auto e = make_zero(w, c.count);
      e.residual = std::abs(f(w));
      out.zeros.push_back(e);
      return out;
    }
    if (size < 1e-7) {
      // A cluster Newton cannot separate at this scale: report its center.
      const cplx w = c.center();
      auto e = make_zero(w, c.count);
      e.residual = std::abs(f(w));
      out.zeros.push_back(e);
      return out;
    }
  }
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto kids = split(c, attempt);
    int total = 0;
    bool hit = false;
    for (auto& k : kids) {
      ++out.cells;
      try {
        k.count = cell_winding(f, k);
      } catch (const ContourHitsZero&) {
        hit = true;
        break;
      }
      total += k.count;
    }
    if (hit || total != c.count) continue;
    for (auto& k : kids)
      if (k.count > 0) out.children.push_back(k);
    return out;
  }
  out.failed = true;
  out.failure = "could not split a cell without touching a zero";
  return out;
}

}  // namespace

ZeroList locate_zeros(const DiscFunction& f, double r_max, double tol,
                      const LocateOptions& opts) {
  if (!(r_max > 0 && r_max < 1)) throw DomainError("locate_zeros: r_max must be in (0, 1)");
  if (f.is_zero()) throw DegenerateInput("locate_zeros: f is identically zero");
  const DiscFunction df = f.derivative();
  const double radius = nudged_radius(f, df, r_max);
  const int expected = count_zeros_disk(f, radius, tol);

  ZeroList zl;
  zl.provenance = Provenance::Located;
  Cell root;
  root.rb = radius;
  root.full = true;
  root.ta = 0.1234;
  root.tb = root.ta + kTwoPi;
  root.count = circle_winding(f, radius, root.ta);
  std::vector<Cell> gen;
  if (root.count > 0) gen.push_back(root);
  long cells = 1;
  while (!gen.empty()) {
    if (cells > opts.max_cells) {
      zl.incomplete = true;
      zl.note = "cell budget exhausted";
      break;
    }
    std::vector<CellOutcome> res(gen.size());
    parallel_for(static_cast<int>(gen.size()), opts.threads,
                 [&](int i) { res[i] = process(f, df, gen[i]); });
    std::vector<Cell> next;
    for (auto& r : res) {
      cells += r.cells;
      if (r.failed) {
        zl.incomplete = true;
        zl.note = r.failure;
      }
      for (auto& z : r.zeros) zl.entries.push_back(z);
      for (auto& k : r.children) next.push_back(k);
    }
    gen = std::move(next);
  }
  sort_entries(zl.entries);
  const long found = zl.length();
  if (found != expected) {
    zl.incomplete = true;
    std::ostringstream os;
    os << "located multiplicity " << found << " differs from argument-principle count "
       << expected;
    zl.note = zl.note.empty() ? os.str() : zl.note + "; " + os.str();
  }
  return zl;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

template <class F>
double accumulate_first(const ZeroList& zl, long n, F per_zero) {
  if (n < 0 || n > zl.length()) throw DomainError("n exceeds the zero list length");
  double sum = 0.0;
  long left = n;
  for (const auto& e : zl.entries) {
    if (left == 0) break;
    const long take = std::min(left, e.count());
    sum += static_cast<double>(take) * per_zero(e);
    left -= take;
  }
  return sum;
}

}  // namespace

double blaschke_sum(const ZeroList& zl, long n) {
  return accumulate_first(zl, n, [](const ZeroEntry& e) { return e.one_minus_modulus(); });
}

double log_partial_product(const ZeroList& zl, long n) {
  const long len = std::min(n, zl.length());
  long seen = 0;
  for (const auto& e : zl.entries) {
    if (seen >= len) break;
    if (std::isinf(e.log_inv_modulus))
      throw PreconditionError("g(0) != 0", "the zero list contains the origin");
    seen += e.count();
  }
  return accumulate_first(zl, n, [](const ZeroEntry& e) { return e.log_inv_modulus; });
}

double partial_products(const ZeroList& zl, long n) { return std::exp(log_partial_product(zl, n)); }

namespace {

std::size_t row_at_or_below(const std::vector<long>& n, long k) {
  auto it = std::upper_bound(n.begin(), n.end(), k);
  if (it == n.begin()) throw DomainError("index below the first statistics row");
  return static_cast<std::size_t>(it - n.begin() - 1);
}

}  // namespace

double ZeroStats::blaschke_at(long k) const { return blaschke_partial_sums[row_at_or_below(n, k)]; }
double ZeroStats::log_product_at(long k) const { return log_partial_products[row_at_or_below(n, k)]; }

ZeroStats zero_stats(const ZeroList& zl, long max_rows) {
  ZeroStats st;
  st.length = zl.length();
  const long N = st.length;
  std::vector<long> rows;
  if (N <= max_rows) {
    rows.resize(static_cast<std::size_t>(N));
    std::iota(rows.begin(), rows.end(), 1L);
  } else {
    st.sampled = true;
    for (long k = 1; k <= 4096; ++k) rows.push_back(k);
    for (double x = 4096.0; x < static_cast<double>(N); x *= std::exp2(1.0 / 512))
      rows.push_back(static_cast<long>(x));
    for (long p = 1; p <= N && p > 0; p *= 2) rows.push_back(p);
    for (int k = 0; k < 62 && (N >> k) > 0; ++k) rows.push_back(N >> k);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }
  bool origin = false;
  // Cumulative counts per entry, then rows by linear interpolation inside runs.
  std::vector<long> cum(zl.entries.size() + 1, 0);
  std::vector<double> cumB(zl.entries.size() + 1, 0.0), cumP(zl.entries.size() + 1, 0.0);
  for (std::size_t i = 0; i < zl.entries.size(); ++i) {
    const auto& e = zl.entries[i];
    const double c = static_cast<double>(e.count());
    cum[i + 1] = cum[i] + e.count();
    cumB[i + 1] = cumB[i] + c * e.one_minus_modulus();
    if (std::isinf(e.log_inv_modulus)) origin = true;
    cumP[i + 1] = cumP[i] + (std::isinf(e.log_inv_modulus) ? 0.0 : c * e.log_inv_modulus);
  }
  std::size_t ei = 0;
  for (long r : rows) {
    while (cum[ei + 1] < r) ++ei;
    const auto& e = zl.entries[ei];
    const double extra = static_cast<double>(r - cum[ei]);
    st.n.push_back(r);
    st.blaschke_partial_sums.push_back(cumB[ei] + extra * e.one_minus_modulus());
    st.log_partial_products.push_back(
        origin ? std::numeric_limits<double>::quiet_NaN()
               : cumP[ei] + extra * e.log_inv_modulus);
  }
  return st;
}

GrowthFit fit_growth(const ZeroStats& st, GrowthModel model) {
  if (st.length < 32)
    throw PreconditionError("zero list length >= 32", "got " + std::to_string(st.length));
  if (!st.log_partial_products.empty() && std::isnan(st.log_partial_products.back()))
    throw PreconditionError("g(0) != 0", "the zero list contains the origin");
  const long half = (st.length + 1) / 2;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < st.n.size(); ++i) {
    if (st.n[i] < half) continue;
    const double ln = std::log(static_cast<double>(st.n[i]));
    x.push_back(model == GrowthModel::Power ? ln : std::sqrt(ln));
    y.push_back(st.log_partial_products[i]);
  }
  // All zeros on one circle: P(n) = n L exactly, which no log-law fits.
  {
    bool same = true;
    const double L = st.log_partial_products.back() / static_cast<double>(st.n.back());
    for (std::size_t i = 0; i < st.n.size() && same; ++i)
      same = std::abs(st.log_partial_products[i] - L * static_cast<double>(st.n[i])) <=
             1e-12 * std::abs(st.log_partial_products[i]) + 1e-300;
    if (same) throw DegenerateInput("ill-conditioned fit: all zeros share one modulus");
  }
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += y[i] * y[i];
  }
  if (!(sxx > 0)) throw DegenerateInput("ill-conditioned fit: no spread in the regressor");
  GrowthFit fit;
  fit.model = model;
  fit.coefficient = sxy / sxx;
  fit.intercept = my - fit.coefficient * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.coefficient * x[i];
    sse += r * r;
  }
  fit.residual = syy > 0 ? std::sqrt(sse / syy) : 0.0;
  fit.stderr_ = m > 2 ? std::sqrt(sse / (m - 2) / sxx) : 0.0;
  fit.points = static_cast<int>(x.size());
  return fit;
}

GrowthFit fit_growth(const ZeroList& zl, GrowthModel model) {
  return fit_growth(zero_stats(zl), model);
}

JensenCheck jensen_check(const DiscFunction& f, double r, double tol) {
  if (!(r > 0 && r < 1)) throw DomainError("jensen_check: r must be in (0, 1)");
  const cplx f0 = f(0.0);
  if (std::abs(f0) == 0.0) throw PreconditionError("f(0) != 0", "f vanishes at the origin");
  const DiscFunction df = f.derivative();
  const double radius = nudged_radius(f, df, r);
  JensenCheck out;
  out.radius = radius;
  out.lhs = circle_mean_log_abs(f, radius, std::min(tol, 1e-10)).quad.value;
  const ZeroList zl = locate_zeros(f, radius, tol);
  if (zl.incomplete) throw ToleranceNotMet("jensen_check: zero location incomplete: " + zl.note, 0, 0);
  out.rhs = std::log(std::abs(f0));
  for (const auto& e : zl.entries) {
    out.rhs += static_cast<double>(e.count()) * (std::log(radius) + e.log_inv_modulus);
    out.zeros += static_cast<int>(e.count());
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

std::string ZeroLaw::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Power:
      os << "power(" << gamma << ")";
      break;
    case Kind::SqrtLog:
      os << "sqrtlog";
      break;
    case Kind::Blaschke:
      os << "blaschke";
      break;
  }
  return os.str();
}

IncompatibilityVerdict zero_incompatibility_verdict(const ZeroStats& st, const ZeroLaw& law) {
  if (st.length < 256)
    throw PreconditionError("zero sequence length >= 256", "got " + std::to_string(st.length));
  IncompatibilityVerdict out;
  const long N = st.length;
  std::ostringstream os;
  if (law.kind == ZeroLaw::Kind::Blaschke) {
    // Dyadic increments of the Blaschke sums; a convergent sum makes them decay.
    int top = 0;
    while ((2L << top) <= N) ++top;
    double prev_b = st.blaschke_at(1);
    for (int m = 1; m <= top; ++m) {
      const long k = 1L << m;
      const double b = st.blaschke_at(k);
      out.trend.emplace_back(k, b - prev_b);
      prev_b = b;
    }
    const std::size_t T = out.trend.size();
    if (T < 5) {
      out.verdict = "inconclusive";
      out.diagnostic = "too few dyadic windows";
      return out;
    }
    bool decay = true, steady = true;
    for (std::size_t i = T - 4; i < T; ++i) {
      const double a = out.trend[i - 1].second, b = out.trend[i].second;
      decay = decay && b <= 0.75 * a;
      steady = steady && b > 0 && b >= 0.9 * a;
    }
    os << "Blaschke sum " << st.blaschke_at(N) << " at n = " << N << "; last dyadic increment "
       << out.trend.back().second;
    if (steady) {
      out.verdict = "incompatible";
      os << " (increments not decaying)";
    } else if (decay) {
      out.verdict = "compatible";
      os << " (increments decaying geometrically)";
    } else {
      out.verdict = "inconclusive";
    }
    out.diagnostic = os.str();
    return out;
  }
  auto log_law = [&](long n) {
    const double ln = std::log(static_cast<double>(n));
    return law.kind == ZeroLaw::Kind::Power ? law.gamma * ln : 0.5 * std::log(ln);
  };
  for (int k = 6; k >= 0; --k) {
    const long n = N >> k;
    if (n < 3) continue;
    out.trend.emplace_back(n, std::exp(st.log_product_at(n) - log_law(n)));
  }
  auto logR = [&](long n) { return st.log_product_at(n) - log_law(n); };
  const double r1 = logR(N), r2 = logR(N / 2), r4 = logR(N / 4);
  os << "prod 1/|z_k| / law = " << std::exp(r1) << " at n = " << N << " (" << std::exp(r2)
     << " at n/2, " << std::exp(r4) << " at n/4)";
  if (r1 >= std::log(10.0) && r1 > r2 && r2 > r4)
    out.verdict = "incompatible";
  else if (r1 <= r2 && r2 <= r4)
    out.verdict = "compatible";
  else
    out.verdict = "inconclusive";
  out.diagnostic = os.str();
  return out;
}

void write_zero_csv(std::ostream& os, const ZeroList& zl, long max_rows) {
  os << "k,re,im,modulus,multiplicity,provenance\n";
  os.precision(17);
  long k = 0;
  const std::string prov = to_string(zl.provenance);
  for (const auto& e : zl.entries) {
    const double rho = e.modulus();
    const double t0 = std::arg(e.location);
    for (long j = 0; j < e.ring_size; ++j) {
      if (k >= max_rows) return;
      const cplx z = e.ring_size == 1 ? e.location
                                      : std::polar(rho, t0 + kTwoPi * static_cast<double>(j) /
                                                                static_cast<double>(e.ring_size));
      os << ++k << ',' << z.real() << ',' << z.imag() << ',' << rho << ',' << e.multiplicity << ','
         << prov << '\n';
    }
  }
}

void write_stats_csv(std::ostream& os, const ZeroStats& st) {
  os << "n,blaschke_sum,log_partial_product\n";
  os.precision(17);
  for (std::size_t i = 0; i < st.n.size(); ++i)
    os << st.n[i] << ',' << st.blaschke_partial_sums[i] << ',' << st.log_partial_products[i]
       << '\n';
}

}  // namespace anlab
