#include "anlab/discfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anlab/errors.hpp"

namespace anlab {

struct DiscFunction::Holder {
  Node v;
};

namespace {
template <class T>
std::shared_ptr<const DiscFunction::Holder> make_holder(T&& n) {
  return std::make_shared<const DiscFunction::Holder>(DiscFunction::Holder{std::forward<T>(n)});
}
}  // namespace

const DiscFunction::Node& DiscFunction::node() const { return node_->v; }

namespace {

constexpr long kDenseDegree = 4096;
constexpr double kLogCeiling = 690.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx mul(cplx a, cplx b) {
  if (is_overflow(a)) return b == cplx{} ? cplx{} : overflow_value();
  if (is_overflow(b)) return a == cplx{} ? cplx{} : overflow_value();
  return tag_overflow(a * b);
}

// z^n for possibly huge n.
cplx power(cplx z, long n) {
  if (n == 0) return 1.0;
  if (z == cplx{}) return 0.0;
  if (n <= 64) {
    cplx acc = 1.0, base = z;
    for (long e = n; e > 0; e >>= 1) {
      if (e & 1) acc *= base;
      base *= base;
    }
    return acc;
  }
  return std::exp(static_cast<double>(n) * std::log(z));
}

// Derivative with zero-aware simplification.
DiscFunction product_of(const DiscFunction& a, const DiscFunction& b) {
  if (a.is_zero() || b.is_zero()) return DiscFunction::constant(0.0);
  return DiscFunction::weighted_product(a, b);
}

DiscFunction sum_of(std::vector<DiscFunction> terms) {
  std::erase_if(terms, [](const DiscFunction& f) { return f.is_zero(); });
  if (terms.empty()) return DiscFunction::constant(0.0);
  if (terms.size() == 1) return terms.front();
  return DiscFunction::sum(std::move(terms));
}

}  // namespace

DiscFunction DiscFunction::sparse_taylor(std::vector<std::pair<long, cplx>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  node::Taylor t;
  for (const auto& [n, a] : terms) {
    if (n < 0) throw InvalidSpec("taylor: negative exponent");
    if (a == cplx{}) continue;
    if (!t.terms.empty() && t.terms.back().first == n)
      t.terms.back().second += a;
    else
      t.terms.emplace_back(n, a);
  }
  const long degree = t.terms.empty() ? 0 : t.terms.back().first;
  if (degree <= kDenseDegree) {
    t.dense.assign(degree + 1, cplx{});
    for (const auto& [n, a] : t.terms) t.dense[n] = a;
  }
  return DiscFunction(make_holder(std::move(t)));
}

DiscFunction DiscFunction::taylor(std::vector<cplx> coeffs) {
  std::vector<std::pair<long, cplx>> terms;
  for (std::size_t n = 0; n < coeffs.size(); ++n) terms.emplace_back(static_cast<long>(n), coeffs[n]);
  return sparse_taylor(std::move(terms));
}

DiscFunction DiscFunction::factor_product(std::vector<Factor> factors) {
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (!(factors[k].c > 0)) throw InvalidSpec("factorprod: c_k must be > 0");
    if (factors[k].n < 1) throw InvalidSpec("factorprod: n_k must be a positive integer");
    if (k > 0 && factors[k].n <= factors[k - 1].n)
      throw InvalidSpec("factorprod: n_k must be strictly increasing");
  }
  return DiscFunction(make_holder(node::FactorProduct{std::move(factors)}));
}

DiscFunction DiscFunction::constant(cplx a) {
  return DiscFunction(make_holder(node::Constant{a}));
}
DiscFunction DiscFunction::identity() {
  return DiscFunction(make_holder(node::Identity{}));
}
DiscFunction DiscFunction::log_one_minus() {
  return DiscFunction(make_holder(node::LogOneMinus{}));
}
DiscFunction DiscFunction::power_one_minus(double gamma) {
  if (!(gamma > 0)) throw InvalidSpec("pow1m: gamma must be > 0");
  return DiscFunction(make_holder(node::PowerOneMinus{gamma}));
}
DiscFunction DiscFunction::rotated_scaled(cplx c, double theta, DiscFunction inner) {
  return DiscFunction(
      make_holder(node::RotatedScaled{c, theta, std::move(inner)}));
}
DiscFunction DiscFunction::composed(EntireFunction phi, DiscFunction inner) {
  return DiscFunction(make_holder(node::Composed{std::move(phi), std::move(inner)}));
}
DiscFunction DiscFunction::weighted_product(DiscFunction w, DiscFunction inner) {
  return DiscFunction(
      make_holder(node::WeightedProduct{std::move(w), std::move(inner)}));
}
DiscFunction DiscFunction::sum(std::vector<DiscFunction> terms) {
  return DiscFunction(make_holder(node::Sum{std::move(terms)}));
}

bool DiscFunction::is_closed_form() const {
  return std::visit(overloaded{[](const node::Constant&) { return true; },
                               [](const node::Identity&) { return true; },
                               [](const node::LogOneMinus&) { return true; },
                               [](const node::PowerOneMinus&) { return true; },
                               [](const node::RotatedScaled& r) { return r.inner.is_closed_form(); },
                               [](const auto&) { return false; }},
                    node_->v);
}

bool DiscFunction::is_zero() const {
  if (const auto* c = std::get_if<node::Constant>(&node_->v)) return c->a == cplx{};
  if (const auto* t = std::get_if<node::Taylor>(&node_->v)) return t->terms.empty();
  return false;
}

cplx DiscFunction::eval(cplx z, double tol) const {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << "disc function evaluated at |z| = " << std::abs(z) << " >= 1";
    throw DomainError(os.str());
  }
  return eval_unchecked(z, tol);
}

cplx DiscFunction::eval_unchecked(cplx z, double tol) const {
  return std::visit(
      overloaded{
          [&](const node::Taylor& t) -> cplx {
            if (!t.dense.empty()) {
              cplx acc{};
              for (auto it = t.dense.rbegin(); it != t.dense.rend(); ++it) acc = acc * z + *it;
              return tag_overflow(acc);
            }
            cplx acc{};
            for (const auto& [n, a] : t.terms) acc += a * power(z, n);
            return tag_overflow(acc);
          },
          [&](const node::FactorProduct& p) -> cplx {
            const double r = std::abs(z);
            const std::size_t m = p.factors.size();
            std::vector<double> tail(m + 1, 0.0);
            for (std::size_t k = m; k-- > 0;)
              tail[k] = tail[k + 1] + p.factors[k].c * std::pow(r, static_cast<double>(p.factors[k].n));
            cplx acc = 1.0;
            for (std::size_t k = 0; k < m; ++k) {
              if (tail[k] <= tol * (1.0 + std::abs(acc))) break;
              acc *= 1.0 + p.factors[k].c * power(z, p.factors[k].n);
            }
            return tag_overflow(acc);
          },
          [&](const node::Constant& c) -> cplx { return c.a; },
          [&](const node::Identity&) -> cplx { return z; },
          [&](const node::LogOneMinus&) -> cplx { return -std::log(1.0 - z); },
          [&](const node::PowerOneMinus& p) -> cplx {
            const cplx l = std::log(1.0 - z);
            if (-p.gamma * l.real() > kLogCeiling) return overflow_value();
            return tag_overflow(std::exp(-p.gamma * l));
          },
          [&](const node::RotatedScaled& r) -> cplx {
            return mul(r.c, r.inner.eval_unchecked(std::polar(1.0, r.theta) * z, tol));
          },
          [&](const node::Composed& c) -> cplx {
            const cplx u = c.inner.eval_unchecked(z, tol);
            if (is_overflow(u)) return c.phi.is_constant() ? c.phi(0.0) : overflow_value();
            return c.phi(u);
          },
          [&](const node::WeightedProduct& w) -> cplx {
            return mul(w.w.eval_unchecked(z, tol), w.inner.eval_unchecked(z, tol));
          },
          [&](const node::Sum& s) -> cplx {
            cplx acc{};
            for (const auto& t : s.terms) {
              const cplx v = t.eval_unchecked(z, tol);
              if (is_overflow(v)) return overflow_value();
              acc += v;
            }
            return tag_overflow(acc);
          }},
      node_->v);
}

DiscFunction DiscFunction::derivative() const {
  return std::visit(
      overloaded{
          [](const node::Taylor& t) {
            std::vector<std::pair<long, cplx>> d;
            for (const auto& [n, a] : t.terms)
              if (n > 0) d.emplace_back(n - 1, static_cast<double>(n) * a);
            return sparse_taylor(std::move(d));
          },
          [](const node::FactorProduct& p) {
            // Product rule: sum_k c_k n_k z^{n_k - 1} prod_{j != k} (1 + c_j z^{n_j}).
            std::vector<DiscFunction> terms;
            for (std::size_t k = 0; k < p.factors.size(); ++k) {
              std::vector<Factor> others;
              for (std::size_t j = 0; j < p.factors.size(); ++j)
                if (j != k) others.push_back(p.factors[j]);
              const auto& f = p.factors[k];
              auto mono = sparse_taylor({{f.n - 1, f.c * static_cast<double>(f.n)}});
              terms.push_back(others.empty() ? mono
                                             : weighted_product(mono, factor_product(std::move(others))));
            }
            return sum_of(std::move(terms));
          },
          [](const node::Constant&) { return constant(0.0); },
          [](const node::Identity&) { return constant(1.0); },
          [](const node::LogOneMinus&) { return power_one_minus(1.0); },
          [](const node::PowerOneMinus& p) {
            return rotated_scaled(p.gamma, 0.0, power_one_minus(p.gamma + 1.0));
          },
          [](const node::RotatedScaled& r) {
            const DiscFunction d = r.inner.derivative();
            if (d.is_zero() || r.c == cplx{}) return constant(0.0);
            return rotated_scaled(r.c * std::polar(1.0, r.theta), r.theta, d);
          },
          [](const node::Composed& c) {
            const DiscFunction d = c.inner.derivative();
            const EntireFunction dphi = c.phi.derivative();
            if (d.is_zero() || (dphi.is_constant() && dphi(0.0) == cplx{})) return constant(0.0);
            return product_of(d, composed(dphi, c.inner));
          },
          [](const node::WeightedProduct& w) {
            return sum_of({product_of(w.w.derivative(), w.inner),
                           product_of(w.w, w.inner.derivative())});
          },
          [](const node::Sum& s) {
            std::vector<DiscFunction> d;
            for (const auto& t : s.terms) d.push_back(t.derivative());
            return sum_of(std::move(d));
          }},
      node_->v);
}

cplx factor_product_partial(const DiscFunction& f, cplx z, std::size_t k) {
  const auto* p = std::get_if<node::FactorProduct>(&f.node());
  if (!p) throw InvalidSpec("factor_product_partial: not a factor product");
  if (!(std::abs(z) < 1.0)) throw DomainError("factor_product_partial: |z| >= 1");
  cplx acc = 1.0;
  for (std::size_t j = 0; j < std::min(k, p->factors.size()); ++j)
    acc *= 1.0 + p->factors[j].c * power(z, p->factors[j].n);
  return tag_overflow(acc);
}

double factor_product_tail(const DiscFunction& f, double r, std::size_t k) {
  const auto* p = std::get_if<node::FactorProduct>(&f.node());
  if (!p) throw InvalidSpec("factor_product_tail: not a factor product");
  double t = 0.0;
  for (std::size_t j = k; j < p->factors.size(); ++j)
    t += p->factors[j].c * std::pow(r, static_cast<double>(p->factors[j].n));
  return t;
}

TaylorCoefficients taylor_coefficients(const DiscFunction& f, int n, double rho, double tol) {
  if (!(rho > 0 && rho < 1)) throw DomainError("taylor_coefficients: rho must be in (0, 1)");
  if (n < 0) throw InvalidSpec("taylor_coefficients: negative order");
  auto coefficients_at = [&](int m) {
    std::vector<cplx> samples(m);
    for (int k = 0; k < m; ++k) samples[k] = f(std::polar(rho, kTwoPi * k / m));
    std::vector<cplx> c(n + 1);
    for (int j = 0; j <= n; ++j) {
      cplx acc{};
      for (int k = 0; k < m; ++k) acc += samples[k] * std::polar(1.0, -kTwoPi * static_cast<double>(k) * j / m);
      c[j] = acc / static_cast<double>(m) / std::pow(rho, j);
    }
    return c;
  };
  int m = 16;
  while (m < 2 * (n + 1)) m *= 2;
  auto prev = coefficients_at(m);
  constexpr int kMaxNodes = 1 << 20;
  while (true) {
    m *= 2;
    auto next = coefficients_at(m);
    TaylorCoefficients out;
    out.nodes = m;
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double e = std::abs(next[j] - prev[j]);
      out.errors.push_back(e);
      worst = std::max(worst, e / (1.0 + std::abs(next[j])));
    }
    out.coeffs = std::move(next);
    if (worst <= tol) return out;
    if (m >= kMaxNodes)
      throw ToleranceNotMet("taylor_coefficients did not converge", std::abs(out.coeffs.back()), worst);
    prev = std::move(out.coeffs);
  }
}

}  // namespace anlab
