#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "anlab/common.hpp"
#include "anlab/entire.hpp"

namespace anlab {

class DiscFunction;

// One factor (1 + c z^n) of a factor product.
struct Factor {
  double c = 0.0;
  long n = 0;
};

namespace node {

struct Taylor {
  std::vector<std::pair<long, cplx>> terms;  // sorted by exponent, nonzero
  std::vector<cplx> dense;                   // filled when the degree is small
};
struct FactorProduct {
  std::vector<Factor> factors;  // n strictly increasing
};
struct Constant {
  cplx a;
};
struct Identity {};
struct LogOneMinus {};  // log(1/(1-z))
struct PowerOneMinus {  // (1-z)^(-gamma)
  double gamma;
};
struct RotatedScaled;  // c * inner(e^{i theta} z)
struct Composed;       // phi(inner(z))
struct WeightedProduct;  // w(z) * inner(z)
struct Sum;

}  // namespace node

// An analytic function on the unit disc. Values are immutable and share
// structure, so copies are cheap and evaluation is safe from any thread.
class DiscFunction {
 public:
  using Node = std::variant<node::Taylor, node::FactorProduct, node::Constant, node::Identity,
                            node::LogOneMinus, node::PowerOneMinus, node::RotatedScaled,
                            node::Composed, node::WeightedProduct, node::Sum>;

  static DiscFunction taylor(std::vector<cplx> coeffs);
  static DiscFunction sparse_taylor(std::vector<std::pair<long, cplx>> terms);
  static DiscFunction factor_product(std::vector<Factor> factors);
  static DiscFunction constant(cplx a);
  static DiscFunction identity();
  static DiscFunction log_one_minus();
  static DiscFunction power_one_minus(double gamma);
  static DiscFunction rotated_scaled(cplx c, double theta, DiscFunction inner);
  static DiscFunction composed(EntireFunction phi, DiscFunction inner);
  static DiscFunction weighted_product(DiscFunction w, DiscFunction inner);
  static DiscFunction sum(std::vector<DiscFunction> terms);

  // Throws DomainError unless |z| < 1. Overflow comes back as overflow_value().
  // `tol` is the relative truncation tolerance for factor products.
  cplx eval(cplx z, double tol = 1e-17) const;
  cplx operator()(cplx z) const { return eval(z); }

  DiscFunction derivative() const;
  DiscFunction scaled(cplx c) const { return rotated_scaled(c, 0.0, *this); }

  const Node& node() const;
  struct Holder;  // opaque owner of the node
  bool is_closed_form() const;
  bool is_zero() const;

 private:
  explicit DiscFunction(std::shared_ptr<const Holder> n) : node_(std::move(n)) {}
  cplx eval_unchecked(cplx z, double tol) const;

  std::shared_ptr<const Holder> node_;
};

namespace node {
struct RotatedScaled {
  cplx c;
  double theta;
  DiscFunction inner;
};
struct Composed {
  EntireFunction phi;
  DiscFunction inner;
};
struct WeightedProduct {
  DiscFunction w;
  DiscFunction inner;
};
struct Sum {
  std::vector<DiscFunction> terms;
};
}  // namespace node

inline cplx eval(const DiscFunction& f, cplx z) { return f.eval(z); }
inline DiscFunction derivative(const DiscFunction& f) { return f.derivative(); }

// S_phi(f) = phi o f.
inline DiscFunction compose_entire(const EntireFunction& phi, const DiscFunction& f) {
  return DiscFunction::composed(phi, f);
}
// M_w(g) = w * g.
inline DiscFunction weighted_multiply(const DiscFunction& w, const DiscFunction& g) {
  return DiscFunction::weighted_product(w, g);
}

// Product of the first `k` factors only.
cplx factor_product_partial(const DiscFunction& f, cplx z, std::size_t k);
// sum_{j > k} c_j r^{n_j}: |f - partial_k| <= |partial_k| (exp(bound) - 1) on |z| = r.
double factor_product_tail(const DiscFunction& f, double r, std::size_t k);

struct TaylorCoefficients {
  std::vector<cplx> coeffs;
  std::vector<double> errors;
  int nodes = 0;
};
// First n+1 Taylor coefficients from circle means on |z| = rho.
TaylorCoefficients taylor_coefficients(const DiscFunction& f, int n, double rho,
                                       double tol = 1e-12);

}  // namespace anlab
