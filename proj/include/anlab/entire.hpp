#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anlab/common.hpp"

namespace anlab {

// Taylor coefficient in log-magnitude form, so that 1/(2n)! and friends stay
// representable far past the double range. `log_abs == -inf` means a_n = 0.
struct LogCoeff {
  double log_abs = -std::numeric_limits<double>::infinity();
  cplx unit{1.0, 0.0};

  bool is_zero() const { return std::isinf(log_abs) && log_abs < 0; }
  cplx value() const { return is_zero() ? cplx{} : std::exp(log_abs) * unit; }
};

struct GrowthMeta {
  double order = 0.0;
  double type = 0.0;
};

// An entire function given by a coefficient rule. The built-in families are
// closed under differentiation:
//   polynomial       sum c_n u^n
//   scaled exp       amp * exp(lambda u)          (exp: lambda = 1)
//   cos sqrt         amp * d^k/du^k cos(sqrt u)
//   trig             amp * sin(u + k pi/2)
class EntireFunction {
 public:
  static EntireFunction exp();
  static EntireFunction scaled_exp(cplx lambda, cplx amp = 1.0);
  static EntireFunction cos_sqrt();
  static EntireFunction sine();
  static EntireFunction polynomial(std::vector<cplx> coeffs);
  static EntireFunction constant(cplx a);
  static EntireFunction identity();

  // eval_entire: closed form where one exists, overflow tagged.
  cplx operator()(cplx u) const;
  // Series evaluation with certified tail; `tail_bound` receives the bound.
  cplx eval_series(cplx u, double* tail_bound = nullptr) const;
  // log|phi(u)|, stable for arguments where phi itself overflows.
  double log_abs(cplx u) const;

  LogCoeff coefficient(long n) const;
  EntireFunction derivative() const;
  EntireFunction scaled(cplx factor) const;

  bool is_polynomial() const { return kind_ == Kind::Polynomial; }
  bool is_constant() const;
  int degree() const;  // -1 unless polynomial
  // Every Taylor coefficient real and >= 0; then M(r) = phi(r).
  bool has_nonnegative_coefficients() const;
  std::optional<GrowthMeta> declared_growth() const;
  std::string describe() const;

  // Raw parameters, for serialization.
  struct Parts {
    std::string family;  // "poly", "scaledexp", "cossqrt", "trig"
    std::vector<cplx> coeffs;
    cplx lambda;
    cplx amp;
    int deriv = 0;
  };
  Parts parts() const;

 private:
  enum class Kind { Polynomial, ScaledExp, CosSqrt, Trig };

  EntireFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<cplx> coeffs_;  // polynomial
  cplx lambda_{1.0, 0.0};     // scaled exp
  cplx amp_{1.0, 0.0};
  int deriv_ = 0;  // cos sqrt / trig derivative order
};

// max_{|u|=r} |phi(u)|; the nonnegative-coefficient shortcut returns |phi(r)|.
// Returns +inf when the value overflows.
double max_modulus(const EntireFunction& phi, double r);
// log M(r), finite even where M(r) overflows.
double log_max_modulus(const EntireFunction& phi, double r);

// Order from the coefficient window n in [N/2, N]; polynomials give 0.
double order_estimate(const EntireFunction& phi, int n_max);
// Type for a given order rho from the same window.
double type_estimate(const EntireFunction& phi, double rho, int n_max);

// Smallest r0 = 2^j (j = 0..40) with log M(r)/r <= bound on every grid radius
// >= r0. Throws PreconditionError when none exists.
struct SubexpThreshold {
  double r0 = 0.0;
  double log_m_r0 = 0.0;
  std::vector<std::pair<double, double>> table;  // (r, log M(r)/r)
};
SubexpThreshold subexp_threshold(const EntireFunction& phi, double bound);

// (|phi'(u)|, M(2|u|)/(2|u|)) for |u| >= 1, the form used in the pointwise
// bound of theorem4_check. This integrates over |zeta| = 2|u| with the
// denominator |zeta - u|^2 replaced by (2|u|)^2 and can fail (e.g. for some
// cubics near |u| = 1).
std::pair<double, double> cauchy_derivative_bound(const EntireFunction& phi, cplx u);
// (|phi'(u)|, M(2|u|)/|u|): Cauchy's estimate on the disc of radius |u|
// around u, which lies inside |zeta| <= 2|u|. Always valid.
std::pair<double, double> cauchy_derivative_estimate(const EntireFunction& phi, cplx u);

inline EntireFunction derivative_entire(const EntireFunction& phi) { return phi.derivative(); }
inline cplx eval_entire(const EntireFunction& phi, cplx u) { return phi(u); }

}  // namespace anlab
