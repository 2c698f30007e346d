#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anlab/discfun.hpp"

namespace anlab {

enum class Provenance { Analytic, Located, Synthetic };
std::string to_string(Provenance p);

// A zero with multiplicity. ring_size > 1 stands for ring_size zeros equally
// spaced on the circle |z| = |location|, starting at arg(location); factor
// products with exponents in the millions are stored this way.
struct ZeroEntry {
  cplx location;
  int multiplicity = 1;
  long ring_size = 1;
  double log_inv_modulus = 0.0;  // -log|z|, kept separately for |z| near 1
  double residual = 0.0;         // |f(z)| for located zeros

  long count() const { return static_cast<long>(multiplicity) * ring_size; }
  double modulus() const { return std::exp(-log_inv_modulus); }
  double one_minus_modulus() const { return -std::expm1(-log_inv_modulus); }
};

struct ZeroList {
  std::vector<ZeroEntry> entries;  // sorted by modulus
  Provenance provenance = Provenance::Located;
  bool incomplete = false;
  std::string note;

  long length() const;  // zeros counted with multiplicity
};

ZeroEntry make_zero(cplx z, int multiplicity = 1);
// Sorted entries; moduli only matter, arguments follow the golden angle.
ZeroList synthetic_zeros(const std::vector<double>& moduli);
// Same, from -log|z_k| directly (keeps precision when |z_k| is near 1).
ZeroList synthetic_zeros_log(const std::vector<double>& log_inv_moduli);
// Closed-form zeros of a factor product prod(1 + c_k z^{n_k}) inside the disc.
ZeroList analytic_zeros(const DiscFunction& f);

// Thrown by the winding routines when a contour passes through a zero.
class ContourHitsZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (1/2 pi i) int_{|z|=r} f'/f dz rounded to an integer. The contour is moved
// outward by 1e-9 (at most 5 times) while a zero lies within 1e-9 of it.
int count_zeros_disk(const DiscFunction& f, double r, double tol = 1e-8);

struct LocateOptions {
  long max_cells = 100000;
  int threads = 1;
};
// Argument-principle subdivision on annulus sectors plus Newton polish.
ZeroList locate_zeros(const DiscFunction& f, double r_max, double tol = 1e-8,
                      const LocateOptions& opts = {});

double blaschke_sum(const ZeroList& zl, long n);
// sum_{k <= n} log(1/|z_k|), and its exponential.
double log_partial_product(const ZeroList& zl, long n);
double partial_products(const ZeroList& zl, long n);

enum class GrowthModel { Power, SqrtLog };
std::string to_string(GrowthModel m);

struct GrowthFit {
  GrowthModel model = GrowthModel::Power;
  double coefficient = 0.0;  // gamma (power) or B (sqrtlog)
  double intercept = 0.0;
  double residual = 0.0;  // rms residual / rms of the data
  double stderr_ = 0.0;   // standard error of the coefficient
  int points = 0;
};

// Rows (n, B(n), P(n)) with B the Blaschke partial sums and P the log
// partial products. Every n is kept for short lists; long lists are sampled
// geometrically (all powers of two and N/2^k included).
struct ZeroStats {
  long length = 0;
  bool sampled = false;
  std::vector<long> n;
  std::vector<double> blaschke_partial_sums;
  std::vector<double> log_partial_products;
  std::optional<GrowthFit> fit;

  double blaschke_at(long k) const;
  double log_product_at(long k) const;
};
ZeroStats zero_stats(const ZeroList& zl, long max_rows = 65536);

// Least squares of P(n) against gamma log n (power) or B sqrt(log n) (sqrtlog),
// with intercept, over the tail half n in [N/2, N].
GrowthFit fit_growth(const ZeroStats& stats, GrowthModel model);
GrowthFit fit_growth(const ZeroList& zl, GrowthModel model);

// Circle mean of log|f| at r against log|f(0)| + sum log(r/|z_k|).
struct JensenCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double radius = 0.0;
  int zeros = 0;
};
JensenCheck jensen_check(const DiscFunction& f, double r, double tol = 1e-10);

struct ZeroLaw {
  enum class Kind { Power, SqrtLog, Blaschke };
  Kind kind = Kind::Blaschke;
  double gamma = 0.0;

  static ZeroLaw power(double gamma) { return {Kind::Power, gamma}; }
  static ZeroLaw sqrtlog() { return {Kind::SqrtLog, 0.0}; }
  static ZeroLaw blaschke() { return {Kind::Blaschke, 0.0}; }
  std::string describe() const;
};

struct IncompatibilityVerdict {
  std::string verdict;  // "incompatible", "compatible", "inconclusive"
  std::string diagnostic;
  std::vector<std::pair<long, double>> trend;  // (n, ratio or dyadic increment)
};
IncompatibilityVerdict zero_incompatibility_verdict(const ZeroStats& stats, const ZeroLaw& law);

void write_zero_csv(std::ostream& os, const ZeroList& zl, long max_rows = 65536);
void write_stats_csv(std::ostream& os, const ZeroStats& stats);

}  // namespace anlab
