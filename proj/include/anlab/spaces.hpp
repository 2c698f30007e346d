#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "anlab/discfun.hpp"
#include "anlab/quadrature.hpp"

namespace anlab {

// Radial weight v on [0, 1). Evaluation goes through s = 1 - r so that radii
// like 1 - 2^-40 keep full relative precision in (1 - r)^gamma and log(e/(1 - r)).
class Weight {
 public:
  enum class Kind { Power, Log, Custom };

  static Weight power(double gamma);  // (1 - r)^gamma
  static Weight log();                // 1 / log(e / (1 - r))
  // Monotone cubic (PCHIP) through (r_i, v_i); r_0 = 0, r_i increasing, v_i
  // decreasing and positive, r_last < 1. Beyond r_last v decays linearly to 0.
  // Throws InvalidSpec if the table breaks the weight contract.
  static Weight custom(std::vector<double> r, std::vector<double> v);

  double at(double r, double s) const;
  double operator()(double r) const { return at(r, 1.0 - r); }
  // psi = 1/v.
  double psi(double r) const { return 1.0 / (*this)(r); }

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& table_r() const { return table_r_; }
  const std::vector<double>& table_v() const { return table_v_; }
  std::string describe() const;

 private:
  struct Interp;
  Weight() = default;

  Kind kind_ = Kind::Power;
  double gamma_ = 1.0;
  std::vector<double> table_r_, table_v_;
  std::shared_ptr<const Interp> interp_;
};

// Positivity, strict decrease and decay (v(1 - 2^-40) <= v(0)/10) on a test
// grid plus, for custom weights, the supplied table nodes.
struct WeightCheck {
  bool ok = true;
  std::string failure;
};
WeightCheck check_weight(const Weight& v);

struct SpaceSpec {
  enum class Kind { Bergman, Bloch, WeightedSup, WeightedDerivSup };
  Kind kind = Kind::Bloch;
  double p = 2.0;
  double alpha = 0.0;
  std::shared_ptr<const Weight> weight;

  static SpaceSpec bergman(double p, double alpha);
  static SpaceSpec bloch();
  static SpaceSpec weighted_sup(Weight v);
  static SpaceSpec weighted_deriv_sup(Weight v);
  std::string describe() const;
};

enum class VerdictKind { Finite, Divergent, Inconclusive };
std::string to_string(VerdictKind k);

// One row of the boundary-refining sup search: level j covers
// 1 - r in [2^-j, 2^-(j-1)].
struct LevelRecord {
  int level = 0;
  double r = 0.0;      // radius of the level maximum
  double theta = 0.0;  // argument of the level maximum
  double level_sup = 0.0;
  double running_sup = 0.0;
};

struct MembershipVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double value = 0.0;  // norm, or the last running sup / partial integral
  std::string diagnostic;
  std::vector<LevelRecord> evidence;
  std::map<std::string, double> constants;
  int grid_levels = 0;
  long evaluations = 0;
  QuadResult<double> quad;  // Bergman only

  bool finite() const { return kind == VerdictKind::Finite; }
};

struct SupOptions {
  int j_max = 40;
  int min_levels = 12;
  double unbounded_threshold = 1e12;
};

// sup over the disc of h(r, s = 1 - r, theta), radii refined geometrically
// toward the boundary. Stops with a finite verdict once three successive
// levels move the running sup by less than tol (1 + sup); divergent once the
// sup passes the unbounded threshold or grows by 1.5x across three levels.
MembershipVerdict disc_sup(const std::function<double(double, double, double)>& h, double tol,
                           const SupOptions& opts = {});

MembershipVerdict bergman_norm(const DiscFunction& f, double p, double alpha, double tol);
MembershipVerdict bloch_norm(const DiscFunction& f, double tol, const SupOptions& opts = {});
MembershipVerdict hinfv_norm(const DiscFunction& f, const Weight& v, double tol,
                             const SupOptions& opts = {});
MembershipVerdict dhinfv_norm(const DiscFunction& f, const Weight& v, double tol,
                              const SupOptions& opts = {});
MembershipVerdict norm(const DiscFunction& f, const SpaceSpec& space, double tol);

// (|f(z)|, |f(0)| + (b / 2) log((1 + |z|)/(1 - |z|))) with b the Bloch
// seminorm sup (1 - |z|^2)|f'(z)|. Pass b when it is already known; otherwise
// it is computed.
std::pair<double, double> bloch_growth_bound(const DiscFunction& f, cplx z,
                                             double bloch = -1.0, double tol = 1e-8);

// sup over r_j = 1 - 2^-j of the circle mean of log|f|.
MembershipVerdict jensen_functional(const DiscFunction& f, double tol, int j_max = 30);

}  // namespace anlab
