#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "anlab/discfun.hpp"
#include "anlab/entire.hpp"
#include "anlab/spaces.hpp"
#include "anlab/zeros.hpp"

namespace anlab {

// S_{phi,w}(f) = w * (phi o f); w = 1 gives S_phi.
inline DiscFunction superpose(const EntireFunction& phi, const DiscFunction& w,
                              const DiscFunction& f) {
  return weighted_multiply(w, compose_entire(phi, f));
}

// Evidence table written next to the JSON report as <name>.csv.
struct CsvTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ProbeReport {
  std::string experiment;
  nlohmann::json inputs = nlohmann::json::object();
  std::map<std::string, double> constants;
  nlohmann::json samples = nlohmann::json::array();
  std::string verdict;
  std::uint64_t seed = 0;
  std::vector<CsvTable> evidence;

  nlohmann::json to_json() const;
};

struct ExperimentOptions {
  double tol = 1e-8;
  int threads = 1;
};

// Bloch-seminorm running sup of exp o (c log 1/(1-z)) = (1-z)^{-c} on the
// radii 1 - 2^-j, checked against the closed form c (1+r)(1-r)^{-c}.
// Verdict "witness" or "inconclusive".
ProbeReport theorem1_witness(double p, double alpha, double c, int j_max,
                             const ExperimentOptions& opts = {});

// Zeros of g (six seeded roots, |root| <= 0.8) located among the zeros of
// F = w (exp o g - 1), w = 1 - z/2. Verdict "inherited" or "missing".
ProbeReport zero_inheritance_check(std::uint64_t seed, const ExperimentOptions& opts = {});

// Family of Bloch functions with norm <= K; each ||S_{phi,w} f||^p in
// A^p_alpha is compared with the a-priori cap built from r0 and the sharp
// growth bound. Verdict "bounded-consistent" or "cap-violated".
ProbeReport theorem2_probe(const EntireFunction& phi, const DiscFunction& w, double p,
                           double alpha, double beta, double K, int family_size,
                           std::uint64_t seed, const ExperimentOptions& opts = {});

// Pointwise check of v |phi'(f)| <= max(A v(0), L ||f|| / 2) on bounded
// polynomial fixtures. With derivative_space the DH^inf_v norms of S_phi f
// and S_phi' f are reported as well. Verdict "derivative-bounded-consistent"
// or "bound-violated".
ProbeReport theorem4_check(const EntireFunction& phi, const Weight& v, int family_size,
                           std::uint64_t seed, bool derivative_space = false,
                           const ExperimentOptions& opts = {});

// Factor product prod(1 + c z^{n_k}) in H^inf_v whose zeros are not a
// Blaschke sequence. Verdict "non-blaschke-witness", "depth-reduced" or
// "certificate-failed".
struct Corollary1Result {
  DiscFunction f;
  ZeroList zeros;
  ProbeReport report;
  std::vector<long> exponents;
};
Corollary1Result corollary1_construction(const Weight& v, int depth, double c,
                                         const ExperimentOptions& opts = {});

// Membership of log(1/(1-z)) in B and H^inf_log, plus the divergence witness
// for c = 2. Verdict "consistent" or "inconsistent".
ProbeReport corollary2_experiment(int j_max, const ExperimentOptions& opts = {});

}  // namespace anlab
