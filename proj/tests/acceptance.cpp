// One line per acceptance criterion: PASS/FAIL, elapsed time, detail.
// Exit status is the number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "anlab/errors.hpp"
#include "anlab/quadrature.hpp"
#include "anlab/spaces.hpp"
#include "anlab/superpos.hpp"
#include "anlab/zeros.hpp"
#include "oracles.hpp"

using namespace anlab;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome normalization() {
  double worst = 0.0;
  for (double p : {1.0, 2.0})
    for (double alpha : {-0.5, 0.0, 1.0, 2.7}) {
      const auto v = bergman_norm(DiscFunction::constant(1.0), p, alpha, 1e-10);
      if (!v.finite()) return {false, "non-finite norm of 1"};
      worst = std::max(worst, std::abs(v.value - 1.0));
    }
  return {worst < 1e-9, "max |norm - 1| = " + fmt("%.3g", worst)};
}

Outcome monomials() {
  double worst = 0.0;
  for (int n = 0; n <= 8; ++n)
    for (double alpha : {0.0, 1.0}) {
      std::vector<cplx> c(n + 1, 0.0);
      c[n] = 1.0;
      const auto v = bergman_norm(DiscFunction::taylor(c), 2, alpha, 1e-11);
      worst = std::max(worst, std::abs(v.value - oracle::monomial_bergman(n, alpha)));
    }
  return {worst < 1e-8, "max error = " + fmt("%.3g", worst)};
}

Outcome jensen() {
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int deg = 1 + static_cast<int>(rng.next() % 8);
    const auto roots = oracle::random_roots(rng, deg, 0.0, 0.8);
    const cplx lead(rng.uniform(0.5, 2), rng.uniform(-1, 1));
    worst = std::max(worst, jensen_check(DiscFunction::taylor(oracle::poly_from_roots(roots, lead)), 0.9).residual);
  }
  const auto q = jensen_check(DiscFunction::taylor({-0.25, 0, 1}), 0.75);
  const double exact = std::log(0.25) + 2 * std::log(1.5);
  // -0.57536 is the closed form rounded to five decimals.
  const double vs_exact = std::abs(q.lhs - exact), vs_printed = std::abs(q.lhs - (-0.57536));
  const bool ok = worst < 1e-6 && q.residual < 1e-8 && vs_exact < 1e-8 && vs_printed < 5e-6;
  return {ok, "max residual = " + fmt("%.3g", worst) + ", z^2-1/4 mean = " + fmt("%.10f", q.lhs) +
                  " (|diff| to log(1/4)+2log(3/2) = " + fmt("%.2g", vs_exact) + ")"};
}

Outcome counting() {
  Rng rng(4242);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const int deg = 1 + static_cast<int>(rng.next() % 10);
    const auto roots = oracle::random_roots(rng, deg, 0.02, 1.2);
    const auto coeffs = oracle::poly_from_roots(roots);
    const auto f = DiscFunction::taylor(coeffs);
    const auto eig = oracle::companion_roots(coeffs);
    for (double r : {0.2, 0.4, 0.6, 0.8, 0.95})
      if (count_zeros_disk(f, r) != oracle::count_inside(eig, r)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in 250 counts"};
}

Outcome growth() {
  double worst = 0.0;
  for (double gamma : {0.5, 1.5, 3.0}) {
    std::vector<double> L;
    for (int k = 1; k <= 2048; ++k) L.push_back(gamma / k);
    const auto g = fit_growth(synthetic_zeros_log(L), GrowthModel::Power);
    worst = std::max(worst, std::abs(g.coefficient - gamma) / gamma);
  }
  std::vector<double> L{0.0};
  for (int n = 2; n <= 2048; ++n) L.push_back(std::sqrt(std::log(n)) - std::sqrt(std::log(n - 1.0)));
  // log(1/|z_1|) = 0 is not a zero inside the disc; the increments are
  // decreasing, so the tiny stand-in goes last.
  L[0] = 1e-300;
  std::sort(L.rbegin(), L.rend());
  const auto s = fit_growth(synthetic_zeros_log(L), GrowthModel::SqrtLog);
  const double berr = std::abs(s.coefficient - 1.0);
  return {worst < 0.015 && berr < 0.01,
          "max rel gamma error = " + fmt("%.3g", worst) + ", B = " + fmt("%.6f", s.coefficient)};
}

Outcome divergence_witness() {
  const auto r = theorem1_witness(2, 0, 2, 12);
  const auto& rows = r.evidence.at(0).rows;
  if (rows.size() < 12) return {false, "fewer than 12 levels"};
  double min_ratio = 1e300;
  for (int j = 8; j <= 12; ++j) min_ratio = std::min(min_ratio, rows[j - 1][6] / rows[j - 2][6]);
  const double sup12 = rows[11][6];
  const double cf = r.constants.at("max_rel_error_vs_closed_form");
  const bool norm_ok = std::isfinite(r.constants.at("bergman_norm_f"));
  bool inherited = true;
  double worst_res = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto z = zero_inheritance_check(seed);
    inherited = inherited && z.verdict == "inherited";
    worst_res = std::max(worst_res, z.constants.at("worst_distance_or_residual"));
  }
  const bool ok = norm_ok && sup12 > 1e3 && min_ratio >= 1.8 && cf < 1e-8 && inherited && worst_res < 1e-8;
  return {ok, "sup(j=12) = " + fmt("%.4g", sup12) + ", min step ratio = " + fmt("%.4f", min_ratio) +
                  ", closed-form err = " + fmt("%.2g", cf) + ", zero residual = " + fmt("%.2g", worst_res)};
}

Outcome bergman_cap() {
  ExperimentOptions o;
  o.threads = 4;
  const auto r = theorem2_probe(EntireFunction::cos_sqrt(), DiscFunction::constant(1.0), 2, 1, 0, 1, 20, 0, o);
  bool rejected = false;
  std::string msg;
  try {
    theorem2_probe(EntireFunction::exp(), DiscFunction::constant(1.0), 2, 1, 0, 1, 20, 0, o);
  } catch (const PreconditionError& e) {
    msg = e.what();
    rejected = msg.find("order less than one") != std::string::npos;
  }
  int within = 0;
  for (const auto& s : r.samples)
    if (s.value("status", "") == "pass") ++within;
  return {r.verdict == "bounded-consistent" && r.samples.size() == 20 && rejected,
          "verdict " + r.verdict + ", " + std::to_string(within) + "/20 within cap, cap = " +
              fmt("%.4g", r.constants.at("cap")) + (rejected ? ", exp rejected" : ", exp NOT rejected")};
}

Outcome order_type() {
  struct Case {
    const char* name;
    EntireFunction phi;
    double rho, tau;
  };
  const std::vector<Case> cases = {{"exp", EntireFunction::exp(), 1, 1},
                                   {"cos sqrt", EntireFunction::cos_sqrt(), 0.5, 1},
                                   {"exp(2z)", EntireFunction::scaled_exp(2.0), 1, 2},
                                   {"poly3", EntireFunction::polynomial({1, 2, 0, -1}), 0, 0},
                                   {"poly8", EntireFunction::polynomial({0, 0, 0, 0, 0, 0, 0, 0, 3}), 0, 0}};
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const double rho = order_estimate(c.phi, 256);
    // Type is measured at the known order; at the estimated order the
    // coefficient-window bias in rho is amplified by n^{1/rho}.
    const double tau = c.rho > 0 ? type_estimate(c.phi, c.rho, 256) : type_estimate(c.phi, 1.0, 256);
    worst = std::max({worst, std::abs(rho - c.rho), std::abs(tau - c.tau)});
    detail += std::string(detail.empty() ? "" : ", ") + c.name + " (" + fmt("%.4f", rho) + ", " + fmt("%.4f", tau) + ")";
  }
  return {worst <= 0.05, detail};
}

Outcome derivative_bound() {
  const auto e = theorem4_check(EntireFunction::exp(), Weight::power(1), 10, 0);
  const auto p = theorem4_check(EntireFunction::polynomial({0, 1, 0, 1}), Weight::power(1), 10, 0);
  bool ok = true;
  for (const auto* r : {&e, &p})
    ok = ok && r->verdict == "derivative-bounded-consistent" && r->constants.at("violations") == 0 &&
         r->constants.at("small_case_violations") == 0 && r->constants.at("small_case_points") > 0;
  const double ea = std::abs(e.constants.at("A") - std::exp(1.0)), pa = std::abs(p.constants.at("A") - 4.0);
  ok = ok && ea < 1e-10 && pa < 1e-10;
  return {ok, "A(exp) err = " + fmt("%.2g", ea) + ", A(z^3+z) err = " + fmt("%.2g", pa) +
                  ", worst margins " + fmt("%.4g", e.constants.at("worst_margin")) + " / " +
                  fmt("%.4g", p.constants.at("worst_margin"))};
}

Outcome non_blaschke() {
  const auto res = corollary1_construction(Weight::log(), 8, std::exp(1.0));
  const auto& cert = res.report.evidence.at(0).rows;
  const auto& bl = res.report.evidence.at(1).rows;
  bool cert_ok = cert.size() == 24;
  for (const auto& row : cert) cert_ok = cert_ok && row[4] <= row[5];
  bool increasing = bl.size() == 8;
  for (std::size_t k = 1; k < bl.size(); ++k) increasing = increasing && bl[k][4] > bl[k - 1][4];
  // The partial sums recomputed from the analytic zero list.
  const double direct = blaschke_sum(res.zeros, res.zeros.length());
  const double last = bl.empty() ? 0.0 : bl.back()[4];
  const bool ok = cert_ok && increasing && last > 5 && direct > 5 && std::abs(direct - last) < 1e-6 * last;
  return {ok, std::to_string(cert.size()) + " certificate radii " + (cert_ok ? "hold" : "FAIL") +
                  ", partial sum = " + fmt("%.6f", last) + ", from zero list = " + fmt("%.6f", direct)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const std::vector<std::string> suite = {
      R"(norm --fn '{"kind":"closed","name":"log1m"}' --space '{"kind":"bloch"}')",
      R"(norm --fn '{"kind":"taylor","coeffs":[0,0,1]}' --space '{"kind":"bergman","p":2,"alpha":1}')",
      R"(norm --fn '{"kind":"closed","name":"log1m"}' --space '{"kind":"wsup","weight":{"kind":"log"}}')",
      R"(zeros --fn '{"kind":"taylor","coeffs":[-0.25,0,1]}' --radius 0.9)",
      R"(zeros --fn '{"kind":"factorprod","factors":[[2,2],[2,4],[2,8]]}')",
      R"(jensen --fn '{"kind":"taylor","coeffs":[-0.25,0,1]}' --radius 0.75)",
      R"(order --entire '{"kind":"cossqrt"}' --subexp-bound 0.5)",
      R"(superpose --entire '{"kind":"exp"}' --w '{"kind":"closed","name":"const","value":1}' --fn '{"kind":"closed","name":"log1m"}' --radii 6 --angles 8)",
      "experiment theorem1",
      "experiment zero-inheritance",
      "experiment theorem2",
      "experiment theorem4",
      "experiment corollary1",
      "experiment corollary2"};
  const fs::path root = fs::temp_directory_path() / "anlab_acceptance_det";
  fs::remove_all(root);
  int diffs = 0, files = 0, failures = 0;
  std::string failed_cmds;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path d = root / (std::to_string(i) + "_" + std::to_string(rep));
      const std::string cmd = std::string(ANLAB_CLI) + " --threads 1 --seed 11 --format both --out " + d.string() +
                              " " + suite[i] + " >/dev/null 2>&1";
      const int st = std::system(cmd.c_str());
      if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) {
        ++failures;
        failed_cmds += " [" + suite[i].substr(0, suite[i].find(' ', 11)) + "]";
      }
      dirs.push_back(d);
    }
    if (!fs::exists(dirs[0])) continue;
    for (const auto& e : fs::directory_iterator(dirs[0])) {
      ++files;
      const fs::path other = dirs[1] / e.path().filename();
      if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++diffs;
    }
  }
  fs::remove_all(root);
  return {diffs == 0 && failures == 0 && files > 0,
          std::to_string(suite.size()) + " commands, " + std::to_string(files) + " files compared, " +
              std::to_string(diffs) + " differ, " + std::to_string(failures) + " runs failed" + failed_cmds};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"measure normalization", 5, normalization},
      {"monomial Bergman norms", 10, monomials},
      {"Jensen identity", 30, jensen},
      {"argument-principle counts", 60, counting},
      {"growth-law fits", 5, growth},
      {"divergence witness and zero inheritance", 60, divergence_witness},
      {"Bergman cap for cos sqrt z", 300, bergman_cap},
      {"order and type", 10, order_type},
      {"pointwise derivative bound", 60, derivative_bound},
      {"non-Blaschke construction", 30, non_blaschke},
      {"CLI determinism", 600, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.budget_s) {
      o.pass = false;
      o.detail += ", over time budget";
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-42s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, dt, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed;
}
