// anlab: norms, zeros and superposition experiments on the unit disc.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "anlab/errors.hpp"
#include "anlab/spec_io.hpp"
#include "anlab/superpos.hpp"
#include "anlab/zeros.hpp"

using namespace anlab;
using nlohmann::json;

namespace {

struct Config {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string format = "json";
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_text(const CsvTable& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << '\n';
  }
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw InvalidSpec("cannot write " + p.string());
  os << body;
}

// Writes <stem>.json and the named CSV bodies according to --format; without
// --out the JSON goes to stdout.
void emit(const Config& cfg, const std::string& stem, const json& report,
          const std::vector<std::pair<std::string, std::string>>& csvs) {
  const bool want_json = cfg.format != "csv";
  const bool want_csv = cfg.format != "json";
  if (cfg.out.empty()) {
    if (want_json) std::cout << report.dump(2) << '\n';
    if (want_csv)
      for (const auto& [name, body] : csvs) std::cout << "# " << name << ".csv\n" << body;
    return;
  }
  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  if (want_json) write_file(dir / (stem + ".json"), report.dump(2) + "\n");
  if (want_csv)
    for (const auto& [name, body] : csvs) write_file(dir / (name + ".csv"), body);
  std::cerr << stem << ": " << (report.contains("verdict") ? report["verdict"].dump() : "done")
            << '\n';
}

json levels_json(const MembershipVerdict& v) {
  json a = json::array();
  for (const auto& l : v.evidence)
    a.push_back({{"level", l.level},
                 {"r", l.r},
                 {"theta", l.theta},
                 {"level_sup", l.level_sup},
                 {"running_sup", l.running_sup}});
  return a;
}

json verdict_json(const MembershipVerdict& v) {
  json c = json::object();
  for (const auto& [k, x] : v.constants) c[k] = x;
  return {{"verdict", to_string(v.kind)},
          {"value", v.value},
          {"diagnostic", v.diagnostic},
          {"constants", c},
          {"grid_levels", v.grid_levels},
          {"evaluations", v.evaluations}};
}

CsvTable levels_table(const MembershipVerdict& v) {
  CsvTable t{"norm_levels", {"level", "r", "theta", "level_sup", "running_sup"}, {}};
  for (const auto& l : v.evidence) t.rows.push_back({double(l.level), l.r, l.theta, l.level_sup, l.running_sup});
  return t;
}

int run_norm(const Config& cfg, const std::string& fn, const std::string& space) {
  const json fj = parse_spec_text(fn), sj = parse_spec_text(space);
  const DiscFunction f = parse_function(fj);
  const SpaceSpec s = parse_space(sj);
  const auto v = norm(f, s, cfg.tol);
  json r = verdict_json(v);
  r["command"] = "norm";
  r["function"] = fj;
  r["space"] = sj;
  r["space_description"] = s.describe();
  r["tol"] = cfg.tol;
  r["levels"] = levels_json(v);
  if (s.kind == SpaceSpec::Kind::Bergman)
    r["quadrature"] = {{"error_estimate", v.quad.error_estimate},
                       {"nodes_used", v.quad.nodes_used},
                       {"converged", v.quad.converged}};
  std::vector<std::pair<std::string, std::string>> csvs;
  if (!v.evidence.empty()) csvs.emplace_back("norm_levels", csv_text(levels_table(v)));
  emit(cfg, "norm", r, csvs);
  return 0;
}

int run_zeros(const Config& cfg, const std::string& fn, double radius, const std::string& law) {
  const json fj = parse_spec_text(fn);
  const DiscFunction f = parse_function(fj);
  if (!(radius > 0 && radius < 1)) throw InvalidSpec("--radius must be in (0, 1)");
  const bool analytic = std::holds_alternative<node::FactorProduct>(f.node());
  ZeroList zl;
  if (analytic) {
    zl = analytic_zeros(f);
  } else {
    LocateOptions lo;
    lo.threads = cfg.threads;
    zl = locate_zeros(f, radius, cfg.tol, lo);
  }
  const ZeroStats stats = zero_stats(zl);
  json r;
  r["command"] = "zeros";
  r["function"] = fj;
  r["radius"] = analytic ? 1.0 : radius;
  r["tol"] = cfg.tol;
  r["provenance"] = to_string(zl.provenance);
  r["incomplete"] = zl.incomplete;
  r["note"] = zl.note;
  r["length"] = zl.length();
  json entries = json::array();
  for (const auto& e : zl.entries) {
    if (entries.size() >= 4096) break;
    entries.push_back({{"re", e.location.real()},
                       {"im", e.location.imag()},
                       {"multiplicity", e.multiplicity},
                       {"ring_size", e.ring_size},
                       {"one_minus_modulus", e.one_minus_modulus()},
                       {"residual", e.residual}});
  }
  r["entries"] = entries;
  if (zl.length() > 0) {
    r["blaschke_sum"] = blaschke_sum(zl, zl.length());
    r["log_partial_product"] = log_partial_product(zl, zl.length());
  }
  json fits = json::object();
  for (GrowthModel m : {GrowthModel::Power, GrowthModel::SqrtLog}) {
    try {
      const auto g = fit_growth(stats, m);
      fits[to_string(m)] = {{"coefficient", g.coefficient},
                            {"intercept", g.intercept},
                            {"residual", g.residual},
                            {"stderr", g.stderr_},
                            {"points", g.points}};
    } catch (const PreconditionError& e) {
      fits[to_string(m)] = {{"skipped", e.what()}};
    } catch (const DegenerateInput& e) {
      fits[to_string(m)] = {{"skipped", e.what()}};
    }
  }
  r["fits"] = fits;
  if (!law.empty()) {
    ZeroLaw zlaw = ZeroLaw::blaschke();
    if (law == "sqrtlog") {
      zlaw = ZeroLaw::sqrtlog();
    } else if (law != "blaschke") {
      try {
        std::size_t used = 0;
        const double g = std::stod(law, &used);
        if (used != law.size() || !(g > 0)) throw std::invalid_argument(law);
        zlaw = ZeroLaw::power(g);
      } catch (const std::logic_error&) {
        throw InvalidSpec("--law must be blaschke, sqrtlog or a positive exponent");
      }
    }
    const auto iv = zero_incompatibility_verdict(stats, zlaw);
    r["incompatibility"] = {{"law", zlaw.describe()}, {"verdict", iv.verdict}, {"diagnostic", iv.diagnostic}};
  }
  std::ostringstream zcsv, scsv;
  write_zero_csv(zcsv, zl);
  write_stats_csv(scsv, stats);
  emit(cfg, "zeros", r, {{"zeros", zcsv.str()}, {"zero_stats", scsv.str()}});
  return 0;
}

int run_jensen(const Config& cfg, const std::string& fn, double radius) {
  const json fj = parse_spec_text(fn);
  const DiscFunction f = parse_function(fj);
  if (!(radius > 0 && radius < 1)) throw InvalidSpec("--radius must be in (0, 1)");
  const auto jc = jensen_check(f, radius, std::min(cfg.tol, 1e-10));
  json r = {{"command", "jensen"},
            {"function", fj},
            {"radius", jc.radius},
            {"lhs", jc.lhs},
            {"rhs", jc.rhs},
            {"residual", jc.residual},
            {"zeros", jc.zeros},
            {"tol", cfg.tol}};
  emit(cfg, "jensen", r, {});
  return 0;
}

int run_order(const Config& cfg, const std::string& ent, int n_max, double bound) {
  const json ej = parse_spec_text(ent);
  const EntireFunction phi = parse_entire(ej);
  if (n_max < 16) throw InvalidSpec("--terms must be >= 16");
  const double rho = order_estimate(phi, n_max);
  const double tau = phi.is_polynomial() ? 0.0 : type_estimate(phi, rho, n_max);
  json r = {{"command", "order"},
            {"entire", ej},
            {"description", phi.describe()},
            {"terms", n_max},
            {"order", rho},
            {"type", tau},
            {"max_modulus_1", max_modulus(phi, 1.0)}};
  if (bound > 0) {
    const auto th = subexp_threshold(phi, bound);
    r["subexp"] = {{"bound", bound}, {"r0", th.r0}, {"log_M_r0", th.log_m_r0}};
  }
  emit(cfg, "order", r, {});
  return 0;
}

int run_superpose(const Config& cfg, const std::string& ent, const std::string& w,
                  const std::string& fn, int nr, int nt) {
  const json ej = parse_spec_text(ent), wj = parse_spec_text(w), fj = parse_spec_text(fn);
  const DiscFunction S = superpose(parse_entire(ej), parse_function(wj), parse_function(fj));
  if (nr < 1 || nt < 1) throw InvalidSpec("grid sizes must be positive");
  CsvTable t{"superpose", {"r", "theta", "re", "im", "abs"}, {}};
  json pts = json::array();
  for (int i = 0; i < nr; ++i) {
    const double r = 1.0 - std::ldexp(1.0, -(i + 1));
    for (int q = 0; q < nt; ++q) {
      const double th = kTwoPi * q / nt;
      const cplx v = S(std::polar(r, th));
      t.rows.push_back({r, th, v.real(), v.imag(), std::abs(v)});
      pts.push_back({{"r", r}, {"theta", th}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  json r = {{"command", "superpose"}, {"entire", ej}, {"w", wj}, {"function", fj}, {"grid", pts}};
  emit(cfg, "superpose", r, {{"superpose", csv_text(t)}});
  return 0;
}

struct ExperimentArgs {
  std::string name;
  double p = 2.0, alpha = -2.0, beta = 0.0, c = -1.0, K = 1.0;
  int j_max = -1, family = -1, depth = 8;
  std::string phi, w, weight;
  bool derivative_space = false;
};

int run_experiment(const Config& cfg, const ExperimentArgs& a) {
  ExperimentOptions o{cfg.tol, cfg.threads};
  auto csvs = [](const ProbeReport& rep) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& t : rep.evidence) out.emplace_back(t.name, csv_text(t));
    return out;
  };
  auto finish = [&](ProbeReport rep) {
    rep.inputs["tol"] = cfg.tol;
    emit(cfg, rep.experiment, rep.to_json(), csvs(rep));
    return 0;
  };
  if (a.name == "theorem1")
    return finish(theorem1_witness(a.p, a.alpha < -1 ? 0.0 : a.alpha, a.c < 0 ? 2.0 : a.c,
                                   a.j_max < 0 ? 20 : a.j_max, o));
  if (a.name == "zero-inheritance") return finish(zero_inheritance_check(cfg.seed, o));
  if (a.name == "theorem2") {
    const EntireFunction phi = parse_entire(parse_spec_text(a.phi.empty() ? R"({"kind":"cossqrt"})" : a.phi));
    const DiscFunction w =
        parse_function(parse_spec_text(a.w.empty() ? R"({"kind":"closed","name":"const","value":1})" : a.w));
    return finish(theorem2_probe(phi, w, a.p, a.alpha < -1 ? 1.0 : a.alpha, a.beta, a.K,
                                 a.family < 0 ? 20 : a.family, cfg.seed, o));
  }
  if (a.name == "theorem4") {
    const EntireFunction phi = parse_entire(parse_spec_text(a.phi.empty() ? R"({"kind":"exp"})" : a.phi));
    const Weight v = parse_weight(parse_spec_text(a.weight.empty() ? R"({"kind":"power","gamma":1})" : a.weight));
    return finish(theorem4_check(phi, v, a.family < 0 ? 10 : a.family, cfg.seed, a.derivative_space, o));
  }
  if (a.name == "corollary1") {
    const Weight v = parse_weight(parse_spec_text(a.weight.empty() ? R"({"kind":"log"})" : a.weight));
    auto res = corollary1_construction(v, a.depth, a.c < 0 ? std::exp(1.0) : a.c, o);
    json ex = json::array();
    for (long n : res.exponents) ex.push_back(n);
    res.report.inputs["exponents"] = ex;
    return finish(res.report);
  }
  if (a.name == "corollary2") return finish(corollary2_experiment(a.j_max < 0 ? 30 : a.j_max, o));
  throw InvalidSpec("unknown experiment \"" + a.name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norms, zeros and superposition experiments for analytic functions on the unit disc"};
  app.require_subcommand(1);
  Config cfg;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--tol", cfg.tol, "Tolerance, in (1e-14, 1e-2)");
  app.add_option("--seed", cfg.seed, "Seed for randomized families");
  app.add_option("--threads", cfg.threads, "Worker threads (1 for byte reproducibility)");
  app.add_option("--out", cfg.out, "Output directory (default: JSON on stdout)");
  app.add_option("--format", cfg.format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

  std::string fn, space, ent, w;
  double radius = 0.9, bound = -1.0;
  std::string law;
  int terms = 256, nr = 8, nt = 16;

  auto* norm_cmd = app.add_subcommand("norm", "Norm of a function in a space");
  norm_cmd->add_option("--fn", fn, "Function spec (JSON or @file)")->required();
  norm_cmd->add_option("--space", space, "Space spec (JSON or @file)")->required();

  auto* zeros_cmd = app.add_subcommand("zeros", "Locate zeros, partial sums and growth fits");
  zeros_cmd->add_option("--fn", fn, "Function spec (JSON or @file)")->required();
  zeros_cmd->add_option("--radius", radius, "Search radius");
  zeros_cmd->add_option("--law", law, "Compare against blaschke, sqrtlog or a power exponent");

  auto* jensen_cmd = app.add_subcommand("jensen", "Jensen identity residual");
  jensen_cmd->add_option("--fn", fn, "Function spec (JSON or @file)")->required();
  jensen_cmd->add_option("--radius", radius, "Circle radius");

  auto* order_cmd = app.add_subcommand("order", "Order and type of an entire function");
  order_cmd->add_option("--entire", ent, "Entire function spec (JSON or @file)")->required();
  order_cmd->add_option("--terms", terms, "Taylor coefficients used");
  order_cmd->add_option("--subexp-bound", bound, "Also report r0 with log M(r)/r below this bound");

  auto* sup_cmd = app.add_subcommand("superpose", "Evaluate w * (phi o f) on a polar grid");
  sup_cmd->add_option("--entire", ent, "phi (JSON or @file)")->required();
  sup_cmd->add_option("--w", w, "Weight function w (JSON or @file)")->required();
  sup_cmd->add_option("--fn", fn, "Symbol f (JSON or @file)")->required();
  sup_cmd->add_option("--radii", nr, "Radii 1 - 2^-j, j = 1..n");
  sup_cmd->add_option("--angles", nt, "Equally spaced angles");

  ExperimentArgs ea;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a superposition experiment");
  exp_cmd->add_option("name", ea.name,
                      "theorem1, zero-inheritance, theorem2, theorem4, corollary1 or corollary2")
      ->required();
  exp_cmd->add_option("--p", ea.p, "Exponent p");
  exp_cmd->add_option("--alpha", ea.alpha, "Bergman weight alpha");
  exp_cmd->add_option("--beta", ea.beta, "Bergman weight beta of w");
  exp_cmd->add_option("--c", ea.c, "Scale c");
  exp_cmd->add_option("--K", ea.K, "Bloch norm bound K");
  exp_cmd->add_option("--j-max", ea.j_max, "Boundary levels");
  exp_cmd->add_option("--family", ea.family, "Family size");
  exp_cmd->add_option("--depth", ea.depth, "Number of factors");
  exp_cmd->add_option("--phi", ea.phi, "Entire function spec");
  exp_cmd->add_option("--w", ea.w, "Weight function w spec");
  exp_cmd->add_option("--weight", ea.weight, "Weight v spec");
  exp_cmd->add_flag("--derivative-space", ea.derivative_space, "Also report DH^inf_v norms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!(cfg.tol > 1e-14 && cfg.tol < 1e-2)) throw InvalidSpec("--tol must be in (1e-14, 1e-2)");
    if (cfg.threads < 1) throw InvalidSpec("--threads must be >= 1");
    if (*norm_cmd) return run_norm(cfg, fn, space);
    if (*zeros_cmd) return run_zeros(cfg, fn, radius, law);
    if (*jensen_cmd) return run_jensen(cfg, fn, radius);
    if (*order_cmd) return run_order(cfg, ent, terms, bound);
    if (*sup_cmd) return run_superpose(cfg, ent, w, fn, nr, nt);
    if (*exp_cmd) return run_experiment(cfg, ea);
  } catch (const InvalidSpec& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return 2;
  } catch (const ToleranceNotMet& e) {
    std::cerr << "tolerance not met: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
