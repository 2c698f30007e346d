#include <doctest.h>

#include <sstream>

#include "anlab/errors.hpp"
#include "anlab/spaces.hpp"
#include "anlab/zeros.hpp"
#include "oracles.hpp"

using namespace anlab;

namespace {
ZeroList moduli_list(int n, double (*mod)(int)) {
  std::vector<double> m;
  for (int k = 1; k <= n; ++k) m.push_back(mod(k));
  return synthetic_zeros(m);
}
double one_minus_inv_sq(int k) { return 1.0 - 1.0 / (double(k) * k + (k == 1)); }
}  // namespace

TEST_SUITE("zeros") {
  TEST_CASE("counting zeros") {
    CHECK(count_zeros_disk(DiscFunction::taylor({0, 0, 0, 1}), 0.5) == 3);
    const auto q = DiscFunction::taylor({-0.25, 0, 1});
    CHECK(count_zeros_disk(q, 0.4) == 0);
    CHECK(count_zeros_disk(q, 0.6) == 2);
    // A zero on the contour is stepped over.
    CHECK(count_zeros_disk(q, 0.5) == 2);
  }

  TEST_CASE("counts match the companion-matrix oracle") {
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
      const auto roots = oracle::random_roots(rng, 8, 0.05, 0.98);
      const auto f = DiscFunction::taylor(oracle::poly_from_roots(roots));
      const auto eig = oracle::companion_roots(oracle::poly_from_roots(roots));
      for (int i = 0; i < 20; ++i) {
        const double r = rng.uniform(0.05, 0.99);
        CHECK(count_zeros_disk(f, r) == oracle::count_inside(eig, r));
      }
    }
  }

  TEST_CASE("locating zeros") {
    const auto zl = locate_zeros(DiscFunction::taylor({-0.25, 0, 1}), 0.9);
    REQUIRE(zl.entries.size() == 2);
    CHECK(zl.length() == 2);
    CHECK(std::abs(zl.entries[0].location + zl.entries[1].location) < 1e-10);
    for (const auto& e : zl.entries) {
      CHECK(e.multiplicity == 1);
      CHECK(std::abs(std::abs(e.location) - 0.5) < 1e-12);
    }
    const auto triple = locate_zeros(DiscFunction::taylor({0, 0, 0, 1}), 0.9);
    REQUIRE(triple.entries.size() == 1);
    CHECK(triple.entries[0].multiplicity == 3);
  }

  TEST_CASE("zeros of a single factor") {
    const auto f = DiscFunction::factor_product({{std::exp(1.0), 8}});
    const auto zl = locate_zeros(f, 0.95);
    REQUIRE(zl.length() == 8);
    std::vector<double> args;
    for (const auto& e : zl.entries) {
      CHECK(std::abs(std::abs(e.location) - std::exp(-1.0 / 8)) < 1e-10);
      args.push_back(std::arg(e.location) / (kPi / 8));
    }
    for (double a : args) {
      const double odd = std::round((a - 1) / 2) * 2 + 1;
      CHECK(std::abs(a - odd) < 1e-8);
    }
    const auto an = analytic_zeros(f);
    CHECK(an.length() == 8);
    CHECK(std::abs(partial_products(an, 8) - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(partial_products(zl, 8) - std::exp(1.0)) < 1e-8);
  }

  TEST_CASE("located zeros match the companion-matrix oracle") {
    Rng rng(43);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<cplx> a;
      for (int k = 0; k <= 12; ++k) a.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const auto eig = oracle::companion_roots(a);
      const double rmax = 0.9;
      const auto zl = locate_zeros(DiscFunction::taylor(a), rmax);
      CHECK(zl.length() == oracle::count_inside(eig, rmax));
      for (const cplx& r : eig) {
        if (std::abs(r) > rmax - 1e-6) continue;
        double best = 1e300;
        for (const auto& e : zl.entries) best = std::min(best, std::abs(e.location - r));
        CHECK(best < 1e-8);
      }
    }
  }

  TEST_CASE("argument principle agrees with located multiplicities") {
    Rng rng(47);
    for (int trial = 0; trial < 6; ++trial) {
      auto roots = oracle::random_roots(rng, 5, 0.1, 0.85);
      roots.push_back(roots[0]);  // one double zero
      const auto f = DiscFunction::taylor(oracle::poly_from_roots(roots));
      const auto zl = locate_zeros(f, 0.9);
      CHECK(count_zeros_disk(f, 0.9) == zl.length());
    }
  }

  TEST_CASE("Blaschke sums and partial products") {
    CHECK(blaschke_sum(ZeroList{}, 0) == 0.0);
    const auto sq = synthetic_zeros({0.0, 0.75, 1.0 - 1.0 / 9});
    CHECK(std::abs(blaschke_sum(sq, 3) - 49.0 / 36.0) < 1e-12);
    std::vector<double> m;
    for (int k = 1; k <= 10; ++k) m.push_back(1.0 - 1.0 / k);
    CHECK(std::abs(blaschke_sum(synthetic_zeros(m), 10) - oracle::harmonic(10)) < 1e-12);

    const double eps = 1e-9;
    const auto eq = synthetic_zeros(std::vector<double>(5, 1.0 - eps));
    CHECK(std::abs(partial_products(eq, 5) / std::pow(1.0 - eps, -5.0) - 1.0) < 1e-12);

    std::vector<double> L;
    for (int k = 1; k <= 100; ++k) L.push_back(1.5 / k);
    const auto zl = synthetic_zeros_log(L);
    CHECK(std::abs(log_partial_product(zl, 100) - 1.5 * oracle::harmonic(100)) < 1e-10);
    CHECK(std::abs(log_partial_product(zl, 100) - 7.7813) < 1e-3);
  }

  TEST_CASE("partial sums are non-decreasing") {
    Rng rng(53);
    std::vector<double> L;
    for (int k = 0; k < 3000; ++k) L.push_back(rng.uniform(1e-6, 1.0));
    std::sort(L.rbegin(), L.rend());
    const auto st = zero_stats(synthetic_zeros_log(L));
    for (std::size_t i = 1; i < st.n.size(); ++i) {
      CHECK(st.blaschke_partial_sums[i] >= st.blaschke_partial_sums[i - 1]);
      CHECK(st.log_partial_products[i] >= st.log_partial_products[i - 1]);
    }
  }

  TEST_CASE("growth fits") {
    for (double gamma : {0.5, 1.5, 3.0}) {
      std::vector<double> L;
      for (int k = 1; k <= 2048; ++k) L.push_back(gamma / k);
      const auto g = fit_growth(synthetic_zeros_log(L), GrowthModel::Power);
      CHECK(std::abs(g.coefficient - gamma) <= 0.015 * gamma);
    }
    std::vector<double> L{0.0};
    for (int k = 2; k <= 2048; ++k) L.push_back(std::sqrt(std::log(double(k))) - std::sqrt(std::log(k - 1.0)));
    L[0] = 1e-300;
    std::sort(L.rbegin(), L.rend());
    const auto s = fit_growth(synthetic_zeros_log(L), GrowthModel::SqrtLog);
    CHECK(std::abs(s.coefficient - 1.0) < 0.01);

    const auto b = fit_growth(moduli_list(2048, one_minus_inv_sq), GrowthModel::Power);
    CHECK(b.coefficient <= 0.05);
    CHECK_THROWS_AS(fit_growth(moduli_list(10, one_minus_inv_sq), GrowthModel::Power), PreconditionError);
  }

  TEST_CASE("Jensen identity") {
    CHECK(std::abs(jensen_check(DiscFunction::constant(3.0), 0.6).residual) < 1e-14);
    const auto q = jensen_check(DiscFunction::taylor({-0.25, 0, 1}), 0.75);
    CHECK(q.residual < 1e-8);
    CHECK(std::abs(q.lhs - (std::log(0.25) + 2 * std::log(1.5))) < 1e-8);
    Rng rng(59);
    for (int i = 0; i < 20; ++i) {
      const int deg = 1 + static_cast<int>(rng.next() % 8);
      const auto roots = oracle::random_roots(rng, deg, 0.0, 0.8);
      const auto j = jensen_check(DiscFunction::taylor(oracle::poly_from_roots(roots, cplx(0.7, 0.2))), 0.9);
      CHECK(j.residual < 1e-6);
    }
  }

  TEST_CASE("incompatibility verdicts") {
    std::vector<double> L;
    for (int k = 1; k <= 4096; ++k) L.push_back(0.4 / k);
    CHECK(zero_incompatibility_verdict(zero_stats(synthetic_zeros_log(L)), ZeroLaw::sqrtlog()).verdict ==
          "incompatible");
    CHECK(zero_incompatibility_verdict(zero_stats(moduli_list(4096, one_minus_inv_sq)), ZeroLaw::blaschke()).verdict ==
          "compatible");
    std::vector<double> h;
    for (int k = 1; k <= 4096; ++k) h.push_back(1.0 - 1.0 / k);
    CHECK(zero_incompatibility_verdict(zero_stats(synthetic_zeros(h)), ZeroLaw::blaschke()).verdict == "incompatible");
    CHECK_THROWS_AS(zero_incompatibility_verdict(zero_stats(moduli_list(100, one_minus_inv_sq)), ZeroLaw::blaschke()),
                    PreconditionError);
  }

  TEST_CASE("power fits stay below the Bergman-space rate for products in A^p_alpha") {
    // prod (1 + c z^{2^k}) with c = 1.2: log prod 1/|z_k| grows like
    // log(1.2) log_2(n), well below (1 + alpha)/p.
    std::vector<Factor> fs;
    for (int k = 3; k <= 7; ++k) fs.push_back({1.2, 1L << k});
    const auto f = DiscFunction::factor_product(fs);
    for (auto [p, alpha] : {std::pair{2.0, 0.0}, std::pair{2.0, 1.0}, std::pair{1.0, 0.0}}) {
      REQUIRE(bergman_norm(f, p, alpha, 1e-6).finite());
      const auto g = fit_growth(analytic_zeros(f), GrowthModel::Power);
      CHECK(g.coefficient <= (1 + alpha) / p + 0.1);
    }
  }

  TEST_CASE("zeros of g are inherited by w (exp o g - 1)") {
    Rng rng(61);
    const auto roots = oracle::random_roots(rng, 4, 0.1, 0.8);
    const auto g = DiscFunction::taylor(oracle::poly_from_roots(roots));
    const auto F = weighted_multiply(DiscFunction::taylor({1, -0.5}),
                                     DiscFunction::sum({compose_entire(EntireFunction::exp(), g),
                                                        DiscFunction::constant(-1.0)}));
    const auto zg = locate_zeros(g, 0.9);
    const auto zF = locate_zeros(F, 0.9);
    for (const auto& e : zg.entries) {
      double best = 1e300;
      for (const auto& d : zF.entries) best = std::min(best, std::abs(d.location - e.location));
      CHECK(best < 1e-8);
    }
  }

  TEST_CASE("CSV serialization") {
    std::ostringstream os;
    write_zero_csv(os, locate_zeros(DiscFunction::taylor({-0.25, 0, 1}), 0.9));
    const std::string s = os.str();
    CHECK(s.rfind("k,re,im,modulus,multiplicity,provenance\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
    std::ostringstream st;
    write_stats_csv(st, zero_stats(analytic_zeros(DiscFunction::factor_product({{2.0, 4}}))));
    CHECK(st.str().rfind("n,blaschke_sum,log_partial_product\n", 0) == 0);
  }
}
