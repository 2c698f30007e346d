#include <doctest.h>

#include "anlab/entire.hpp"
#include "anlab/errors.hpp"
#include "oracles.hpp"

using namespace anlab;

TEST_SUITE("entire") {
  TEST_CASE("evaluation") {
    CHECK(std::abs(eval_entire(EntireFunction::exp(), 0.0) - 1.0) == 0.0);
    CHECK(std::abs(eval_entire(EntireFunction::cos_sqrt(), 0.0) - 1.0) == 0.0);
    CHECK(std::abs(eval_entire(EntireFunction::exp(), 1.0) - std::exp(1.0)) < 1e-12);
    Rng rng(71);
    for (int i = 0; i < 20; ++i) {
      const cplx u(rng.uniform(-5, 5), rng.uniform(-5, 5));
      CHECK(std::abs(EntireFunction::cos_sqrt()(u) - std::cos(std::sqrt(u))) <= 1e-12 * (1 + std::abs(std::cos(std::sqrt(u)))));
      CHECK(std::abs(EntireFunction::sine()(u) - std::sin(u)) <= 1e-12 * (1 + std::abs(std::sin(u))));
      // Series and closed form agree.
      CHECK(std::abs(EntireFunction::exp().eval_series(u) - std::exp(u)) <= 1e-14 * std::exp(std::abs(u)));
    }
  }

  TEST_CASE("maximum modulus") {
    CHECK(std::abs(max_modulus(EntireFunction::exp(), 2.0) - std::exp(2.0)) < 1e-10);
    CHECK(std::abs(max_modulus(EntireFunction::polynomial({0, 0, 1}), 4.0) - 16.0) < 1e-12);
    CHECK(std::abs(max_modulus(EntireFunction::cos_sqrt(), 4.0) - std::cosh(2.0)) < 1e-9);
    for (const auto& phi : {EntireFunction::exp(), EntireFunction::cos_sqrt(), EntireFunction::sine(),
                            EntireFunction::polynomial({1, cplx(0, -2), 0.5, 1})}) {
      double prev = 0.0;
      for (double r = 0.0; r <= 20.0; r += 0.5) {
        const double m = max_modulus(phi, r);
        CHECK(m >= prev * (1 - 1e-12));
        prev = m;
      }
    }
  }

  TEST_CASE("A = max |phi'| on the closed unit disc dominates random samples") {
    Rng rng(73);
    for (const auto& phi : {EntireFunction::exp(), EntireFunction::cos_sqrt(), EntireFunction::polynomial({0, 1, 0, 1})}) {
      const auto d = phi.derivative();
      const double A = max_modulus(d, 1.0);
      for (int i = 0; i < 100; ++i) {
        const cplx xi = std::polar(std::sqrt(rng.uniform()), rng.uniform(0, kTwoPi));
        CHECK(std::abs(d(xi)) <= A + 1e-12);
      }
    }
    CHECK(std::abs(max_modulus(EntireFunction::exp().derivative(), 1.0) - std::exp(1.0)) < 1e-10);
    CHECK(std::abs(max_modulus(EntireFunction::polynomial({0, 1, 0, 1}).derivative(), 1.0) - 4.0) < 1e-10);
  }

  TEST_CASE("order and type") {
    CHECK(order_estimate(EntireFunction::polynomial({1, 2, 3}), 256) == 0.0);
    CHECK(std::abs(order_estimate(EntireFunction::exp(), 256) - 1.0) <= 0.02);
    CHECK(std::abs(order_estimate(EntireFunction::cos_sqrt(), 256) - 0.5) <= 0.02);
    CHECK(std::abs(type_estimate(EntireFunction::exp(), 1.0, 256) - 1.0) <= 0.03);
    CHECK(std::abs(type_estimate(EntireFunction::cos_sqrt(), 0.5, 256) - 1.0) <= 0.05);
    CHECK(std::abs(type_estimate(EntireFunction::scaled_exp(2.0), 1.0, 256) - 2.0) <= 0.05);
  }

  TEST_CASE("order and type are stable under differentiation") {
    for (const auto& phi : {EntireFunction::exp(), EntireFunction::cos_sqrt(), EntireFunction::sine(),
                            EntireFunction::scaled_exp(2.0)}) {
      const auto d = phi.derivative();
      const double r0 = order_estimate(phi, 256), r1 = order_estimate(d, 256);
      CHECK(std::abs(r0 - r1) <= 0.05);
      CHECK(std::abs(type_estimate(phi, r0, 256) - type_estimate(d, r0, 256)) <= 0.05);
    }
  }

  TEST_CASE("subexponential threshold") {
    const auto t = subexp_threshold(EntireFunction::polynomial({0, 0, 0, 1}), 1.0);
    CHECK(t.r0 <= 16.0);
    const auto c = subexp_threshold(EntireFunction::cos_sqrt(), 0.5);
    CHECK(std::isfinite(c.r0));
    for (const auto& [r, q] : c.table)
      if (r >= c.r0) CHECK(q <= 0.5);
    CHECK_THROWS_AS(subexp_threshold(EntireFunction::exp(), 0.5), PreconditionError);
  }

  TEST_CASE("Cauchy derivative bound") {
    const auto [l, r] = cauchy_derivative_bound(EntireFunction::exp(), 1.0);
    CHECK(std::abs(l - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(r - std::exp(2.0) / 2) < 1e-10);
    const auto [l2, r2] = cauchy_derivative_bound(EntireFunction::polynomial({0, 0, 1}), 2.0);
    CHECK(std::abs(l2 - 4.0) < 1e-12);
    CHECK(std::abs(r2 - 4.0) < 1e-10);
    Rng rng(79);
    for (int i = 0; i < 30; ++i) {
      std::vector<cplx> a;
      const int deg = 1 + static_cast<int>(rng.next() % 7);
      for (int k = 0; k <= deg; ++k) a.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const cplx u = std::polar(rng.uniform(1, 10), rng.uniform(0, kTwoPi));
      const auto [lhs, rhs] = cauchy_derivative_estimate(EntireFunction::polynomial(a), u);
      CHECK(lhs <= rhs * (1 + 1e-10));
    }
  }

  TEST_CASE("the halved bound is not a Cauchy estimate") {
    // phi = u^2 + 3u - 2 at u = 1: |phi'(1)| = 5 but M(2)/2 = 4.3732.
    const auto phi = EntireFunction::polynomial({-2, 3, 1});
    const auto [lhs, rhs] = cauchy_derivative_bound(phi, 1.0);
    CHECK(std::abs(lhs - 5.0) < 1e-12);
    CHECK(rhs == doctest::Approx(4.373213906985641).epsilon(1e-7));
    CHECK(lhs > rhs);
    const auto [l2, r2] = cauchy_derivative_estimate(phi, 1.0);
    CHECK(l2 <= r2);
  }

  TEST_CASE("derivatives") {
    const auto d = derivative_entire(EntireFunction::exp());
    for (int n = 0; n < 20; ++n) CHECK(std::abs(d.coefficient(n).log_abs - EntireFunction::exp().coefficient(n).log_abs) < 1e-12);
    const auto p = derivative_entire(EntireFunction::polynomial({1, 1, 1}));
    CHECK(p.degree() == 1);
    CHECK(std::abs(p(0.0) - 1.0) < 1e-15);
    CHECK(std::abs(p(1.0) - 3.0) < 1e-15);
  }
}
