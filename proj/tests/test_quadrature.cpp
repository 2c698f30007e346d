#include <doctest.h>

#include "anlab/errors.hpp"
#include "anlab/quadrature.hpp"
#include "oracles.hpp"

using namespace anlab;

TEST_SUITE("quadrature") {
  TEST_CASE("circle means") {
    for (double r : {0.1, 0.5, 0.9}) CHECK(std::abs(circle_mean([](cplx z) { return z.real(); }, r, 1e-12).value) < 1e-12);
    CHECK(std::abs(circle_mean([](cplx z) { return std::norm(z); }, 0.7, 1e-12).value - 0.49) < 1e-12);
    const double j = circle_mean([](cplx z) { return std::log(std::abs(z * z - 0.25)); }, 0.75, 1e-10).value;
    CHECK(std::abs(j - (std::log(0.25) + 2 * std::log(1.5))) < 1e-8);
    CHECK(std::abs(j - (-0.57536)) < 1e-5);
  }

  TEST_CASE("trapezoid is exact on trigonometric polynomials") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const int deg = 1 + trial;
      std::vector<double> a(deg + 1), b(deg + 1);
      for (int k = 0; k <= deg; ++k) a[k] = rng.uniform(-1, 1), b[k] = rng.uniform(-1, 1);
      auto g = [&](cplx z) {
        const double t = std::arg(z);
        double s = a[0];
        for (int k = 1; k <= deg; ++k) s += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
        return s;
      };
      const auto q = circle_mean(g, 0.6, 1e-13);
      CHECK(std::abs(q.value - a[0]) < 1e-13);
      CHECK(q.nodes_used >= 8);
      CHECK(q.converged);
    }
  }

  TEST_CASE("error estimates shrink under refinement for smooth integrands") {
    const auto q = circle_mean([](cplx z) { return std::exp(std::real(z * 3.0)) * std::cos(z.imag()); }, 0.9, 1e-14);
    REQUIRE(q.history.size() >= 3);
    for (std::size_t i = 2; i < q.history.size(); ++i) CHECK(q.history[i] <= q.history[i - 1] * (1 + 1e-9) + 1e-15);
  }

  TEST_CASE("measure normalization") {
    for (double alpha : {-0.5, 0.0, 1.0, 2.7}) {
      const auto d = disc_integral([](cplx) { return 1.0; }, alpha, 1e-10);
      CHECK_FALSE(d.divergent);
      CHECK(std::abs(d.quad.value - 1.0) < 1e-9);
    }
  }

  TEST_CASE("Beta integrals") {
    for (int n = 1; n <= 4; ++n)
      for (double alpha : {0.0, 1.0, 2.7}) {
        const auto d = disc_integral([n](cplx z) { return std::pow(std::norm(z), n); }, alpha, 1e-10);
        const double beta = (alpha + 1) * std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 1) - std::lgamma(n + alpha + 2));
        CHECK(std::abs(d.quad.value - beta) < 1e-9);
      }
  }

  TEST_CASE("divergence detection") {
    const auto d = disc_integral([](cplx z) { return 1.0 / std::norm(1.0 - z); }, 0.0, 1e-8);
    CHECK(d.divergent);
    CHECK(d.growth == "logarithmic");
    const auto e = disc_integral([](cplx z) { return std::pow(std::abs(1.0 - z), -3.0); }, 0.0, 1e-8);
    CHECK(e.divergent);
    CHECK(e.growth == "power");
    // Borderline integrable: (1-|z|)^{-1/2}.
    const auto f = disc_integral([](cplx z) { return 1.0 / std::sqrt(1.0 - std::abs(z)); }, 0.0, 1e-8);
    CHECK_FALSE(f.divergent);
    CHECK(std::abs(f.quad.value - 8.0 / 3.0) < 1e-7);
  }

  TEST_CASE("log means avoid zeros on the contour") {
    const auto f = DiscFunction::taylor({-0.25, 0.0, 1.0});
    const auto lm = circle_mean_log_abs(f, 0.5, 1e-10);
    CHECK(lm.radius > 0.5);
    CHECK(lm.radius < 0.5 + 1e-8);
    CHECK(std::abs(lm.quad.value - (std::log(0.25) + 2 * std::log(lm.radius / 0.5))) < 1e-8);
    CHECK_THROWS_AS(circle_mean_log_abs(DiscFunction::constant(0.0), 0.5, 1e-10), DegenerateInput);
  }

  TEST_CASE("unconverged circle means throw") {
    CircleOptions o;
    o.max_nodes = 64;
    o.adaptive_fallback = false;
    auto kink = [](cplx z) { return std::sqrt(std::abs(z.imag())); };
    CHECK_THROWS_AS(circle_mean(kink, 0.5, 1e-12, o), ToleranceNotMet);
  }

  TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(16, x, w);
    for (int k = 0; k <= 31; ++k) {
      double s = 0.0;
      for (int i = 0; i < 16; ++i) s += w[i] * std::pow(x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}
