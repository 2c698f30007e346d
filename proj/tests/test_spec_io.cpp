#include <doctest.h>

#include "anlab/errors.hpp"
#include "anlab/spec_io.hpp"

using namespace anlab;
using nlohmann::json;

TEST_SUITE("spec_io") {
  TEST_CASE("function specs") {
    const auto f = parse_function(json::parse(R"({"kind":"taylor","coeffs":[[1,0],[2,0],[3,0]]})"));
    CHECK(std::abs(f(0.5) - 2.75) < 1e-15);
    CHECK(std::abs(parse_function(json::parse(R"({"kind":"closed","name":"pow1m","gamma":1})"))(0.5) - 2.0) < 1e-15);
    const auto fp = parse_function(json::parse(R"({"kind":"factorprod","factors":[[2,1],[3,2]]})"));
    CHECK(std::abs(fp(0.5) - 2.0 * 1.75) < 1e-14);
    const auto c = parse_function(json::parse(
        R"({"kind":"compose","entire":{"kind":"exp"},"inner":{"kind":"rotscaled","c":2,"inner":{"kind":"closed","name":"log1m"}}})"));
    CHECK(std::abs(c(0.5) - 4.0) < 1e-13);
    const auto w = parse_function(json::parse(
        R"({"kind":"wprod","w":{"kind":"closed","name":"identity"},"inner":{"kind":"closed","name":"identity"}})"));
    CHECK(std::abs(w(0.5) - 0.25) < 1e-16);
    const auto s = parse_function(json::parse(
        R"({"kind":"sum","terms":[{"kind":"closed","name":"const","value":[0,1]},{"kind":"sparse","terms":[[4,1,0]]}]})"));
    CHECK(std::abs(s(0.5) - cplx(0.0625, 1)) < 1e-16);
  }

  TEST_CASE("entire, weight and space specs") {
    CHECK(std::abs(parse_entire(json::parse(R"({"kind":"scaledexp","lambda":2})"))(1.0) - std::exp(2.0)) < 1e-12);
    CHECK(parse_entire(json::parse(R"({"kind":"poly","coeffs":[1,[0,1],2]})")).degree() == 2);
    CHECK(parse_weight(json::parse(R"({"kind":"power","gamma":1})"))(0.25) == doctest::Approx(0.75));
    CHECK(parse_space(json::parse(R"({"kind":"bergman","p":2,"alpha":0})")).kind == SpaceSpec::Kind::Bergman);
    CHECK(parse_space(json::parse(R"({"kind":"wdsup","weight":{"kind":"log"}})")).kind ==
          SpaceSpec::Kind::WeightedDerivSup);
  }

  TEST_CASE("invalid specs") {
    for (const char* bad : {R"({"kind":"nope"})", R"({"coeffs":[1]})", R"({"kind":"taylor","coeffs":[]})",
                            R"({"kind":"taylor","coeffs":[[1,2,3]]})", R"({"kind":"closed","name":"pow1m","gamma":-1})",
                            R"({"kind":"factorprod","factors":[[2,2],[2,1]]})", R"({"kind":"factorprod","factors":[[2,1.5]]})"})
      CHECK_THROWS_AS(parse_function(json::parse(bad)), InvalidSpec);
    CHECK_THROWS_AS(parse_space(json::parse(R"({"kind":"bergman","p":2,"alpha":-1})")), InvalidSpec);
    CHECK_THROWS_AS(parse_weight(json::parse(R"({"kind":"custom","r":[0,0.5],"v":[1,0.5]})")), InvalidSpec);
    CHECK_THROWS_AS(parse_spec_text("{not json"), InvalidSpec);
    CHECK_THROWS_AS(parse_spec_text("@/nonexistent/spec.json"), InvalidSpec);
  }
}
