#include "anlab/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "anlab/errors.hpp"

namespace anlab {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidSpec(std::string("missing field \"") + key + "\" in " + j.dump());
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InvalidSpec(std::string("field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidSpec(std::string("field \"") + key + "\" must be finite");
  return x;
}

double number_or(const json& j, const char* key, double dflt) {
  return j.contains(key) ? number(j, key) : dflt;
}

std::string kind(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) throw InvalidSpec("\"kind\" must be a string");
  return k.get<std::string>();
}

std::vector<cplx> complex_array(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array() || a.empty()) throw InvalidSpec(std::string("\"") + key + "\" must be a nonempty array");
  std::vector<cplx> out;
  for (const auto& e : a) out.push_back(parse_complex(e));
  return out;
}

std::vector<double> real_array(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InvalidSpec(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& e : a) {
    if (!e.is_number()) throw InvalidSpec(std::string("\"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json parse_spec_text(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw InvalidSpec("cannot read spec file " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
}

cplx parse_complex(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    const cplx z(j[0].get<double>(), j[1].get<double>());
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) return z;
  }
  throw InvalidSpec("expected a number or [re, im], got " + j.dump());
}

EntireFunction parse_entire(const json& j) {
  const std::string k = kind(j);
  if (k == "exp") return EntireFunction::exp();
  if (k == "cossqrt") return EntireFunction::cos_sqrt();
  if (k == "sin") return EntireFunction::sine();
  if (k == "identity") return EntireFunction::identity();
  if (k == "scaledexp")
    return EntireFunction::scaled_exp(parse_complex(field(j, "lambda")),
                                      j.contains("amp") ? parse_complex(j.at("amp")) : cplx(1.0));
  if (k == "poly") return EntireFunction::polynomial(complex_array(j, "coeffs"));
  if (k == "const") return EntireFunction::constant(parse_complex(field(j, "value")));
  throw InvalidSpec("unknown entire kind \"" + k + "\"");
}

DiscFunction parse_function(const json& j) {
  const std::string k = kind(j);
  if (k == "closed") {
    const json& nm = field(j, "name");
    if (!nm.is_string()) throw InvalidSpec("\"name\" must be a string");
    const std::string name = nm.get<std::string>();
    if (name == "log1m") return DiscFunction::log_one_minus();
    if (name == "pow1m") {
      const double g = number(j, "gamma");
      if (!(g > 0)) throw InvalidSpec("pow1m needs gamma > 0");
      return DiscFunction::power_one_minus(g);
    }
    if (name == "identity") return DiscFunction::identity();
    if (name == "const") return DiscFunction::constant(parse_complex(field(j, "value")));
    throw InvalidSpec("unknown closed form \"" + name + "\"");
  }
  if (k == "taylor") return DiscFunction::taylor(complex_array(j, "coeffs"));
  if (k == "sparse") {
    const json& a = field(j, "terms");
    if (!a.is_array() || a.empty()) throw InvalidSpec("\"terms\" must be a nonempty array");
    std::vector<std::pair<long, cplx>> terms;
    for (const auto& t : a) {
      if (!t.is_array() || t.size() < 2 || !t[0].is_number_integer() || t[0].get<long>() < 0)
        throw InvalidSpec("sparse term must be [n, re, im] with integer n >= 0");
      const cplx c = t.size() == 2 ? parse_complex(t[1]) : parse_complex(json::array({t[1], t[2]}));
      terms.emplace_back(t[0].get<long>(), c);
    }
    return DiscFunction::sparse_taylor(std::move(terms));
  }
  if (k == "factorprod") {
    const json& a = field(j, "factors");
    if (!a.is_array() || a.empty()) throw InvalidSpec("\"factors\" must be a nonempty array");
    std::vector<Factor> fs;
    for (const auto& f : a) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_number() || !f[1].is_number_integer())
        throw InvalidSpec("factor must be [c, n] with integer n");
      fs.push_back({f[0].get<double>(), f[1].get<long>()});
    }
    return DiscFunction::factor_product(std::move(fs));
  }
  if (k == "rotscaled")
    return DiscFunction::rotated_scaled(parse_complex(field(j, "c")), number_or(j, "theta", 0.0),
                                        parse_function(field(j, "inner")));
  if (k == "compose")
    return DiscFunction::composed(parse_entire(field(j, "entire")), parse_function(field(j, "inner")));
  if (k == "wprod")
    return DiscFunction::weighted_product(parse_function(field(j, "w")), parse_function(field(j, "inner")));
  if (k == "sum") {
    const json& a = field(j, "terms");
    if (!a.is_array() || a.empty()) throw InvalidSpec("\"terms\" must be a nonempty array");
    std::vector<DiscFunction> ts;
    for (const auto& t : a) ts.push_back(parse_function(t));
    return DiscFunction::sum(std::move(ts));
  }
  throw InvalidSpec("unknown function kind \"" + k + "\"");
}

Weight parse_weight(const json& j) {
  const std::string k = kind(j);
  if (k == "power") {
    const double g = number(j, "gamma");
    if (!(g > 0)) throw InvalidSpec("power weight needs gamma > 0");
    return Weight::power(g);
  }
  if (k == "log") return Weight::log();
  if (k == "custom") return Weight::custom(real_array(j, "r"), real_array(j, "v"));
  throw InvalidSpec("unknown weight kind \"" + k + "\"");
}

SpaceSpec parse_space(const json& j) {
  const std::string k = kind(j);
  if (k == "bergman") {
    const double p = number(j, "p");
    const double a = number_or(j, "alpha", 0.0);
    if (!(p > 0)) throw InvalidSpec("bergman needs p > 0");
    if (!(a > -1)) throw InvalidSpec("bergman needs alpha > -1");
    return SpaceSpec::bergman(p, a);
  }
  if (k == "bloch") return SpaceSpec::bloch();
  if (k == "wsup") return SpaceSpec::weighted_sup(parse_weight(field(j, "weight")));
  if (k == "wdsup") return SpaceSpec::weighted_deriv_sup(parse_weight(field(j, "weight")));
  throw InvalidSpec("unknown space kind \"" + k + "\"");
}

}  // namespace anlab
