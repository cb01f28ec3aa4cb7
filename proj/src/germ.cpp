#include "milplan/germ.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace milplan {

namespace {

constexpr double kDefaultDelta = 1e-2;
constexpr double kDefaultEpsilon = 0.5;

ComplexPoly cvar(int nvars, int j) { return ComplexPoly::variable(nvars, j); }

}  // namespace

std::string to_string(GermKind kind) {
  switch (kind) {
    case GermKind::TrivialProjection: return "trivial-projection";
    case GermKind::ComplexHolomorphic: return "complex-holomorphic";
    case GermKind::RealIsolatedSingularity: return "real-isolated-singularity";
    case GermKind::Arrangement: return "arrangement";
  }
  throw std::invalid_argument("to_string: bad GermKind");
}

GermKind germ_kind_from_string(const std::string& s) {
  if (s == "trivial-projection") return GermKind::TrivialProjection;
  if (s == "complex-holomorphic") return GermKind::ComplexHolomorphic;
  if (s == "real-isolated-singularity") return GermKind::RealIsolatedSingularity;
  if (s == "arrangement") return GermKind::Arrangement;
  throw std::invalid_argument("unknown germ kind: " + s);
}

GermSpec make_germ(PolyMap map, double delta, double epsilon, GermKind kind, std::string name) {
  if (!(delta > 0.0) || !(epsilon > 0.0) || !(delta < epsilon))
    throw std::invalid_argument("make_germ: radii must satisfy 0 < delta < epsilon");
  return GermSpec{std::move(map), delta, epsilon, kind, std::move(name)};
}

GermSpec with_radii(const GermSpec& g, std::optional<double> delta, std::optional<double> epsilon) {
  return make_germ(g.map, delta.value_or(g.delta), epsilon.value_or(g.epsilon), g.kind, g.name);
}

std::vector<std::string> builtin_germ_names() {
  return {"projection3to2", "complex-z2w2", "complex-z2w3", "arrangement-braid2",
          "arrangement-single"};
}

GermSpec builtin_germ(const std::string& name) {
  if (name == "projection3to2") {
    // f(x, y, z) = (x, y), the model trivial bundle.
    RationalPoly f1 = RationalPoly::variable(3, 0);
    RationalPoly f2 = RationalPoly::variable(3, 1);
    return make_germ(PolyMap({f1, f2}), kDefaultDelta, kDefaultEpsilon,
                     GermKind::TrivialProjection, name);
  }
  if (name == "complex-z2w2") {
    ComplexPoly g = cvar(2, 0).pow(2) + cvar(2, 1).pow(2);
    return make_germ(realify(g), kDefaultDelta, kDefaultEpsilon, GermKind::ComplexHolomorphic,
                     name);
  }
  if (name == "complex-z2w3") {
    ComplexPoly g = cvar(2, 0).pow(2) + cvar(2, 1).pow(3);
    return make_germ(realify(g), kDefaultDelta, kDefaultEpsilon, GermKind::ComplexHolomorphic,
                     name);
  }
  if (name == "arrangement-braid2") {
    // Three lines in C^2: z1, z2, z1 - z2.
    const ComplexRational one(Rational(1));
    Arrangement arr(1, {{one, ComplexRational()}, {ComplexRational(), one}, {one, -one}});
    return make_germ(arrangement_map(arr), kDefaultDelta, kDefaultEpsilon, GermKind::Arrangement,
                     name);
  }
  if (name == "arrangement-single") {
    // One hyperplane z1 = 0 in C^2; kept in C^2 so the fiber is positive
    // dimensional.
    const ComplexRational one(Rational(1));
    Arrangement arr(1, {{one, ComplexRational()}});
    return make_germ(arrangement_map(arr), kDefaultDelta, kDefaultEpsilon, GermKind::Arrangement,
                     name);
  }
  throw std::invalid_argument("unknown builtin germ: " + name);
}

namespace {

GermSpec germ_from_parsed(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("germ JSON: document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "name" && key != "n" && key != "p" && key != "components" && key != "delta" &&
        key != "epsilon" && key != "kind")
      throw std::invalid_argument("germ JSON: unknown key \"" + key + "\"");
  }
  const int n = doc.at("n").get<int>();
  const int p = doc.at("p").get<int>();
  const auto& comps = doc.at("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != p)
    throw std::invalid_argument("germ JSON: \"components\" must list exactly p term lists");

  std::vector<RationalPoly> components;
  components.reserve(comps.size());
  for (const auto& termlist : comps) {
    if (!termlist.is_array()) throw std::invalid_argument("germ JSON: component must be an array of terms");
    RationalPoly poly(n);
    for (const auto& term : termlist) {
      if (!term.is_array() || term.size() != 3)
        throw std::invalid_argument("germ JSON: term must be [exponents, numerator, denominator]");
      const auto& evec = term[0];
      if (!evec.is_array() || static_cast<int>(evec.size()) != n)
        throw std::invalid_argument("germ JSON: exponent vector must have length n");
      Exponents e;
      e.reserve(evec.size());
      for (const auto& x : evec) e.push_back(x.get<int>());
      poly.add_term(std::move(e), Rational(term[1].get<std::int64_t>(), term[2].get<std::int64_t>()));
    }
    components.push_back(std::move(poly));
  }

  const double delta = doc.value("delta", kDefaultDelta);
  const double epsilon = doc.value("epsilon", kDefaultEpsilon);
  const GermKind kind = doc.contains("kind")
                            ? germ_kind_from_string(doc.at("kind").get<std::string>())
                            : GermKind::RealIsolatedSingularity;
  const std::string name = doc.value("name", std::string("custom"));
  return make_germ(PolyMap(std::move(components)), delta, epsilon, kind, name);
}

}  // namespace

GermSpec germ_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("germ JSON: parse error: ") + e.what());
  }
  try {
    return germ_from_parsed(doc);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("germ JSON: ") + e.what());
  }
}

GermSpec germ_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("germ JSON: cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return germ_from_json(ss.str());
}

}  // namespace milplan
