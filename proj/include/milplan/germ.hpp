#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milplan/polymap.hpp"

namespace milplan {

// Structure class of a germ; decides which planner applies and how many
// regions its task planner may use.
enum class GermKind {
  TrivialProjection,
  ComplexHolomorphic,
  RealIsolatedSingularity,
  Arrangement,
};

std::string to_string(GermKind kind);
GermKind germ_kind_from_string(const std::string& s);

// A polynomial map germ together with the two radii of its tube model:
// delta for the target sphere radius, epsilon for the ambient ball.
struct GermSpec {
  PolyMap map;
  double delta;
  double epsilon;
  GermKind kind;
  std::string name;
};

// Validates 0 < delta < epsilon.
GermSpec make_germ(PolyMap map, double delta, double epsilon, GermKind kind, std::string name);

// Returns a copy with either radius replaced; re-validates.
GermSpec with_radii(const GermSpec& g, std::optional<double> delta, std::optional<double> epsilon);

std::vector<std::string> builtin_germ_names();
GermSpec builtin_germ(const std::string& name);

// Custom germ from a JSON document:
//   {"name": "...", "n": 4, "p": 2,
//    "components": [[[e1,...,en], num, den], ...]  x p,
//    "delta": 0.01, "epsilon": 0.5, "kind": "real-isolated-singularity"}
// "components" holds one term list per codomain coordinate; each term is an
// exponent vector plus an exact rational coefficient. delta/epsilon/kind are
// optional and fall back to the catalog defaults.
GermSpec germ_from_json(const std::string& text);
GermSpec germ_from_json_file(const std::string& path);

}  // namespace milplan
