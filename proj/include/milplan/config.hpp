#pragma once

#include <optional>
#include <string>

#include "milplan/germ.hpp"
#include "milplan/transport.hpp"
#include "milplan/tube.hpp"

namespace milplan {

// Runtime overrides, typically loaded from a --config JSON file. Unset
// optionals leave the germ/table defaults alone.
struct RunConfig {
  std::optional<double> delta;
  std::optional<double> epsilon;
  int steps = kDefaultLiftSteps;
  double newton_tol = kNewtonTol;
  int newton_max_iter = kNewtonMaxIter;
  double sigma_min = kSigmaMin;
  double tube_tol = kTubeLevelTol;
};

// Parses {"delta":…, "epsilon":…, "steps":…, "newton_tol":…,
// "newton_max_iter":…, "sigma_min":…, "tube_tol":…}; every key optional,
// unknown keys rejected.
RunConfig config_from_json(const std::string& text);
RunConfig config_from_json_file(const std::string& path);

// Germ with the config's radii applied (validation included).
GermSpec apply_config(const GermSpec& g, const RunConfig& cfg);

}  // namespace milplan
