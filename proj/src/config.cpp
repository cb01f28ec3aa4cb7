#include "milplan/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace milplan {

RunConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config JSON: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config JSON: document must be an object");

  RunConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "delta") {
        cfg.delta = value.get<double>();
      } else if (key == "epsilon") {
        cfg.epsilon = value.get<double>();
      } else if (key == "steps") {
        cfg.steps = value.get<int>();
        if (cfg.steps < 1) throw std::invalid_argument("config JSON: steps must be >= 1");
      } else if (key == "newton_tol") {
        cfg.newton_tol = value.get<double>();
      } else if (key == "newton_max_iter") {
        cfg.newton_max_iter = value.get<int>();
      } else if (key == "sigma_min") {
        cfg.sigma_min = value.get<double>();
      } else if (key == "tube_tol") {
        cfg.tube_tol = value.get<double>();
      } else {
        throw std::invalid_argument("config JSON: unknown key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config JSON: ") + e.what());
  }
  return cfg;
}

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config JSON: cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

GermSpec apply_config(const GermSpec& g, const RunConfig& cfg) {
  return with_radii(g, cfg.delta, cfg.epsilon);
}

}  // namespace milplan
