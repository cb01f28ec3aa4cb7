#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "milplan/config.hpp"
#include "milplan/germ.hpp"
#include "milplan/tube.hpp"

namespace milplan {

struct VerifyReport {
  std::string suite;
  long trials = 0;
  long failures = 0;
  std::map<std::string, double> worst;  // worst-case residuals per check
  std::map<std::string, double> info;   // region counts, moduli, run metrics
  std::vector<std::string> notes;       // first few failure descriptions

  long passes() const { return trials - failures; }
  bool pass() const { return failures == 0; }
};

nlohmann::json report_to_json(const VerifyReport& r);

// Exercises the sphere planner on S^m: endpoint and norm contracts on random
// pairs, antipodal and equal pairs, the exceptional pole pairs when m is
// even, region membership of every returned plan, the observed region count
// against the expected one, and an empirical continuity modulus.
VerifyReport verify_sphere(int m, long trials, std::uint64_t seed);

// Tube geometry suite: check_tube verdict, fiber sampling, membership and
// retraction idempotence, sampling determinism.
VerifyReport verify_tube(const GermSpec& g, long trials, std::uint64_t seed,
                         const ProjectOptions& opts = {});

// Task planner suite: random (a, A) tasks; start-point exactness, target
// residual, tube adherence along the lift, compositionality with the base
// path, and region economy against tc_value.
VerifyReport verify_task(const GermSpec& g, long trials, std::uint64_t seed,
                         int steps = kDefaultLiftSteps);

// Builds a circle section and verifies the section identity, closure and
// tube membership. A positive inject_base_offset shifts the built section
// off the fiber by that amount before verification; the suite is then
// expected to fail, which is how the detection path is exercised.
VerifyReport verify_section_suite(const GermSpec& g, std::uint64_t seed,
                                  int steps = kDefaultLiftSteps, int samples = 120,
                                  double inject_base_offset = 0.0);

struct VerifySummary {
  std::uint64_t seed = 0;
  std::vector<VerifyReport> suites;  // merged in suite-name order
  bool pass = false;
};

// Full battery: spheres S^1..S^3 plus tube/task/section suites for every
// builtin germ. Suite seeds are derived from the master seed by name, so the
// summary is reproducible byte for byte.
VerifySummary verify_all(std::uint64_t seed);

nlohmann::json summary_to_json(const VerifySummary& s);

}  // namespace milplan
