#include "milplan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "milplan/errors.hpp"
#include "milplan/rng.hpp"
#include "milplan/section.hpp"
#include "milplan/sphere_planner.hpp"
#include "milplan/taskplan.hpp"
#include "milplan/transport.hpp"

namespace milplan {

namespace {

constexpr int kNormSamples = 256;
constexpr std::size_t kMaxNotes = 8;

void fail(VerifyReport& r, const std::string& note) {
  ++r.failures;
  if (r.notes.size() < kMaxNotes) r.notes.push_back(note);
}

void track_worst(VerifyReport& r, const std::string& key, double value) {
  auto it = r.worst.find(key);
  if (it == r.worst.end() || value > it->second) r.worst[key] = value;
}

SpherePoint random_sphere_point(Rng& rng, int m) {
  return SpherePoint(rng.unit_vector(m + 1));
}

// Perturbs a sphere point by a random tangent step of size about h.
SpherePoint nudged(Rng& rng, const SpherePoint& x, double h) {
  Eigen::VectorXd g = rng.gaussian_vector(x.ambient_dim());
  g -= g.dot(x.coords()) * x.coords();
  return SpherePoint::normalized(x.coords() + h * g);
}

double path_sup_distance(const Path& a, const Path& b, int samples) {
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    sup = std::max(sup, (a(t) - b(t)).norm());
  }
  return sup;
}

}  // namespace

nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["passes"] = r.passes();
  j["failures"] = r.failures;
  j["pass"] = r.pass();
  j["worst"] = r.worst;
  j["info"] = r.info;
  j["notes"] = r.notes;
  return j;
}

VerifyReport verify_sphere(int m, long trials, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("verify_sphere: m must be >= 1");
  if (trials < 0) throw std::invalid_argument("verify_sphere: negative trials");

  VerifyReport report;
  report.suite = "sphere-S" + std::to_string(m);

  const bool odd = (m % 2 == 1);
  const PlannerScheme scheme = odd ? PlannerScheme::TwoRegion : PlannerScheme::ThreeRegion;
  std::set<int> regions;

  auto run_pair = [&](const SpherePoint& a, const SpherePoint& b, const char* label) {
    ++report.trials;
    PlanResult plan;
    try {
      plan = plan_sphere(a, b);
    } catch (const std::exception& e) {
      fail(report, std::string(label) + ": planner threw: " + e.what());
      return;
    }
    regions.insert(plan.region);

    const double start_err = (plan.path(0.0) - a.coords()).norm();
    const double end_err = (plan.path(1.0) - b.coords()).norm();
    track_worst(report, "endpoint_error", std::max(start_err, end_err));
    if (start_err > 1e-9 || end_err > 1e-9)
      fail(report, std::string(label) + ": endpoint error");

    double norm_err = 0.0;
    for (int i = 0; i < kNormSamples; ++i) {
      const double t = static_cast<double>(i) / (kNormSamples - 1);
      norm_err = std::max(norm_err, std::abs(plan.path(t).norm() - 1.0));
    }
    track_worst(report, "norm_error", norm_err);
    if (norm_err > 1e-9) fail(report, std::string(label) + ": norm drift");

    const RegionCheck rc = region_member(scheme, plan.region, a, b);
    if (!rc.member) fail(report, std::string(label) + ": region predicate violated");
  };

  for (long k = 0; k < trials; ++k) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(k)));
    const SpherePoint a = random_sphere_point(rng, m);
    switch (k % 4) {
      case 0:
      case 1:
        run_pair(a, random_sphere_point(rng, m), "random");
        break;
      case 2:
        run_pair(a, antipode(a), "antipodal");
        break;
      default:
        run_pair(a, a, "equal");
        break;
    }
  }

  if (m >= 1) {  // exceptional pole pairs; forced region 3 when m is even
    const SpherePoint e1 = basis_point(m, 0);
    run_pair(e1, antipode(e1), "pole-pair");
    run_pair(antipode(e1), e1, "pole-pair");
  }

  report.info["regions_observed"] = static_cast<double>(regions.size());
  report.info["regions_expected"] = odd ? 2.0 : 3.0;
  if (trials >= 8 && static_cast<int>(regions.size()) != (odd ? 2 : 3))
    fail(report, "unexpected region count " + std::to_string(regions.size()));

  // Continuity probe: same-region pairs at distance ~1e-4 should give
  // uniformly close paths. Reported, not asserted; the contract fixes no
  // constant.
  double modulus = 0.0;
  const long probes = std::min<long>(64, trials);
  for (long j = 0; j < probes; ++j) {
    Rng rng(substream_seed(seed, 0x10000000ull + static_cast<std::uint64_t>(j)));
    const SpherePoint a = random_sphere_point(rng, m);
    const SpherePoint b = random_sphere_point(rng, m);
    PlanResult p1 = plan_sphere(a, b);
    if (p1.margin < 0.1) continue;
    const double h = 1e-4;
    const SpherePoint a2 = nudged(rng, a, h);
    const SpherePoint b2 = nudged(rng, b, h);
    PlanResult p2 = plan_sphere(a2, b2);
    if (p2.region != p1.region) continue;
    const double dist = std::hypot((a.coords() - a2.coords()).norm(),
                                   (b.coords() - b2.coords()).norm());
    if (dist <= 0.0) continue;
    modulus = std::max(modulus, path_sup_distance(p1.path, p2.path, 64) / dist);
  }
  report.info["continuity_modulus"] = modulus;
  return report;
}

VerifyReport verify_tube(const GermSpec& g, long trials, std::uint64_t seed,
                         const ProjectOptions& opts) {
  VerifyReport report;
  report.suite = "tube-" + g.name;

  const TubeReport tube = check_tube(g, trials, substream_seed(seed, 1));
  report.trials += tube.trials;
  report.info["min_sigma"] = tube.min_sigma;
  report.info["crowding"] = tube.crowding;
  report.info["success_rate"] = tube.success_rate;
  if (!tube.pass) fail(report, "check_tube failed (sigma/crowding)");

  const int fiber_count = 50;
  Eigen::VectorXd b0(g.map.codomain_dim());
  b0.setZero();
  b0[0] = g.delta;
  try {
    const std::vector<TubePoint> pts = sample_fiber(g, b0, fiber_count, substream_seed(seed, 2));
    const std::vector<TubePoint> again = sample_fiber(g, b0, fiber_count, substream_seed(seed, 2));
    for (int i = 0; i < fiber_count; ++i) {
      ++report.trials;
      const TubeResiduals res = in_tube(g, pts[static_cast<std::size_t>(i)].x);
      track_worst(report, "fiber_level_residual", std::abs(res.level));
      if (!res.inside) fail(report, "sampled fiber point violates tube membership");

      Eigen::VectorXd re = project_to_level(g, pts[static_cast<std::size_t>(i)].x, b0, opts);
      const double moved = (re - pts[static_cast<std::size_t>(i)].x).norm();
      track_worst(report, "idempotence_move", moved);
      if (moved > 1e-9) fail(report, "retraction is not idempotent at tolerance");

      if ((pts[static_cast<std::size_t>(i)].x - again[static_cast<std::size_t>(i)].x).norm() != 0.0)
        fail(report, "fiber sampling is not deterministic");
    }
  } catch (const NumericError& e) {
    ++report.trials;
    fail(report, std::string("fiber sampling failed: ") + e.what());
  }
  return report;
}

VerifyReport verify_task(const GermSpec& g, long trials, std::uint64_t seed, int steps) {
  VerifyReport report;
  report.suite = "task-" + g.name;
  const int p = g.map.codomain_dim();
  std::set<int> regions;

  for (long k = 0; k < trials; ++k) {
    ++report.trials;
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(k)));
    try {
      const Eigen::VectorXd b_start = g.delta * rng.unit_vector(p);
      const Eigen::VectorXd target = g.delta * rng.unit_vector(p);
      const TubePoint a = sample_fiber(g, b_start, 1, substream_seed(seed, 0x20000000ull + k))[0];

      const TaskPlan plan = plan_task(g, a, target, steps);
      regions.insert(plan.region);

      if ((plan.path(0.0) - a.x).norm() != 0.0) fail(report, "start point not exact");

      const double end_res = (g.map.eval(plan.path(1.0)) - target).norm();
      track_worst(report, "target_residual", end_res);
      if (end_res > 1e-6) fail(report, "target residual above 1e-6");

      double tube_res = 0.0, comp_res = 0.0;
      bool tube_ok = true;
      for (int i = 0; i < 64; ++i) {
        const double t = static_cast<double>(i) / 63.0;
        const Eigen::VectorXd x = plan.path(t);
        const TubeResiduals res = in_tube(g, x, 1e-5, 1e-5);
        tube_res = std::max(tube_res, std::abs(res.level));
        tube_ok = tube_ok && res.inside;
        comp_res = std::max(comp_res, (g.map.eval(x) - plan.base_path(t)).norm());
      }
      track_worst(report, "tube_level_residual", tube_res);
      track_worst(report, "composition_residual", comp_res);
      if (!tube_ok) fail(report, "lift left the tube at 1e-5");
      if (comp_res > 1e-6) fail(report, "lift does not track the base path");

      if (!task_region(g, a, target, plan.region).member)
        fail(report, "claimed region predicate violated");
    } catch (const std::exception& e) {
      fail(report, std::string("task trial threw: ") + e.what());
    }
  }

  report.info["regions_used"] = static_cast<double>(regions.size());
  report.info["tc_value"] = static_cast<double>(tc_value(g));
  for (int r : regions)
    if (r < 1 || r > tc_value(g))
      fail(report, "region " + std::to_string(r) + " exceeds the planner budget");
  return report;
}

VerifyReport verify_section_suite(const GermSpec& g, std::uint64_t seed, int steps, int samples,
                                  double inject_base_offset) {
  VerifyReport report;
  report.suite = "section-" + g.name;
  try {
    SectionS1 s = build_section_s1(g, seed, steps);
    if (inject_base_offset > 0.0) {
      Rng rng(substream_seed(seed, 99));
      s.offset = inject_base_offset * rng.unit_vector(g.map.domain_dim());
      report.info["injected_offset"] = inject_base_offset;
    }

    const SectionCheck check = verify_section(g, s, samples);
    report.trials += samples;
    report.worst["section_residual"] = check.max_residual;
    report.worst["closure_defect"] = check.closure_defect;
    if (check.max_residual > 1e-6) fail(report, "section residual above 1e-6");
    if (check.closure_defect > 1e-5) fail(report, "closure defect above 1e-5");

    for (int i = 0; i < 16; ++i) {
      ++report.trials;
      const double theta = 2.0 * M_PI * static_cast<double>(i) / 15.0;
      const TubeResiduals res = in_tube(g, s.eval(theta), 1e-5, 1e-5);
      if (!res.inside) fail(report, "section value left the tube at 1e-5");
    }
  } catch (const std::exception& e) {
    ++report.trials;
    fail(report, std::string("section build failed: ") + e.what());
  }
  return report;
}

VerifySummary verify_all(std::uint64_t seed) {
  VerifySummary summary;
  summary.seed = seed;

  for (int m = 1; m <= 3; ++m)
    summary.suites.push_back(
        verify_sphere(m, 10000, substream_seed(seed, hash_label("sphere-S" + std::to_string(m)))));

  for (const std::string& name : builtin_germ_names()) {
    const GermSpec g = builtin_germ(name);
    summary.suites.push_back(verify_tube(g, 400, substream_seed(seed, hash_label("tube-" + name))));
    summary.suites.push_back(
        verify_task(g, 100, substream_seed(seed, hash_label("task-" + name))));
    summary.suites.push_back(
        verify_section_suite(g, substream_seed(seed, hash_label("section-" + name))));
  }

  std::sort(summary.suites.begin(), summary.suites.end(),
            [](const VerifyReport& a, const VerifyReport& b) { return a.suite < b.suite; });
  summary.pass = std::all_of(summary.suites.begin(), summary.suites.end(),
                             [](const VerifyReport& r) { return r.pass(); });
  return summary;
}

nlohmann::json summary_to_json(const VerifySummary& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["pass"] = s.pass;
  j["suites"] = nlohmann::json::array();
  for (const VerifyReport& r : s.suites) j["suites"].push_back(report_to_json(r));
  return j;
}

}  // namespace milplan
