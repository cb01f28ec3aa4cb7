#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "milplan/config.hpp"
#include "milplan/germ.hpp"
#include "milplan/rng.hpp"
#include "milplan/section.hpp"
#include "milplan/sphere_planner.hpp"
#include "milplan/taskplan.hpp"
#include "milplan/trace.hpp"
#include "milplan/transport.hpp"
#include "milplan/tube.hpp"
#include "milplan/verify.hpp"

namespace {

using namespace milplan;

Eigen::VectorXd parse_csv_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::invalid_argument("bad number in vector: \"" + item + "\"");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty vector argument");
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[i];
  return out;
}

// A germ reference is either a builtin name or a path to a germ JSON file.
GermSpec resolve_germ(const std::string& ref) {
  for (const std::string& name : builtin_germ_names())
    if (name == ref) return builtin_germ(name);
  if (std::filesystem::exists(ref)) return germ_from_json_file(ref);
  throw std::invalid_argument("unknown germ \"" + ref + "\" (not a builtin, not a file)");
}

struct CommonOpts {
  std::string out;
  std::string format = "csv";
  std::string config;
  std::uint64_t seed = 0;
  int samples = 256;
  int steps = 0;  // 0 = take the config/default value

  RunConfig run_config() const {
    RunConfig cfg = config.empty() ? RunConfig{} : config_from_json_file(config);
    if (steps > 0) cfg.steps = steps;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_steps = true) {
  cmd->add_option("--out", opts.out, "write the trace to this file");
  cmd->add_option("--format", opts.format, "trace format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", opts.config, "JSON file with radii/tolerance overrides");
  cmd->add_option("--seed", opts.seed, "RNG seed");
  cmd->add_option("--samples", opts.samples, "trace/verification sample count");
  if (with_steps) cmd->add_option("--steps", opts.steps, "integration steps per unit parameter");
}

// Trace goes to --out when given, otherwise to stdout; metadata JSON goes to
// stdout only when it will not interleave with a stdout trace.
void emit_trace_and_meta(const Path& path, const CommonOpts& opts, const GermSpec* germ,
                         const nlohmann::json& meta) {
  TraceOptions topts;
  topts.samples = opts.samples;
  topts.germ = germ;
  const TraceFormat fmt = trace_format_from_string(opts.format);
  if (!opts.out.empty()) {
    export_trace(path, topts, opts.out, fmt);
    std::cout << meta.dump(2) << "\n";
  } else {
    write_trace(std::cout, path, topts, fmt);
    std::cerr << meta.dump(2) << "\n";
  }
}

int emit_summary(const VerifySummary& summary, const std::string& out) {
  const nlohmann::json j = summary_to_json(summary);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << j.dump(2) << "\n";
  }
  return summary.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion planning through polynomial tube fibrations"};
  app.require_subcommand(1);
  int exit_code = 0;

  // plan-sphere
  auto* sphere_cmd = app.add_subcommand("plan-sphere", "plan a move between two sphere points");
  int sphere_m = 0;
  std::string sphere_from, sphere_to;
  CommonOpts sphere_opts;
  sphere_cmd->add_option("--m", sphere_m, "sphere dimension")->required();
  sphere_cmd->add_option("--from", sphere_from, "start point, comma-separated")->required();
  sphere_cmd->add_option("--to", sphere_to, "end point, comma-separated")->required();
  add_common(sphere_cmd, sphere_opts, false);
  sphere_cmd->callback([&] {
    const Eigen::VectorXd va = parse_csv_vector(sphere_from);
    const Eigen::VectorXd vb = parse_csv_vector(sphere_to);
    if (va.size() != sphere_m + 1 || vb.size() != sphere_m + 1)
      throw std::invalid_argument("points on S^m need m+1 coordinates");
    const SpherePoint a = SpherePoint::normalized(va);
    const SpherePoint b = SpherePoint::normalized(vb);
    const PlanResult plan = plan_sphere(a, b);
    nlohmann::json meta;
    meta["m"] = sphere_m;
    meta["region"] = plan.region;
    meta["margin"] = plan.margin;
    emit_trace_and_meta(plan.path, sphere_opts, nullptr, meta);
  });

  // plan-task
  auto* task_cmd = app.add_subcommand("plan-task", "plan a tube move toward a base target");
  std::string task_germ, task_start, task_target;
  CommonOpts task_opts;
  task_cmd->add_option("--germ", task_germ, "builtin germ name or germ JSON file")->required();
  task_cmd->add_option("--start", task_start, "start point in R^n, comma-separated")->required();
  task_cmd->add_option("--target", task_target, "target on the delta-sphere in R^p")->required();
  add_common(task_cmd, task_opts);
  task_cmd->callback([&] {
    const RunConfig cfg = task_opts.run_config();
    const GermSpec g = apply_config(resolve_germ(task_germ), cfg);
    const TubePoint a = make_tube_point(g, parse_csv_vector(task_start));
    const Eigen::VectorXd A = parse_csv_vector(task_target);
    const TaskPlan plan = plan_task(g, a, A, cfg.steps);
    nlohmann::json meta;
    meta["germ"] = g.name;
    meta["region"] = plan.region;
    meta["target_residual"] = (g.map.eval(plan.path(1.0)) - A).norm();
    meta["max_level_residual"] = plan.report.max_level_residual;
    emit_trace_and_meta(plan.path, task_opts, &g, meta);
  });

  // cross-section
  auto* section_cmd = app.add_subcommand("cross-section", "build a section over the base circle");
  std::string section_germ;
  CommonOpts section_opts;
  section_opts.samples = 360;
  section_cmd->add_option("--germ", section_germ, "builtin germ name or germ JSON file")->required();
  add_common(section_cmd, section_opts);
  section_cmd->callback([&] {
    const RunConfig cfg = section_opts.run_config();
    const GermSpec g = apply_config(resolve_germ(section_germ), cfg);
    const SectionS1 s = build_section_s1(g, section_opts.seed, cfg.steps);
    const SectionCheck check = verify_section(g, s, section_opts.samples);
    nlohmann::json meta;
    meta["germ"] = g.name;
    meta["max_residual"] = check.max_residual;
    meta["closure_defect"] = check.closure_defect;
    meta["samples"] = section_opts.samples;
    emit_trace_and_meta(s.as_path(), section_opts, &g, meta);
  });

  // lift
  auto* lift_cmd = app.add_subcommand("lift", "horizontally lift a base loop or arc");
  std::string lift_germ, lift_start;
  double lift_arc = 0.0;
  bool lift_loop = false;
  CommonOpts lift_opts;
  lift_cmd->add_option("--germ", lift_germ, "builtin germ name or germ JSON file")->required();
  lift_cmd->add_option("--start", lift_start, "start point in R^n on the tube")->required();
  auto* loop_flag = lift_cmd->add_flag("--loop", lift_loop, "lift the full base circle");
  auto* arc_opt = lift_cmd->add_option("--arc", lift_arc, "lift the arc of this angle (radians)");
  loop_flag->excludes(arc_opt);
  add_common(lift_cmd, lift_opts);
  lift_cmd->callback([&] {
    if (!lift_loop && lift_arc == 0.0)
      throw std::invalid_argument("lift: pass --loop or a nonzero --arc");
    const RunConfig cfg = lift_opts.run_config();
    const GermSpec g = apply_config(resolve_germ(lift_germ), cfg);
    if (g.map.codomain_dim() != 2)
      throw std::invalid_argument("lift: circle lifting needs a p = 2 germ");
    const TubePoint x0 = make_tube_point(g, parse_csv_vector(lift_start));
    const Path base = lift_loop ? circle_path(g.delta) : arc_path(g.delta, lift_arc);
    if ((x0.fx - base.start()).norm() > kTubeLevelTol)
      throw std::invalid_argument("lift: start point must sit over (delta, 0)");
    const LiftResult lift = horizontal_lift(g, base, x0, cfg.steps);
    nlohmann::json meta;
    meta["germ"] = g.name;
    meta["steps"] = lift.report.steps;
    meta["max_level_residual"] = lift.report.max_level_residual;
    meta["max_ball_excess"] = lift.report.max_ball_excess;
    meta["displacement"] = (lift.report.endpoint.x - x0.x).norm();
    emit_trace_and_meta(lift.path, lift_opts, &g, meta);
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->require_subcommand(1);

  auto make_single_summary = [](std::uint64_t seed, std::vector<VerifyReport> reports) {
    VerifySummary summary;
    summary.seed = seed;
    summary.suites = std::move(reports);
    std::sort(summary.suites.begin(), summary.suites.end(),
              [](const VerifyReport& a, const VerifyReport& b) { return a.suite < b.suite; });
    summary.pass = std::all_of(summary.suites.begin(), summary.suites.end(),
                               [](const VerifyReport& r) { return r.pass(); });
    return summary;
  };

  auto germs_for = [](const std::string& ref) {
    std::vector<GermSpec> out;
    if (ref.empty()) {
      for (const std::string& name : builtin_germ_names()) out.push_back(builtin_germ(name));
    } else {
      out.push_back(resolve_germ(ref));
    }
    return out;
  };

  // verify sphere
  auto* vs = verify_cmd->add_subcommand("sphere", "sphere planner suites");
  int vs_m = 0;
  long vs_trials = 10000;
  CommonOpts vs_opts;
  vs->add_option("--m", vs_m, "sphere dimension (default: 1, 2 and 3)");
  vs->add_option("--trials", vs_trials, "random pairs per sphere");
  add_common(vs, vs_opts, false);
  vs->callback([&] {
    std::vector<VerifyReport> reports;
    if (vs_m > 0) {
      reports.push_back(verify_sphere(vs_m, vs_trials, vs_opts.seed));
    } else {
      for (int m = 1; m <= 3; ++m)
        reports.push_back(verify_sphere(
            m, vs_trials, substream_seed(vs_opts.seed, hash_label("sphere-S" + std::to_string(m)))));
    }
    exit_code = emit_summary(make_single_summary(vs_opts.seed, std::move(reports)), vs_opts.out);
  });

  // verify tube
  auto* vt = verify_cmd->add_subcommand("tube", "tube geometry suites");
  std::string vt_germ;
  long vt_trials = 400;
  CommonOpts vt_opts;
  vt->add_option("--germ", vt_germ, "builtin germ name or germ JSON file");
  vt->add_option("--trials", vt_trials, "random tube draws");
  add_common(vt, vt_opts, false);
  vt->callback([&] {
    const RunConfig cfg = vt_opts.run_config();
    ProjectOptions popts;
    popts.tol = cfg.newton_tol;
    popts.max_iter = cfg.newton_max_iter;
    popts.sigma_min = cfg.sigma_min;
    std::vector<VerifyReport> reports;
    for (const GermSpec& g : germs_for(vt_germ))
      reports.push_back(verify_tube(apply_config(g, cfg), vt_trials,
                                    substream_seed(vt_opts.seed, hash_label("tube-" + g.name)),
                                    popts));
    exit_code = emit_summary(make_single_summary(vt_opts.seed, std::move(reports)), vt_opts.out);
  });

  // verify task
  auto* vk = verify_cmd->add_subcommand("task", "task planner suites");
  std::string vk_germ;
  long vk_trials = 100;
  CommonOpts vk_opts;
  vk->add_option("--germ", vk_germ, "builtin germ name or germ JSON file");
  vk->add_option("--trials", vk_trials, "random tasks per germ");
  add_common(vk, vk_opts);
  vk->callback([&] {
    const RunConfig cfg = vk_opts.run_config();
    std::vector<VerifyReport> reports;
    for (const GermSpec& g : germs_for(vk_germ))
      reports.push_back(verify_task(apply_config(g, cfg), vk_trials,
                                    substream_seed(vk_opts.seed, hash_label("task-" + g.name)),
                                    cfg.steps));
    exit_code = emit_summary(make_single_summary(vk_opts.seed, std::move(reports)), vk_opts.out);
  });

  // verify section
  auto* vc = verify_cmd->add_subcommand("section", "cross-section suites");
  std::string vc_germ;
  double vc_inject = 0.0;
  CommonOpts vc_opts;
  vc_opts.samples = 120;
  vc->add_option("--germ", vc_germ, "builtin germ name or germ JSON file");
  vc->add_option("--inject-base-offset", vc_inject,
                 "shift the built section off the fiber by this amount (fault check)");
  add_common(vc, vc_opts);
  vc->callback([&] {
    const RunConfig cfg = vc_opts.run_config();
    std::vector<VerifyReport> reports;
    for (const GermSpec& g : germs_for(vc_germ))
      reports.push_back(verify_section_suite(
          apply_config(g, cfg), substream_seed(vc_opts.seed, hash_label("section-" + g.name)),
          cfg.steps, vc_opts.samples, vc_inject));
    exit_code = emit_summary(make_single_summary(vc_opts.seed, std::move(reports)), vc_opts.out);
  });

  // verify all
  auto* va = verify_cmd->add_subcommand("all", "every suite");
  CommonOpts va_opts;
  add_common(va, va_opts, false);
  va->callback([&] { exit_code = emit_summary(verify_all(va_opts.seed), va_opts.out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
