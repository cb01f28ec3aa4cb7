#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "milplan/config.hpp"
#include "milplan/trace.hpp"
#include "milplan/verify.hpp"

using namespace milplan;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/milplan_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sphere suites pass and see every region") {
  for (int m : {1, 2, 3}) {
    CAPTURE(m);
    const VerifyReport report = verify_sphere(m, 600, 1);
    CHECK(report.pass());
    CHECK(report.info.at("regions_observed") == report.info.at("regions_expected"));
    CHECK(report.worst.at("endpoint_error") <= 1e-9);
    CHECK(report.worst.at("norm_error") <= 1e-9);
  }
}

TEST_CASE("tube suite passes for a complex germ") {
  const VerifyReport report = verify_tube(builtin_germ("complex-z2w3"), 60, 2);
  CHECK(report.pass());
  CHECK(report.info.at("min_sigma") >= 1e-6);
  CHECK(report.worst.at("idempotence_move") <= 1e-9);
}

TEST_CASE("task suite passes with a small budget") {
  const VerifyReport report = verify_task(builtin_germ("complex-z2w2"), 10, 3, 512);
  CHECK(report.pass());
  CHECK(report.worst.at("target_residual") <= 1e-6);
  CHECK(report.info.at("regions_used") <= report.info.at("tc_value"));
}

TEST_CASE("section suite passes clean and fails under injection") {
  const GermSpec g = builtin_germ("projection3to2");
  const VerifyReport clean = verify_section_suite(g, 4, 512, 48);
  CHECK(clean.pass());
  CHECK(clean.worst.at("section_residual") <= 1e-6);

  const VerifyReport injected = verify_section_suite(g, 4, 512, 48, 1e-2);
  CHECK_FALSE(injected.pass());
  CHECK(injected.worst.at("section_residual") >= 1e-3);
}

TEST_CASE("verification reports are byte-stable for a fixed seed") {
  const VerifyReport a = verify_tube(builtin_germ("complex-z2w2"), 40, 9);
  const VerifyReport b = verify_tube(builtin_germ("complex-z2w2"), 40, 9);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());

  VerifySummary s1, s2;
  s1.seed = s2.seed = 9;
  s1.suites = {a};
  s2.suites = {b};
  s1.pass = a.pass();
  s2.pass = b.pass();
  CHECK(summary_to_json(s1).dump() == summary_to_json(s2).dump());
}

TEST_CASE("trace of a constant path with two samples") {
  const Path p = Path::constant(Eigen::Vector2d(0.5, -0.25));
  TraceOptions opts;
  opts.samples = 2;
  std::stringstream out;
  write_trace(out, p, opts, TraceFormat::Csv);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(out, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);  // header + 2 rows
  CHECK(lines[0] == "t,x1,x2");
  CHECK(lines[1] == "0,0.5,-0.25");
  CHECK(lines[2] == "1,0.5,-0.25");
}

TEST_CASE("csv traces round-trip through parsing") {
  const GermSpec g = builtin_germ("projection3to2");
  Eigen::VectorXd a(3), b(3);
  a << g.delta, 0.0, 0.1;
  b << 0.0, g.delta, 0.1;
  const Path p = Path::line(a, b);

  TraceOptions opts;
  opts.samples = 17;
  opts.germ = &g;
  std::stringstream out;
  write_trace(out, p, opts, TraceFormat::Csv);

  std::string line;
  std::getline(out, line);
  CHECK(line == "t,x1,x2,x3,f1,f2");
  int rows = 0;
  while (std::getline(out, line)) {
    std::stringstream row(line);
    std::vector<double> vals;
    std::string cell;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 6);
    const Eigen::VectorXd x = p(vals[0]);
    CHECK(std::abs(vals[1] - x[0]) <= 1e-15);
    CHECK(std::abs(vals[2] - x[1]) <= 1e-15);
    CHECK(std::abs(vals[4] - x[0]) <= 1e-15);  // f1 = x1 for the projection
    ++rows;
  }
  CHECK(rows == 17);
}

TEST_CASE("exported traces are bitwise reproducible") {
  const Path p = Path::line(Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0));
  TraceOptions opts;
  opts.samples = 64;

  TempFile f1("trace1.csv"), f2("trace2.csv");
  export_trace(p, opts, f1.path, TraceFormat::Csv);
  export_trace(p, opts, f2.path, TraceFormat::Csv);
  CHECK(slurp(f1.path) == slurp(f2.path));

  TempFile j1("trace1.json");
  export_trace(p, opts, j1.path, TraceFormat::Json);
  const nlohmann::json doc = nlohmann::json::parse(slurp(j1.path));
  REQUIRE(doc.contains("columns"));
  REQUIRE(doc.contains("rows"));
  CHECK(doc["columns"].size() == 3);
  CHECK(doc["rows"].size() == 64);
  CHECK(doc["rows"][0][0].get<double>() == 0.0);
  CHECK(doc["rows"][63][0].get<double>() == 1.0);

  CHECK_THROWS(export_trace(p, opts, "/no/such/dir/trace.csv", TraceFormat::Csv));
}

TEST_CASE("trace format parsing and sample validation") {
  CHECK(trace_format_from_string("csv") == TraceFormat::Csv);
  CHECK(trace_format_from_string("json") == TraceFormat::Json);
  CHECK_THROWS_AS(trace_format_from_string("xml"), std::invalid_argument);

  const Path p = Path::constant(Eigen::Vector2d(0, 0));
  TraceOptions bad;
  bad.samples = 1;
  std::stringstream out;
  CHECK_THROWS_AS(write_trace(out, p, bad, TraceFormat::Csv), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const RunConfig cfg = config_from_json(
      R"({"delta": 0.02, "epsilon": 0.6, "steps": 1024, "newton_tol": 1e-11,
          "newton_max_iter": 80, "sigma_min": 1e-9, "tube_tol": 1e-7})");
  CHECK(cfg.delta.value() == 0.02);
  CHECK(cfg.epsilon.value() == 0.6);
  CHECK(cfg.steps == 1024);
  CHECK(cfg.newton_tol == 1e-11);
  CHECK(cfg.newton_max_iter == 80);
  CHECK(cfg.sigma_min == 1e-9);
  CHECK(cfg.tube_tol == 1e-7);

  const RunConfig empty = config_from_json("{}");
  CHECK_FALSE(empty.delta.has_value());
  CHECK(empty.steps == kDefaultLiftSteps);

  CHECK_THROWS_AS(config_from_json(R"({"unknown": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(R"({"steps": 0})"), std::invalid_argument);
  CHECK_THROWS(config_from_json("nope"));
  CHECK_THROWS(config_from_json_file("/does/not/exist.json"));

  const GermSpec g = apply_config(builtin_germ("complex-z2w2"), cfg);
  CHECK(g.delta == 0.02);
  CHECK(g.epsilon == 0.6);
  // Radii stay validated: a config breaking delta < epsilon is rejected.
  RunConfig bad;
  bad.delta = 0.7;
  CHECK_THROWS_AS(apply_config(builtin_germ("complex-z2w2"), bad), std::invalid_argument);
}
