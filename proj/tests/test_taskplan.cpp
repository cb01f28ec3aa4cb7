#include <doctest.h>

#include <cmath>

#include "milplan/rng.hpp"
#include "milplan/taskplan.hpp"

using namespace milplan;

namespace {

TubePoint sample_start(const GermSpec& g, std::uint64_t seed) {
  Eigen::VectorXd b(2);
  b << g.delta, 0.0;
  return sample_fiber(g, b, 1, seed)[0];
}

}  // namespace

TEST_CASE("projection task moves the base coordinates and freezes the rest") {
  const GermSpec g = builtin_germ("projection3to2");
  Eigen::VectorXd x0(3);
  x0 << g.delta, 0.0, 0.2;
  Eigen::VectorXd A(2);
  A << 0.0, g.delta;

  const TaskPlan plan = plan_task(g, make_tube_point(g, x0), A, 256);
  CHECK((plan.path(0.0) - x0).norm() == 0.0);
  CHECK((g.map.eval(plan.path(1.0)) - A).norm() <= 1e-6);
  for (double t : {0.25, 0.5, 0.75}) {
    const Eigen::VectorXd x = plan.path(t);
    CHECK(std::abs(x[2] - 0.2) <= 1e-9);                      // fiber coordinate frozen
    CHECK(std::abs(x.head(2).norm() - g.delta) <= 1e-9);      // base stays on the circle
  }
}

TEST_CASE("task with target equal to the start image stays in region 1") {
  const GermSpec g = builtin_germ("complex-z2w2");
  const TubePoint a = sample_start(g, 5);
  const TaskPlan plan = plan_task(g, a, a.fx, 128);
  CHECK(plan.region == 1);
  // Base path is constant, so the lift is too.
  for (double t : {0.0, 0.5, 1.0}) CHECK((plan.path(t) - a.x).norm() <= 1e-9);
}

TEST_CASE("antipodal base target uses the second region") {
  const GermSpec g = builtin_germ("complex-z2w2");
  const TubePoint a = sample_start(g, 7);
  const Eigen::VectorXd A = -a.fx;
  const TaskPlan plan = plan_task(g, a, A, 1024);
  CHECK(plan.region == 2);
  CHECK((g.map.eval(plan.path(1.0)) - A).norm() <= 1e-6);
  CHECK((plan.path(0.0) - a.x).norm() == 0.0);
}

TEST_CASE("task plans follow their own base path") {
  const GermSpec g = builtin_germ("complex-z2w3");
  Rng rng(1234);
  for (int k = 0; k < 5; ++k) {
    const TubePoint a = sample_start(g, 100 + k);
    const Eigen::VectorXd A = g.delta * rng.unit_vector(2);
    const TaskPlan plan = plan_task(g, a, A, 512);
    for (int i = 0; i <= 32; ++i) {
      const double t = static_cast<double>(i) / 32;
      CHECK((g.map.eval(plan.path(t)) - plan.base_path(t)).norm() <= 1e-6);
      CHECK(in_tube(g, plan.path(t), 1e-5, 1e-5).inside);
    }
  }
}

TEST_CASE("task_region mirrors the base sphere regions") {
  const GermSpec g = builtin_germ("complex-z2w2");
  const TubePoint a = sample_start(g, 9);
  const RegionCheck r1 = task_region(g, a, a.fx, 1);
  CHECK(r1.member);
  CHECK(r1.margin == doctest::Approx(2.0));

  const RegionCheck anti = task_region(g, a, Eigen::VectorXd(-a.fx), 1);
  CHECK_FALSE(anti.member);

  Eigen::VectorXd off(2);
  off << 2 * g.delta, 0.0;
  CHECK_THROWS_AS(task_region(g, a, off, 1), std::invalid_argument);
}

TEST_CASE("tc_value follows the germ class") {
  CHECK(tc_value(builtin_germ("projection3to2")) == 2);
  CHECK(tc_value(builtin_germ("complex-z2w2")) == 2);
  CHECK(tc_value(builtin_germ("complex-z2w3")) == 2);
  CHECK(tc_value(builtin_germ("arrangement-braid2")) == 2);
  CHECK(tc_value(builtin_germ("arrangement-single")) == 2);

  // A real isolated singularity with p = 3 plans over S^2 and needs 3.
  std::vector<RationalPoly> comps;
  for (int i = 0; i < 3; ++i) comps.push_back(RationalPoly::variable(4, i));
  const GermSpec odd_p =
      make_germ(PolyMap(std::move(comps)), 1e-2, 0.5, GermKind::RealIsolatedSingularity, "r43");
  CHECK(tc_value(odd_p) == 3);

  std::vector<RationalPoly> comps2;
  for (int i = 0; i < 2; ++i) comps2.push_back(RationalPoly::variable(3, i));
  const GermSpec even_p =
      make_germ(PolyMap(std::move(comps2)), 1e-2, 0.5, GermKind::RealIsolatedSingularity, "r32");
  CHECK(tc_value(even_p) == 2);
}

TEST_CASE("plans never use more regions than the germ budget") {
  Rng rng(31415);
  for (const char* name : {"complex-z2w2", "arrangement-braid2"}) {
    CAPTURE(name);
    const GermSpec g = builtin_germ(name);
    const int budget = tc_value(g);
    for (int k = 0; k < 25; ++k) {
      const TubePoint a = sample_start(g, 200 + k);
      const Eigen::VectorXd A = g.delta * rng.unit_vector(2);
      const TaskPlan plan = plan_task(g, a, A, 256);
      CHECK(plan.region >= 1);
      CHECK(plan.region <= budget);
    }
  }
}

TEST_CASE("project_planner reproduces a working planner from a section") {
  const GermSpec g = builtin_germ("projection3to2");
  const SectionS1 s = build_section_s1(g, 1, 512);
  const BasePlanner planner = project_planner(g, s, 512);

  Rng rng(2025);
  for (int k = 0; k < 8; ++k) {
    const SpherePoint from(rng.unit_vector(2));
    const SpherePoint to(rng.unit_vector(2));
    const PlanResult plan = planner(from, to);

    CHECK((plan.path(0.0) - from.coords()).norm() <= 1e-9);
    CHECK((plan.path(1.0) - to.coords()).norm() <= 1e-9);
    // First half waits at the start.
    CHECK((plan.path(0.3) - from.coords()).norm() <= 1e-9);
    for (int i = 0; i <= 64; ++i) {
      const double t = static_cast<double>(i) / 64;
      CHECK(std::abs(plan.path(t).norm() - 1.0) <= 1e-5);
    }
  }
}
