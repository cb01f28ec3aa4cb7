#include "milplan/taskplan.hpp"

#include <cmath>
#include <stdexcept>

namespace milplan {

namespace {

void check_target(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& A) {
  if (A.size() != g.map.codomain_dim())
    throw std::invalid_argument("task: target has wrong dimension");
  if (std::abs(A.norm() - g.delta) > 1e-9)
    throw std::invalid_argument("task: target is not on the delta-sphere");
}

}  // namespace

PlanResult plan_base_pair(const SpherePoint& from, const SpherePoint& to) {
  // S^{p-1} is odd-dimensional exactly when p is even; plan_sphere picks the
  // matching planner from the point dimension.
  return plan_sphere(from, to);
}

RegionCheck task_region(const GermSpec& g, const TubePoint& a,
                        const Eigen::Ref<const Eigen::VectorXd>& A, int region) {
  check_target(g, A);
  const SpherePoint from = SpherePoint::normalized(a.fx);
  const SpherePoint to = SpherePoint::normalized(A);
  const int m = from.sphere_dim();
  const PlannerScheme scheme =
      (m % 2 == 1) ? PlannerScheme::TwoRegion : PlannerScheme::ThreeRegion;
  return region_member(scheme, region, from, to);
}

TaskPlan plan_task(const GermSpec& g, const TubePoint& a,
                   const Eigen::Ref<const Eigen::VectorXd>& A, int steps) {
  check_target(g, A);
  if (!in_tube(g, a.x).inside) throw std::invalid_argument("plan_task: start point is not in the tube");

  const SpherePoint from = SpherePoint::normalized(a.fx);
  const SpherePoint to = SpherePoint::normalized(A);
  PlanResult base = plan_base_pair(from, to);

  // Scale the unit-sphere path onto the delta-sphere; the lift starts at a,
  // whose image is within the tube level tolerance of base(0).
  const double delta = g.delta;
  const Path unit_path = base.path;
  Path scaled = Path::segment(delta * unit_path.start(), delta * unit_path.end(),
                              [unit_path, delta](double t) -> Eigen::VectorXd {
                                return delta * unit_path(t);
                              });

  LiftResult lift = horizontal_lift(g, scaled, a, steps);

  TaskPlan plan;
  plan.region = base.region;
  plan.path = std::move(lift.path);
  plan.base_path = std::move(scaled);
  plan.report = std::move(lift.report);
  return plan;
}

int tc_value(const GermSpec& g) {
  switch (g.kind) {
    case GermKind::TrivialProjection:
    case GermKind::ComplexHolomorphic:
    case GermKind::Arrangement:
      return 2;
    case GermKind::RealIsolatedSingularity:
      return g.map.codomain_dim() % 2 == 0 ? 2 : 3;
  }
  throw std::invalid_argument("tc_value: unknown germ kind");
}

BasePlanner project_planner(const GermSpec& g, const SectionS1& s, int steps) {
  if (g.map.codomain_dim() != 2)
    throw std::invalid_argument("project_planner: requires p = 2");
  GermSpec germ = g;
  SectionS1 section = s;
  return [germ, section, steps](const SpherePoint& b, const SpherePoint& b2) -> PlanResult {
    if (b.ambient_dim() != 2 || b2.ambient_dim() != 2)
      throw std::invalid_argument("project_planner: base points must lie on S^1");

    // Section value over b: the section is parametrized by angle.
    double theta = std::atan2(b[1], b[0]);
    if (theta < 0.0) theta += 2.0 * M_PI;
    const Eigen::VectorXd e = section.eval(theta);

    TubePoint start{e, germ.map.eval(e)};
    const Eigen::VectorXd target = germ.delta * b2.coords();
    TaskPlan task = plan_task(germ, start, target, steps);
    const double margin = task_region(germ, start, target, task.region).margin;

    // First half: wait at b. Second half: watch the lifted move from above.
    const Eigen::VectorXd vb = b.coords();
    const Path alpha = task.path;
    const GermSpec inner = germ;
    Path out = Path::segment(vb, b2.coords(), [vb, alpha, inner](double t) -> Eigen::VectorXd {
      if (t <= 0.5) return vb;
      const Eigen::VectorXd fx = inner.map.eval(alpha(2.0 * t - 1.0));
      return fx / fx.norm();
    });
    return PlanResult{task.region, std::move(out), margin};
  };
}

}  // namespace milplan
