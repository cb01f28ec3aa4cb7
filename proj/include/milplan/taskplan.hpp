#pragma once

#include <functional>

#include "milplan/section.hpp"
#include "milplan/sphere_planner.hpp"
#include "milplan/transport.hpp"

namespace milplan {

// Task: start at a point `a` of the tube, end anywhere over the base target
// A. The plan is the sphere-planner path between the base images, lifted
// horizontally from a.
struct TaskPlan {
  int region = 0;
  Path path;       // alpha in R^n, alpha(0) = a bitwise
  Path base_path;  // the delta-scaled sphere path alpha lifts
  TransportReport report;
};

// Sphere planner acting on the base S^{p-1}: parity of p-1 routes to the
// two-region or three-region planner. Centralized so no caller repeats the
// parity arithmetic.
PlanResult plan_base_pair(const SpherePoint& from, const SpherePoint& to);

// Membership of the task (f(a)/delta, A/delta) in region i of the base
// sphere planner.
RegionCheck task_region(const GermSpec& g, const TubePoint& a,
                        const Eigen::Ref<const Eigen::VectorXd>& A, int region);

// Plans the base move f(a) -> A with the sphere planner and lifts it from a.
TaskPlan plan_task(const GermSpec& g, const TubePoint& a,
                   const Eigen::Ref<const Eigen::VectorXd>& A, int steps = kDefaultLiftSteps);

// Region budget of the tasking planner for this germ class: 2 except for
// real isolated singularities with odd p, where the base sphere is
// even-dimensional and needs 3.
int tc_value(const GermSpec& g);

// Planner recovered on the base sphere from a cross-section: sit at b for
// the first half, then follow the projected lift from s(b) to the target.
// Demonstrates that base planning reduces to tube planning. Works on unit
// sphere points; scaling by delta is internal.
using BasePlanner = std::function<PlanResult(const SpherePoint&, const SpherePoint&)>;
BasePlanner project_planner(const GermSpec& g, const SectionS1& s, int steps = kDefaultLiftSteps);

}  // namespace milplan
