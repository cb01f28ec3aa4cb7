#pragma once

#include "milplan/path.hpp"
#include "milplan/sphere.hpp"

namespace milplan {

// Two-region planners exist exactly on odd-dimensional spheres, three-region
// planners on even-dimensional ones; the counts match the spheres' motion
// planning complexity.
enum class PlannerScheme { TwoRegion, ThreeRegion };

struct RegionCheck {
  bool member;
  double margin;  // positive depth inside the region, <= 0 outside
};

// Membership threshold: a pair belongs to a region iff its margin exceeds
// this.
inline constexpr double kRegionMargin = 1e-12;

// Margined membership test for region i (1-based) of the given scheme.
// TwoRegion regions: 1 = non-antipodal pairs, 2 = non-equal pairs.
// ThreeRegion regions: 1 = non-antipodal, 2 = non-equal with b away from
// +-e1, 3 = both points away from the north pole.
RegionCheck region_member(PlannerScheme scheme, int region, const SpherePoint& a,
                          const SpherePoint& b);

// Normalized linear interpolation from a to b; the shared first rule of every
// planner. Requires the pair to be non-antipodal.
Path geodesic_path(const SpherePoint& a, const SpherePoint& b);

struct PlanResult {
  int region;
  Path path;
  double margin;
};

// Planner on S^m, m odd: geodesic where possible, otherwise a detour through
// the unit rotation field at the antipode.
PlanResult plan_odd(const SpherePoint& a, const SpherePoint& b);

// Planner on S^m, m even: geodesic, then a detour through the normalized
// polar rotation field, then a straight line in the stereographic chart for
// the pairs the first two regions miss.
PlanResult plan_even(const SpherePoint& a, const SpherePoint& b);

// Dispatches on the parity of the sphere dimension.
PlanResult plan_sphere(const SpherePoint& a, const SpherePoint& b);

}  // namespace milplan
