#include "milplan/sphere_planner.hpp"

#include <stdexcept>

namespace milplan {

namespace {

void check_same_sphere(const SpherePoint& a, const SpherePoint& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("sphere planner: points on different spheres");
}

double margin_for(PlannerScheme scheme, int region, const SpherePoint& a, const SpherePoint& b) {
  const double dot = a.coords().dot(b.coords());
  if (scheme == PlannerScheme::TwoRegion) {
    if (region == 1) return 1.0 + dot;
    if (region == 2) return 1.0 - dot;
    throw std::invalid_argument("region_member: two-region scheme has regions 1 and 2");
  }
  const int last = a.sphere_dim();
  switch (region) {
    case 1:
      return 1.0 + dot;
    case 2:
      return std::min(1.0 - dot, 1.0 - std::abs(b[0]));
    case 3:
      return std::min(1.0 - a[last], 1.0 - b[last]);
    default:
      throw std::invalid_argument("region_member: three-region scheme has regions 1..3");
  }
}

SpherePoint normalized_polar_field(const SpherePoint& x) {
  Eigen::VectorXd w = polar_rotation_field(x);
  return SpherePoint::normalized(w);
}

// Detour through a tangent direction u at x: geodesic x -> u, then u -> y.
// Both legs have margin 1 whenever u is orthogonal to both x and y, which
// holds for the planners' uses (u = rotation field at x and y = -x).
Path tangent_detour(const SpherePoint& x, const SpherePoint& u, const SpherePoint& y) {
  return concat(geodesic_path(x, u), geodesic_path(u, y));
}

}  // namespace

RegionCheck region_member(PlannerScheme scheme, int region, const SpherePoint& a,
                          const SpherePoint& b) {
  check_same_sphere(a, b);
  const int m = a.sphere_dim();
  const bool odd = (m % 2 == 1);
  if (scheme == PlannerScheme::TwoRegion && !odd)
    throw std::invalid_argument("region_member: two-region scheme needs odd sphere dimension");
  if (scheme == PlannerScheme::ThreeRegion && odd)
    throw std::invalid_argument("region_member: three-region scheme needs even sphere dimension");
  const double margin = margin_for(scheme, region, a, b);
  return {margin > kRegionMargin, margin};
}

Path geodesic_path(const SpherePoint& a, const SpherePoint& b) {
  check_same_sphere(a, b);
  if (a.coords().dot(b.coords()) <= -1.0 + 1e-12)
    throw std::invalid_argument("geodesic_path: points are antipodal");
  const Eigen::VectorXd va = a.coords();
  const Eigen::VectorXd vb = b.coords();
  return Path::segment(va, vb, [va, vb](double t) -> Eigen::VectorXd {
    const Eigen::VectorXd mix = (1.0 - t) * va + t * vb;
    return mix / mix.norm();
  });
}

PlanResult plan_odd(const SpherePoint& a, const SpherePoint& b) {
  check_same_sphere(a, b);
  const int m = a.sphere_dim();
  if (m % 2 != 1) throw std::invalid_argument("plan_odd: sphere dimension must be odd");

  const double m1 = margin_for(PlannerScheme::TwoRegion, 1, a, b);
  if (m1 > kRegionMargin) return {1, geodesic_path(a, b), m1};

  // Antipodal case: walk to -b, then detour -b -> u -> b with u the unit
  // rotation field at -b.
  const double m2 = margin_for(PlannerScheme::TwoRegion, 2, a, b);
  const SpherePoint nb = antipode(b);
  const SpherePoint u = SpherePoint::normalized(unit_rotation_field(nb));
  Path path = concat(geodesic_path(a, nb), tangent_detour(nb, u, b));
  return {2, std::move(path), m2};
}

PlanResult plan_even(const SpherePoint& a, const SpherePoint& b) {
  check_same_sphere(a, b);
  const int m = a.sphere_dim();
  if (m % 2 != 0) throw std::invalid_argument("plan_even: sphere dimension must be even");

  const double m1 = margin_for(PlannerScheme::ThreeRegion, 1, a, b);
  if (m1 > kRegionMargin) return {1, geodesic_path(a, b), m1};

  const double m2 = margin_for(PlannerScheme::ThreeRegion, 2, a, b);
  if (m2 > kRegionMargin) {
    // a is (nearly) -b and b avoids +-e1, so the polar field at -b is usable.
    const SpherePoint nb = antipode(b);
    const SpherePoint u = normalized_polar_field(nb);
    Path path = concat(geodesic_path(a, nb), tangent_detour(nb, u, b));
    return {2, std::move(path), m2};
  }

  const double m3 = margin_for(PlannerScheme::ThreeRegion, 3, a, b);
  if (m3 > kRegionMargin) {
    // Straight line in the stereographic chart, mapped back to the sphere.
    const Eigen::VectorXd pa = stereo_to_plane(a);
    const Eigen::VectorXd pb = stereo_to_plane(b);
    Path path = Path::segment(a.coords(), b.coords(), [pa, pb](double t) -> Eigen::VectorXd {
      return stereo_from_plane((1.0 - t) * pa + t * pb).coords();
    });
    return {3, std::move(path), m3};
  }

  // Unreachable: the three regions cover S^m x S^m.
  throw std::logic_error("plan_even: no region matched");
}

PlanResult plan_sphere(const SpherePoint& a, const SpherePoint& b) {
  check_same_sphere(a, b);
  return a.sphere_dim() % 2 == 1 ? plan_odd(a, b) : plan_even(a, b);
}

}  // namespace milplan
