#include "milplan/section.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "milplan/errors.hpp"
#include "milplan/rng.hpp"
#include "milplan/sphere_planner.hpp"

namespace milplan {

namespace {

constexpr int kFiberRetries = 20;
constexpr int kSegmentChecks = 33;  // validation samples per segment
constexpr int kMinArcSteps = 8;

// Straight segment retracted onto the fiber pointwise. Endpoints are stored
// exactly; interior points are Newton projections of the interpolant.
Path projected_segment(const GermSpec& g, const Eigen::VectorXd& b, const Eigen::VectorXd& xa,
                       const Eigen::VectorXd& xb) {
  return Path::segment(xa, xb, [g, b, xa, xb](double t) -> Eigen::VectorXd {
    Eigen::VectorXd guess = (1.0 - t) * xa + t * xb;
    return project_to_level(g, std::move(guess), b);
  });
}

// Evaluates the candidate path at a sample grid; any projection failure or
// loose residual disqualifies it.
bool segment_chain_valid(const GermSpec& g, const Eigen::VectorXd& b, const Path& path) {
  for (int i = 0; i < kSegmentChecks; ++i) {
    const double t = static_cast<double>(i) / (kSegmentChecks - 1);
    try {
      const Eigen::VectorXd x = path(t);
      if ((g.map.eval(x) - b).norm() > 1e-6) return false;
      if (x.norm() > g.epsilon + kBallSlack) return false;
    } catch (const NumericError&) {
      return false;
    }
  }
  return true;
}

// Step budget for a partial arc: proportional share of the full-circle
// budget, floored so short arcs never degenerate.
int arc_step_count(int full_circle_steps, double angle_fraction) {
  const int scaled = static_cast<int>(std::ceil(full_circle_steps * std::abs(angle_fraction)));
  return std::max(kMinArcSteps, scaled);
}

}  // namespace

Path fiber_path(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& b,
                const TubePoint& x_start, const TubePoint& x_end, int waypoints,
                std::uint64_t seed) {
  if (waypoints < 1) throw std::invalid_argument("fiber_path: waypoints must be >= 1");
  if ((x_start.fx - b).norm() > kTubeLevelTol || (x_end.fx - b).norm() > kTubeLevelTol)
    throw std::invalid_argument("fiber_path: endpoints are not on the fiber over b");

  if ((x_start.x - x_end.x).norm() == 0.0) return Path::constant(x_start.x);

  // First try the direct projected segment.
  {
    Path direct = projected_segment(g, Eigen::VectorXd(b), x_start.x, x_end.x);
    if (segment_chain_valid(g, b, direct)) return direct;
  }

  // Fallback: route through randomized fiber waypoints near the segment,
  // widening the perturbation as attempts fail.
  const double span = (x_end.x - x_start.x).norm();
  const Eigen::VectorXd target = b;
  for (int attempt = 0; attempt < kFiberRetries; ++attempt) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(attempt)));
    const double scale = (0.25 + 0.75 * static_cast<double>(attempt) / kFiberRetries) *
                         std::max(span, g.epsilon / 4.0);
    std::vector<Eigen::VectorXd> nodes;
    nodes.push_back(x_start.x);
    bool ok = true;
    for (int w = 1; w <= waypoints && ok; ++w) {
      const double t = static_cast<double>(w) / (waypoints + 1);
      Eigen::VectorXd guess = (1.0 - t) * x_start.x + t * x_end.x +
                              scale * rng.gaussian_vector(g.map.domain_dim());
      try {
        nodes.push_back(project_to_level(g, std::move(guess), target));
      } catch (const NumericError&) {
        ok = false;
      }
    }
    if (!ok) continue;
    nodes.push_back(x_end.x);

    Path chain = projected_segment(g, target, nodes[0], nodes[1]);
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i)
      chain = concat(chain, projected_segment(g, target, nodes[i], nodes[i + 1]));
    if (segment_chain_valid(g, target, chain)) return chain;
  }
  throw FiberPathError("fiber_path: no valid in-fiber path after " +
                       std::to_string(kFiberRetries) + " attempts");
}

SectionS1 build_section_s1(const GermSpec& g, std::uint64_t seed, int steps) {
  if (g.map.codomain_dim() != 2)
    throw std::invalid_argument("build_section_s1: requires p = 2");

  Eigen::VectorXd b0(2);
  b0 << g.delta, 0.0;

  const TubePoint x0 = sample_fiber(g, b0, 1, substream_seed(seed, 1))[0];

  // Reverse transport around the circle: y is the point the forward loop
  // carries back onto x0.
  const TubePoint y = parallel_transport(g, circle_path(g.delta, -1), x0, steps);

  Path beta = fiber_path(g, b0, x0, y, 8, substream_seed(seed, 2));

  return SectionS1{g, x0, std::move(beta), steps, Eigen::VectorXd()};
}

Eigen::VectorXd SectionS1::eval(double theta) const {
  const double two_pi = 2.0 * M_PI;
  if (theta < 0.0) theta = 0.0;
  if (theta > two_pi) theta = two_pi;

  Eigen::VectorXd value;
  if (theta == 0.0) {
    value = beta.start();
  } else {
    const Eigen::VectorXd start = beta(theta / two_pi);
    const TubePoint from{start, germ.map.eval(start)};
    const Path arc = arc_path(germ.delta, theta);
    value = parallel_transport(germ, arc, from, arc_step_count(steps, theta / two_pi)).x;
  }
  if (offset.size() > 0) value += offset;
  return value;
}

Path SectionS1::as_path() const {
  const double two_pi = 2.0 * M_PI;
  SectionS1 copy = *this;
  return Path::segment(eval(0.0), eval(two_pi), [copy, two_pi](double t) -> Eigen::VectorXd {
    return copy.eval(two_pi * t);
  });
}

SectionCheck verify_section(const GermSpec& g, const SectionS1& s, int samples) {
  if (samples < 2) throw std::invalid_argument("verify_section: need at least 2 samples");
  const double two_pi = 2.0 * M_PI;
  SectionCheck check;
  for (int i = 0; i < samples; ++i) {
    const double theta = two_pi * static_cast<double>(i) / (samples - 1);
    Eigen::VectorXd b(2);
    b << g.delta * std::cos(theta), g.delta * std::sin(theta);
    const double residual = (g.map.eval(s.eval(theta)) - b).norm();
    check.max_residual = std::max(check.max_residual, residual);
  }
  check.closure_defect = (s.eval(0.0) - s.eval(two_pi)).norm();
  return check;
}

namespace {

// Geodesic between two points of the delta-sphere (computed on the unit
// sphere, scaled back). Used for meridians.
Path scaled_geodesic(double delta, const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
  const SpherePoint a = SpherePoint::normalized(from);
  const SpherePoint b = SpherePoint::normalized(to);
  const Path geo = geodesic_path(a, b);
  return Path::segment(from, to,
                       [geo, delta](double t) -> Eigen::VectorXd { return delta * geo(t); });
}

}  // namespace

Eigen::VectorXd RadialSection::eval(const Eigen::Ref<const Eigen::VectorXd>& b) const {
  if (b.size() != pole.size())
    throw std::invalid_argument("RadialSection: point has wrong dimension");
  if (std::abs(b.norm() - germ.delta) > kTubeLevelTol)
    throw std::invalid_argument("RadialSection: point is not on the delta-sphere");
  const double cosang = pole.dot(b) / (pole.norm() * b.norm());
  if (cosang <= -1.0 + 1e-12)
    throw std::invalid_argument("RadialSection: point is antipodal to the pole");
  if ((b - pole).norm() == 0.0) return base.x;

  const Path meridian = scaled_geodesic(germ.delta, pole, b);
  const double angle = std::acos(std::min(1.0, std::max(-1.0, cosang)));
  return parallel_transport(germ, meridian, base, arc_step_count(steps, angle / (2.0 * M_PI))).x;
}

RadialSectionResult radial_section(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& pole,
                                   const TubePoint& x0, int steps) {
  const int p = g.map.codomain_dim();
  if (p < 3) throw std::invalid_argument("radial_section: requires p >= 3");
  if (std::abs(pole.norm() - g.delta) > kTubeLevelTol)
    throw std::invalid_argument("radial_section: pole is not on the delta-sphere");
  if ((x0.fx - pole).norm() > kTubeLevelTol)
    throw std::invalid_argument("radial_section: x0 does not sit over the pole");

  RadialSection s{g, pole, x0, steps};

  // Closure defect: sample a small circle of angular radius r around the
  // antipodal pole, pull every section value back along the circle to the
  // reference angle, and compare. The O(r) motion of the section across base
  // points cancels; what is left is the transport holonomy that obstructs
  // extending the meridian section over the missing pole.
  const double r = 0.1;
  const int circle_samples = 8;
  const double delta = g.delta;
  const Eigen::VectorXd axis = (-pole / pole.norm()).eval();

  // Orthonormal pair spanning the circle plane, orthogonal to the axis.
  Eigen::VectorXd u = Eigen::VectorXd::Unit(p, 0) - axis[0] * axis;
  if (u.norm() < 0.5) u = Eigen::VectorXd::Unit(p, 1) - axis[1] * axis;
  u.normalize();
  Eigen::VectorXd v = Eigen::VectorXd::Unit(p, p - 1);
  v = v - v.dot(axis) * axis - v.dot(u) * u;
  if (v.norm() < 1e-8) {
    v = Eigen::VectorXd::Unit(p, p - 2);
    v = v - v.dot(axis) * axis - v.dot(u) * u;
  }
  v.normalize();

  auto circle_point = [delta, r, axis, u, v](double phi) -> Eigen::VectorXd {
    return delta * (std::cos(r) * axis + std::sin(r) * (std::cos(phi) * u + std::sin(phi) * v));
  };

  const Eigen::VectorXd c0 = circle_point(0.0);
  const Eigen::VectorXd s0 = s.eval(c0);
  double defect = 0.0;
  for (int j = 1; j < circle_samples; ++j) {
    const double phi = 2.0 * M_PI * static_cast<double>(j) / circle_samples;
    const Eigen::VectorXd cj = circle_point(phi);
    const Eigen::VectorXd sj = s.eval(cj);

    Path back = Path::segment(cj, c0, [circle_point, phi](double t) -> Eigen::VectorXd {
      return circle_point(phi * (1.0 - t));
    });
    const TubePoint from{sj, g.map.eval(sj)};
    const Eigen::VectorXd pulled =
        parallel_transport(g, back, from, arc_step_count(steps, r * phi / (2.0 * M_PI))).x;
    defect = std::max(defect, (pulled - s0).norm());
  }
  return RadialSectionResult{std::move(s), defect};
}

}  // namespace milplan
