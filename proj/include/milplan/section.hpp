#pragma once

#include <cstdint>

#include "milplan/sphere.hpp"
#include "milplan/transport.hpp"

namespace milplan {

// Path inside the fiber over b from x_start to x_end. Strategy: project the
// straight segment pointwise onto the fiber; if any sample fails to retract,
// retry with `waypoints` randomized intermediate fiber points (up to 20
// seeded attempts). Throws FiberPathError when no attempt validates.
Path fiber_path(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& b,
                const TubePoint& x_start, const TubePoint& x_end, int waypoints = 8,
                std::uint64_t seed = 0);

// Cross-section of the tube fibration over the base circle (p = 2).
// Construction: let M be the transport around the full circle. Join x0 to
// its reverse-transport image y = M^{-1}(x0) by a path beta inside the fiber;
// then s(theta) = transport of beta(theta / 2pi) along the arc [0, theta].
// At theta = 2pi this transports y forward around the whole loop, landing
// back at x0 up to integration error, so the section closes.
struct SectionS1 {
  GermSpec germ;
  TubePoint base;  // x0 over (delta, 0)
  Path beta;       // in-fiber path x0 -> reverse-transport of x0
  int steps = kDefaultLiftSteps;  // transport resolution for the full circle
  // Verification hook: when nonempty, added to every value so suites can
  // exercise their off-fiber detection. Zero-size means no offset.
  Eigen::VectorXd offset;

  // theta in [0, 2pi]; values outside are clamped.
  Eigen::VectorXd eval(double theta) const;

  // The section as a path, t in [0,1] mapped to theta = 2 pi t.
  Path as_path() const;
};

SectionS1 build_section_s1(const GermSpec& g, std::uint64_t seed, int steps = kDefaultLiftSteps);

struct SectionCheck {
  double max_residual = 0.0;    // max over samples of ||f(s(theta)) - b(theta)||
  double closure_defect = 0.0;  // ||s(0) - s(2pi)||
};

SectionCheck verify_section(const GermSpec& g, const SectionS1& s, int samples = 360);

// Partial section for p >= 3: transports x0 from its pole along meridians.
// Continuous away from the antipodal pole; the construction does not attempt
// the closing there, it only measures the obstruction.
struct RadialSection {
  GermSpec germ;
  Eigen::VectorXd pole;  // on the delta-sphere in R^p
  TubePoint base;        // x0 over the pole
  int steps = kDefaultLiftSteps;

  // b on the delta-sphere, not antipodal to the pole.
  Eigen::VectorXd eval(const Eigen::Ref<const Eigen::VectorXd>& b) const;
};

struct RadialSectionResult {
  RadialSection section;
  // Holonomy spread on a small circle around the antipodal pole: each value
  // s(c(phi)) is transported back along the circle to c(0) and compared with
  // s(c(0)). Near zero exactly when the meridian section extends across the
  // missing pole.
  double closure_defect = 0.0;
};

RadialSectionResult radial_section(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& pole,
                                   const TubePoint& x0, int steps = kDefaultLiftSteps);

}  // namespace milplan
