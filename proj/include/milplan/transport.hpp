#pragma once

#include <cstdint>

#include "milplan/path.hpp"
#include "milplan/tube.hpp"

namespace milplan {

inline constexpr int kDefaultLiftSteps = 2048;

struct TransportReport {
  TubePoint endpoint;
  double max_level_residual = 0.0;  // worst ||f(x(t_k)) - base(t_k)|| at accepted nodes
  double max_ball_excess = 0.0;     // worst max(0, ||x|| - epsilon)
  int steps = 0;
};

struct LiftResult {
  Path path;  // alpha: [0,1] -> R^n with alpha(0) = x0 bitwise
  TransportReport report;
};

// Integrates the horizontal lift of `base` (a path on the delta-sphere in
// R^p) starting at x0. Velocity field: xdot = J^T (J J^T)^{-1} bdot, i.e. the
// unique tangent in the rowspace of J projecting onto the base velocity.
// RK4 with `steps` steps, each followed by a Newton re-projection onto the
// exact level f = base(t). The returned path stores the corrected nodes and
// re-projects linear interpolants between them on evaluation, so sampled
// points track the base within the projection tolerance everywhere.
LiftResult horizontal_lift(const GermSpec& g, const Path& base, const TubePoint& x0,
                           int steps = kDefaultLiftSteps);

// Base circle t -> delta(cos(2 pi dir t), sin(2 pi dir t)) with exact stored
// endpoints (delta, 0). Only meaningful for p = 2.
Path circle_path(double delta, int direction = +1);

// Circular arc from angle 0 to theta (radians, may be negative) on the
// delta-circle.
Path arc_path(double delta, double theta);

// Transport of x0 around the full base circle; direction +1 is the
// counterclockwise loop (delta cos, delta sin). Requires p = 2.
TransportReport monodromy(const GermSpec& g, const TubePoint& x0, int direction = +1,
                          int steps = kDefaultLiftSteps);

// Endpoint of the horizontal lift of `arc` starting at x.
TubePoint parallel_transport(const GermSpec& g, const Path& arc, const TubePoint& x,
                             int steps = kDefaultLiftSteps);

}  // namespace milplan
