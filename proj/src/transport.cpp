#include "milplan/transport.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "milplan/errors.hpp"

namespace milplan {

namespace {

// Tighter than the public projection tolerance: node corrections must not
// floor the RK4 convergence order that tests measure.
constexpr double kLiftNewtonTol = 1e-13;
// Fixed stencil width for base velocities. Tying it to the step size would
// degrade the effective integrator order.
constexpr double kVelocityStencil = 1e-6;

Eigen::VectorXd base_velocity(const Path& base, double t) {
  const double h = kVelocityStencil;
  if (t >= h && t <= 1.0 - h) return (base(t + h) - base(t - h)) / (2.0 * h);
  if (t < h)  // second-order one-sided stencil at the start
    return (-3.0 * base(t) + 4.0 * base(t + h) - base(t + 2.0 * h)) / (2.0 * h);
  return (3.0 * base(t) - 4.0 * base(t - h) + base(t - 2.0 * h)) / (2.0 * h);
}

struct LiftData {
  GermSpec germ;
  Path base;
  std::vector<Eigen::VectorXd> nodes;
  int steps;
};

// Horizontal field at (t, x): the unique rowspace solution of J xdot = bdot.
Eigen::VectorXd horizontal_field(const GermSpec& g, const Path& base, double t,
                                 const Eigen::VectorXd& x, Eigen::MatrixXd& J) {
  g.map.jacobian_into(x, J);
  const Eigen::MatrixXd jjt = J * J.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(jjt);
  const double lambda = eigs.eigenvalues().minCoeff();
  if (lambda < kSigmaMin * kSigmaMin)
    throw RankDeficiencyError("horizontal_lift: Jacobian near rank-deficient at t = " +
                              std::to_string(t));
  return J.transpose() * jjt.ldlt().solve(base_velocity(base, t));
}

}  // namespace

LiftResult horizontal_lift(const GermSpec& g, const Path& base, const TubePoint& x0, int steps) {
  if (steps < 1) throw std::invalid_argument("horizontal_lift: steps must be >= 1");
  if (base.dim() != g.map.codomain_dim())
    throw std::invalid_argument("horizontal_lift: base path lives in the wrong space");
  if (x0.x.size() != g.map.domain_dim())
    throw std::invalid_argument("horizontal_lift: start point has wrong dimension");
  if ((g.map.eval(x0.x) - base.start()).norm() > kTubeLevelTol)
    throw std::invalid_argument("horizontal_lift: start point does not sit over base(0)");

  const double dt = 1.0 / static_cast<double>(steps);
  const double ball_limit = g.epsilon + kBallSlack;

  ProjectOptions correct;
  correct.tol = kLiftNewtonTol;

  auto data = std::make_shared<LiftData>(LiftData{g, base, {}, steps});
  data->nodes.reserve(static_cast<std::size_t>(steps) + 1);
  data->nodes.push_back(x0.x);

  TransportReport report;
  report.steps = steps;

  Eigen::MatrixXd J(g.map.codomain_dim(), g.map.domain_dim());
  Eigen::VectorXd x = x0.x;
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Eigen::VectorXd k1 = horizontal_field(g, base, t, x, J);
    const Eigen::VectorXd k2 = horizontal_field(g, base, t + 0.5 * dt, x + 0.5 * dt * k1, J);
    const Eigen::VectorXd k3 = horizontal_field(g, base, t + 0.5 * dt, x + 0.5 * dt * k2, J);
    const Eigen::VectorXd k4 = horizontal_field(g, base, t + dt, x + dt * k3, J);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t_next = (k + 1 == steps) ? 1.0 : (k + 1) * dt;
    try {
      x = project_to_level(g, std::move(x), data->base(t_next), correct);
    } catch (const NumericError& e) {
      throw ConvergenceError("horizontal_lift: correction failed at t = " +
                             std::to_string(t_next) + ": " + e.what());
    }

    const double norm = x.norm();
    if (norm > ball_limit)
      throw BallExitError("horizontal_lift: left the ball at t = " + std::to_string(t_next) +
                          " (radius " + std::to_string(norm) + ")");
    report.max_ball_excess = std::max(report.max_ball_excess, norm - g.epsilon);
    report.max_level_residual =
        std::max(report.max_level_residual, (g.map.eval(x) - data->base(t_next)).norm());
    data->nodes.push_back(x);
  }
  if (report.max_ball_excess < 0.0) report.max_ball_excess = 0.0;

  report.endpoint = TubePoint{data->nodes.back(), g.map.eval(data->nodes.back())};

  // Between nodes: linear interpolation re-projected onto the exact level at
  // the queried parameter. Node parameters reproduce the nodes bitwise (the
  // projection returns immediately when the residual is already inside
  // tolerance).
  ProjectOptions eval_opts;  // public tolerance is fine for queries
  Path path = Path::segment(
      data->nodes.front(), data->nodes.back(),
      [data, eval_opts](double t) -> Eigen::VectorXd {
        const double u = t * data->steps;
        const int k = std::min(static_cast<int>(u), data->steps - 1);
        const double frac = u - k;
        Eigen::VectorXd guess =
            (1.0 - frac) * data->nodes[static_cast<std::size_t>(k)] +
            frac * data->nodes[static_cast<std::size_t>(k) + 1];
        return project_to_level(data->germ, std::move(guess), data->base(t), eval_opts);
      });

  return LiftResult{std::move(path), std::move(report)};
}

Path circle_path(double delta, int direction) {
  if (!(delta > 0.0)) throw std::invalid_argument("circle_path: delta must be positive");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("circle_path: direction must be +1 or -1");
  Eigen::VectorXd b0(2);
  b0 << delta, 0.0;
  const double w = 2.0 * M_PI * direction;
  return Path::segment(b0, b0, [delta, w](double t) -> Eigen::VectorXd {
    Eigen::VectorXd b(2);
    b << delta * std::cos(w * t), delta * std::sin(w * t);
    return b;
  });
}

Path arc_path(double delta, double theta) {
  if (!(delta > 0.0)) throw std::invalid_argument("arc_path: delta must be positive");
  Eigen::VectorXd b0(2), b1(2);
  b0 << delta, 0.0;
  b1 << delta * std::cos(theta), delta * std::sin(theta);
  return Path::segment(b0, b1, [delta, theta](double t) -> Eigen::VectorXd {
    Eigen::VectorXd b(2);
    b << delta * std::cos(theta * t), delta * std::sin(theta * t);
    return b;
  });
}

TransportReport monodromy(const GermSpec& g, const TubePoint& x0, int direction, int steps) {
  if (g.map.codomain_dim() != 2)
    throw std::invalid_argument("monodromy: base circle requires p = 2");
  return horizontal_lift(g, circle_path(g.delta, direction), x0, steps).report;
}

TubePoint parallel_transport(const GermSpec& g, const Path& arc, const TubePoint& x, int steps) {
  return horizontal_lift(g, arc, x, steps).report.endpoint;
}

}  // namespace milplan
