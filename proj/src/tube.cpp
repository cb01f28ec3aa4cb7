#include "milplan/tube.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "milplan/errors.hpp"
#include "milplan/rng.hpp"

namespace milplan {

TubePoint make_tube_point(const GermSpec& g, Eigen::VectorXd x) {
  const TubeResiduals r = in_tube(g, x);
  if (!r.inside)
    throw std::invalid_argument("make_tube_point: point violates tube tolerances (level " +
                                std::to_string(r.level) + ", ball " + std::to_string(r.ball) + ")");
  Eigen::VectorXd fx = g.map.eval(x);
  return TubePoint{std::move(x), std::move(fx)};
}

TubeResiduals in_tube(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                      double level_tol, double ball_slack) {
  if (x.size() != g.map.domain_dim())
    throw std::invalid_argument("in_tube: point has wrong dimension");
  const double level = g.map.eval(x).norm() - g.delta;
  const double ball = x.norm() - g.epsilon;
  const bool inside = std::abs(level) <= level_tol && ball <= ball_slack;
  return {level, ball, inside};
}

namespace {

// Solves (J J^T) y = r for the minimal-norm correction J^T y, guarding the
// smallest eigenvalue of J J^T against rank loss. Shared by Newton and the
// sigma estimate.
struct NormalSystem {
  Eigen::MatrixXd jjt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs;

  explicit NormalSystem(const Eigen::MatrixXd& J) : jjt(J * J.transpose()), eigs(jjt) {}

  double sigma_min() const {
    const double lambda = eigs.eigenvalues().minCoeff();
    return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
};

}  // namespace

double min_singular_value(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return NormalSystem(g.map.jacobian(x)).sigma_min();
}

Eigen::VectorXd project_to_level(const GermSpec& g, Eigen::VectorXd x,
                                 const Eigen::Ref<const Eigen::VectorXd>& b,
                                 const ProjectOptions& opts) {
  if (x.size() != g.map.domain_dim())
    throw std::invalid_argument("project_to_level: point has wrong dimension");
  if (b.size() != g.map.codomain_dim())
    throw std::invalid_argument("project_to_level: target has wrong dimension");

  const double ball_limit = g.epsilon * opts.ball_factor + opts.ball_slack;
  const double step_cap = opts.max_step_factor > 0.0 ? opts.max_step_factor * g.epsilon : 0.0;
  Eigen::VectorXd fx(g.map.codomain_dim());
  Eigen::MatrixXd J(g.map.codomain_dim(), g.map.domain_dim());

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    g.map.eval_into(x, fx);
    const Eigen::VectorXd r = fx - b;
    if (r.norm() <= opts.tol) return x;

    g.map.jacobian_into(x, J);
    NormalSystem sys(J);
    if (sys.sigma_min() < opts.sigma_min)
      throw RankDeficiencyError("project_to_level: Jacobian near rank-deficient (sigma " +
                                std::to_string(sys.sigma_min()) + ")");
    Eigen::VectorXd step = J.transpose() * sys.jjt.ldlt().solve(r);
    const double step_norm = step.norm();
    if (step_cap > 0.0 && step_norm > step_cap) step *= step_cap / step_norm;
    x -= step;
    if (x.norm() > ball_limit)
      throw BallExitError("project_to_level: iterate left the ball (radius " +
                          std::to_string(x.norm()) + ")");
  }
  g.map.eval_into(x, fx);
  if ((fx - b).norm() <= opts.tol) return x;
  throw ConvergenceError("project_to_level: no convergence in " + std::to_string(opts.max_iter) +
                         " iterations (residual " + std::to_string((fx - b).norm()) + ")");
}

std::vector<TubePoint> sample_fiber(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& b,
                                    int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_fiber: negative count");
  if (b.size() != g.map.codomain_dim())
    throw std::invalid_argument("sample_fiber: target has wrong dimension");
  if (std::abs(b.norm() - g.delta) > kTubeLevelTol)
    throw std::invalid_argument("sample_fiber: target is not on the delta-sphere");

  std::vector<TubePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 0) return out;

  const long max_attempts = 100L * count;
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count;
       ++attempt) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::VectorXd draw = rng.ball_point(g.map.domain_dim(), g.epsilon / 2.0);
    try {
      Eigen::VectorXd x = project_to_level(g, std::move(draw), b);
      out.push_back(make_tube_point(g, std::move(x)));
    } catch (const NumericError&) {
      continue;  // retry with the next substream
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw NumericError("sample_fiber: only " + std::to_string(out.size()) + " of " +
                       std::to_string(count) + " draws retracted onto the fiber");
  return out;
}

TubeReport check_tube(const GermSpec& g, long trials, std::uint64_t seed) {
  if (trials < 0) throw std::invalid_argument("check_tube: negative trials");
  TubeReport report;
  report.trials = trials;

  const int n = g.map.domain_dim();
  const int p = g.map.codomain_dim();
  double min_sigma = std::numeric_limits<double>::infinity();
  long crowded = 0;

  ProjectOptions relaxed;
  relaxed.ball_factor = 10.0;  // let retractions land where they will

  for (long k = 0; k < trials; ++k) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(k)));
    const Eigen::VectorXd b = g.delta * rng.unit_vector(p);
    Eigen::VectorXd draw = rng.ball_point(n, g.epsilon / 2.0);
    Eigen::VectorXd x;
    try {
      x = project_to_level(g, std::move(draw), b, relaxed);
    } catch (const NumericError&) {
      continue;
    }
    ++report.successes;
    min_sigma = std::min(min_sigma, min_singular_value(g, x));
    if (x.norm() > 0.9 * g.epsilon) ++crowded;
  }

  if (report.successes > 0) {
    report.min_sigma = min_sigma;
    report.crowding = static_cast<double>(crowded) / static_cast<double>(report.successes);
    report.success_rate = static_cast<double>(report.successes) / static_cast<double>(trials);
  }
  report.pass = report.successes > 0 && report.min_sigma >= 1e-6 && report.crowding < 0.01;
  return report;
}

}  // namespace milplan
