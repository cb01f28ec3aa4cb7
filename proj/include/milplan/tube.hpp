#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "milplan/germ.hpp"

namespace milplan {

// Default numeric guards for tube operations. Doubles give ~1e-12 of
// headroom; these sit an order or two above the expected accumulation.
inline constexpr double kTubeLevelTol = 1e-8;
inline constexpr double kBallSlack = 1e-9;
inline constexpr double kNewtonTol = 1e-10;
inline constexpr int kNewtonMaxIter = 50;
inline constexpr double kSigmaMin = 1e-8;

// Point of the tube: level set ||f(x)|| = delta intersected with the closed
// epsilon-ball. Carries the cached map value.
struct TubePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd fx;
};

TubePoint make_tube_point(const GermSpec& g, Eigen::VectorXd x);

struct TubeResiduals {
  double level;  // ||f(x)|| - delta
  double ball;   // ||x|| - epsilon
  bool inside;
};

TubeResiduals in_tube(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                      double level_tol = kTubeLevelTol, double ball_slack = kBallSlack);

struct ProjectOptions {
  double tol = kNewtonTol;
  int max_iter = kNewtonMaxIter;
  double sigma_min = kSigmaMin;
  double ball_slack = kBallSlack;
  // Multiplier on epsilon for the ball guard. Sampling diagnostics relax it
  // to observe where retracted points land instead of erroring out.
  double ball_factor = 1.0;
  // Trust cap on a single Newton step, as a fraction of epsilon. Near an
  // ill-conditioned Jacobian the raw minimal-norm step can overshoot onto a
  // distant sheet of the level set; capping its length keeps the retraction
  // local to the start point. Non-positive disables the cap.
  double max_step_factor = 0.25;
};

// Moves x onto the level set f = b by minimal-norm Newton steps
// x <- x - J^T (J J^T)^{-1} (f(x) - b). Every step stays in the rowspace of
// the local Jacobian, so the move is orthogonal to the fiber directions.
// Throws RankDeficiencyError, ConvergenceError, or BallExitError.
Eigen::VectorXd project_to_level(const GermSpec& g, Eigen::VectorXd x,
                                 const Eigen::Ref<const Eigen::VectorXd>& b,
                                 const ProjectOptions& opts = {});

// Smallest singular value of the p x n Jacobian at x, via the spectrum of
// J J^T.
double min_singular_value(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& x);

// Draws `count` points of the fiber over b by retracting uniform samples of
// the epsilon/2-ball. Deterministic for a fixed seed: attempt k always uses
// substream k. Throws NumericError if the success rate is too low
// (100 * count attempts).
std::vector<TubePoint> sample_fiber(const GermSpec& g, const Eigen::Ref<const Eigen::VectorXd>& b,
                                    int count, std::uint64_t seed);

struct TubeReport {
  long trials = 0;
  long successes = 0;
  double min_sigma = 0.0;      // over successful samples
  double crowding = 0.0;       // fraction of samples with ||x|| > 0.9 epsilon
  double success_rate = 0.0;
  bool pass = false;           // min_sigma >= 1e-6 and crowding < 1%
};

// Empirical sanity check of the (delta, epsilon) choice: retracts random
// draws onto the tube with a relaxed ball guard and reports how close the
// level set crowds the ball boundary and how well-conditioned the Jacobian
// stays. Report-only; never throws on bad geometry.
TubeReport check_tube(const GermSpec& g, long trials, std::uint64_t seed);

}  // namespace milplan
