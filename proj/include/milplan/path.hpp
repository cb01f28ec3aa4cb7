#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

namespace milplan {

// Continuous path [0,1] -> R^k as a lazy combinator tree. Endpoints are
// stored, not recomputed: eval(0) and eval(1) return the declared endpoints
// bitwise, which lets downstream code compose paths without tolerance loss.
class Path {
 public:
  using Evaluator = std::function<Eigen::VectorXd(double)>;

  Path() = default;

  // Primitive segment. The evaluator is only consulted for t strictly inside
  // (0,1); the stored endpoints win at the boundary.
  static Path segment(Eigen::VectorXd start, Eigen::VectorXd end, Evaluator eval) {
    if (start.size() != end.size())
      throw std::invalid_argument("Path: endpoint dimensions differ");
    Path p;
    p.start_ = std::move(start);
    p.end_ = std::move(end);
    p.eval_ = std::move(eval);
    return p;
  }

  static Path constant(Eigen::VectorXd x) {
    Path p;
    p.start_ = x;
    p.end_ = x;
    p.eval_ = [x = std::move(x)](double) -> Eigen::VectorXd { return x; };
    return p;
  }

  static Path line(Eigen::VectorXd a, Eigen::VectorXd b) {
    if (a.size() != b.size()) throw std::invalid_argument("Path: endpoint dimensions differ");
    Path p;
    p.start_ = a;
    p.end_ = b;
    p.eval_ = [a = std::move(a), b = std::move(b)](double t) -> Eigen::VectorXd {
      return (1.0 - t) * a + t * b;
    };
    return p;
  }

  bool empty() const { return !eval_; }

  Eigen::VectorXd operator()(double t) const {
    if (!eval_) throw std::logic_error("Path: evaluating a default-constructed path");
    if (t <= 0.0) return start_;
    if (t >= 1.0) return end_;
    return eval_(t);
  }

  const Eigen::VectorXd& start() const { return start_; }
  const Eigen::VectorXd& end() const { return end_; }
  Eigen::Index dim() const { return start_.size(); }

 private:
  Eigen::VectorXd start_;
  Eigen::VectorXd end_;
  Evaluator eval_;
};

// Uniform two-half concatenation; the junction t = 1/2 takes the first
// path's value. Requires the endpoints to meet within tol.
inline Path concat(const Path& a, const Path& b, double tol = 1e-9) {
  if (a.dim() != b.dim()) throw std::invalid_argument("concat: path dimensions differ");
  if ((a.end() - b.start()).norm() > tol)
    throw std::invalid_argument("concat: paths do not meet at the junction");
  return Path::segment(a.start(), b.end(), [a, b](double t) -> Eigen::VectorXd {
    return t <= 0.5 ? a(2.0 * t) : b(2.0 * t - 1.0);
  });
}

inline Path reverse(const Path& a) {
  return Path::segment(a.end(), a.start(), [a](double t) -> Eigen::VectorXd { return a(1.0 - t); });
}

// Precomposition with a time warp w: [0,1] -> [0,1], w(0)=0, w(1)=1.
inline Path reparam(const Path& a, std::function<double(double)> w) {
  if (std::abs(w(0.0)) > 1e-12 || std::abs(w(1.0) - 1.0) > 1e-12)
    throw std::invalid_argument("reparam: warp must fix the endpoints");
  return Path::segment(a.start(), a.end(),
                       [a, w = std::move(w)](double t) -> Eigen::VectorXd { return a(w(t)); });
}

}  // namespace milplan
