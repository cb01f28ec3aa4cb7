#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "milplan/path.hpp"

namespace milplan {

// Point on the unit sphere S^m in R^{m+1}. The constructor enforces the unit
// norm up to 1e-12; use normalized() for vectors that are only approximately
// unit.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw std::invalid_argument("SpherePoint: need at least 2 coordinates");
    if (std::abs(coords_.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("SpherePoint: vector is not unit length");
  }

  static SpherePoint normalized(const Eigen::VectorXd& v) {
    const double n = v.norm();
    if (n < 1e-14) throw std::invalid_argument("SpherePoint: cannot normalize near-zero vector");
    return SpherePoint(Eigen::VectorXd(v / n));
  }

  const Eigen::VectorXd& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  int sphere_dim() const { return ambient_dim() - 1; }
  double operator[](int i) const { return coords_[i]; }

 private:
  Eigen::VectorXd coords_;
};

inline SpherePoint antipode(const SpherePoint& x) {
  return SpherePoint(Eigen::VectorXd(-x.coords()));
}

inline SpherePoint north_pole(int m) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m + 1);
  v[m] = 1.0;
  return SpherePoint(std::move(v));
}

inline SpherePoint basis_point(int m, int axis) {
  if (axis < 0 || axis > m) throw std::invalid_argument("basis_point: axis out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m + 1);
  v[axis] = 1.0;
  return SpherePoint(std::move(v));
}

// Unit tangent field on S^m for odd m: pairs consecutive coordinates as
// (x, y) -> (-y, x). Nowhere zero, always orthogonal to x, and unit length
// on the sphere.
inline Eigen::VectorXd unit_rotation_field(const SpherePoint& x) {
  const int dim = x.ambient_dim();
  if (dim % 2 != 0)
    throw std::invalid_argument("unit_rotation_field: needs odd sphere dimension");
  Eigen::VectorXd out(dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    out[k] = -x[k + 1];
    out[k + 1] = x[k];
  }
  return out;
}

// Tangent field on S^m for even m: fixes the first coordinate and rotates the
// remaining pairs, (x1, x2, x3, ..., xm, xm+1) -> (0, -x3, x2, ..., -xm+1, xm).
// Vanishes exactly at +-e1; elsewhere its norm is sqrt(1 - x1^2).
inline Eigen::VectorXd polar_rotation_field(const SpherePoint& x) {
  const int dim = x.ambient_dim();
  if (dim % 2 != 1)
    throw std::invalid_argument("polar_rotation_field: needs even sphere dimension");
  Eigen::VectorXd out(dim);
  out[0] = 0.0;
  for (int k = 1; k + 1 < dim; k += 2) {
    out[k] = -x[k + 1];
    out[k + 1] = x[k];
  }
  return out;
}

// Stereographic chart centered away from the north pole p_N = (0,...,0,1):
// y_i = x_i / (1 - x_{m+1}). Rejects points within 1e-12 of the pole, where
// the division degenerates.
inline Eigen::VectorXd stereo_to_plane(const SpherePoint& x) {
  const int m = x.sphere_dim();
  const double last = x[m];
  if (last >= 1.0 - 1e-12)
    throw std::invalid_argument("stereo_to_plane: point is at or too close to the north pole");
  return x.coords().head(m) / (1.0 - last);
}

// Inverse chart: y in R^m maps to (2y, |y|^2 - 1) / (|y|^2 + 1). Always lands
// strictly away from the north pole.
inline SpherePoint stereo_from_plane(const Eigen::VectorXd& y) {
  const int m = static_cast<int>(y.size());
  const double s = y.squaredNorm();
  Eigen::VectorXd out(m + 1);
  out.head(m) = 2.0 * y / (s + 1.0);
  out[m] = (s - 1.0) / (s + 1.0);
  return SpherePoint::normalized(out);
}

}  // namespace milplan
