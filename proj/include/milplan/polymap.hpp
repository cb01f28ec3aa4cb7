#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "milplan/polynomial.hpp"

namespace milplan {

// Polynomial map f: R^n -> R^p with f(0) = 0 and n >= p >= 2. Partial
// derivatives are formed symbolically at construction; evaluation of the map
// and its Jacobian runs on flattened term tables so the hot loops touch no
// exact arithmetic.
class PolyMap {
 public:
  explicit PolyMap(std::vector<RationalPoly> components);

  int domain_dim() const { return n_; }
  int codomain_dim() const { return p_; }

  const std::vector<RationalPoly>& components() const { return components_; }
  // d f_i / d x_j, exact.
  const RationalPoly& partial(int i, int j) const;

  Eigen::VectorXd eval(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // In-place variants for tight loops.
  void eval_into(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& out) const;
  void jacobian_into(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::MatrixXd& out) const;

 private:
  // One polynomial flattened to coefficient + packed (variable, exponent)
  // pairs per term.
  struct Compiled {
    std::vector<double> coef;
    std::vector<std::int32_t> offset;  // coef.size() + 1 entries into pows
    std::vector<std::int32_t> pows;    // var0, exp0, var1, exp1, ...
    double eval(const double* x) const;
  };
  static Compiled compile(const RationalPoly& p);

  int n_ = 0;
  int p_ = 0;
  std::vector<RationalPoly> components_;
  std::vector<RationalPoly> partials_;  // row-major, p_ * n_
  std::vector<Compiled> comp_eval_;
  std::vector<Compiled> comp_partial_;
};

// Expands a holomorphic polynomial germ g: C^m -> C, g(0) = 0, into the real
// map R^{2m} -> R^2 obtained by writing z_k = x_{2k-1} + i x_{2k} and
// splitting g into real and imaginary parts.
PolyMap realify(const ComplexPoly& g);

// Central arrangement of complex hyperplanes through the origin of C^{d+1},
// each given by the coefficients of a nonzero linear form. Forms must be
// pairwise non-proportional; proportional forms would repeat a hyperplane.
class Arrangement {
 public:
  Arrangement(int d, std::vector<std::vector<ComplexRational>> forms);

  int ambient_dim() const { return d_ + 1; }  // complex dimension
  int d() const { return d_; }
  const std::vector<std::vector<ComplexRational>>& forms() const { return forms_; }
  int size() const { return static_cast<int>(forms_.size()); }

 private:
  int d_;
  std::vector<std::vector<ComplexRational>> forms_;
};

// Product of the defining linear forms; homogeneous of degree |A|.
ComplexPoly arrangement_polynomial(const Arrangement& a);

// Realification of the arrangement product, a map R^{2(d+1)} -> R^2.
PolyMap arrangement_map(const Arrangement& a);

}  // namespace milplan
