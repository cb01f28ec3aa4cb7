#include <doctest.h>

#include <complex>

#include "milplan/polymap.hpp"
#include "milplan/rng.hpp"

using namespace milplan;

namespace {

ComplexPoly z2_plus_w3() {
  const auto z = ComplexPoly::variable(2, 0);
  const auto w = ComplexPoly::variable(2, 1);
  return z * z + w * w * w;
}

ComplexPoly z2_plus_w2() {
  const auto z = ComplexPoly::variable(2, 0);
  const auto w = ComplexPoly::variable(2, 1);
  return z * z + w * w;
}

}  // namespace

TEST_CASE("polymap validates its components") {
  const auto x = RationalPoly::variable(3, 0);
  const auto y = RationalPoly::variable(3, 1);

  // fewer components than 2
  CHECK_THROWS_AS(PolyMap({x}), std::invalid_argument);
  // f(0) != 0
  CHECK_THROWS_AS(PolyMap({x, y + RationalPoly::constant(3, Rational(1))}),
                  std::invalid_argument);
  // mismatched variable counts
  CHECK_THROWS_AS(PolyMap({x, RationalPoly::variable(2, 0)}), std::invalid_argument);
  // p > n
  CHECK_THROWS_AS(PolyMap({RationalPoly::variable(2, 0), RationalPoly::variable(2, 1),
                           RationalPoly::variable(2, 0)}),
                  std::invalid_argument);

  const PolyMap ok({x, y});
  CHECK(ok.domain_dim() == 3);
  CHECK(ok.codomain_dim() == 2);
}

TEST_CASE("realified z^2 + w^3 at a fixed point") {
  const PolyMap f = realify(z2_plus_w3());
  CHECK(f.domain_dim() == 4);
  CHECK(f.codomain_dim() == 2);

  Eigen::VectorXd x(4);
  x << 0.1, 0.2, 0.3, 0.4;  // z = 0.1 + 0.2i, w = 0.3 + 0.4i
  const Eigen::VectorXd fx = f.eval(x);
  CHECK(fx[0] == doctest::Approx(-0.147).epsilon(1e-12));
  CHECK(fx[1] == doctest::Approx(0.084).epsilon(1e-12));
}

TEST_CASE("realification agrees with complex evaluation at random points") {
  const ComplexPoly g = z2_plus_w3();
  const PolyMap f = realify(g);

  Rng rng(123);
  for (int k = 0; k < 100; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(4);
    const std::complex<double> zs[] = {{x[0], x[1]}, {x[2], x[3]}};
    const std::complex<double> gz = g.eval(zs, 2);
    const Eigen::VectorXd fx = f.eval(x);
    CHECK(std::abs(fx[0] - gz.real()) < 1e-12);
    CHECK(std::abs(fx[1] - gz.imag()) < 1e-12);
  }
}

TEST_CASE("realified z^2 + w^2 has the textbook expansion") {
  const PolyMap f = realify(z2_plus_w2());
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(4);
    const Eigen::VectorXd fx = f.eval(x);
    CHECK(fx[0] == doctest::Approx(x[0] * x[0] - x[1] * x[1] + x[2] * x[2] - x[3] * x[3])
                       .epsilon(1e-13));
    CHECK(fx[1] == doctest::Approx(2 * x[0] * x[1] + 2 * x[2] * x[3]).epsilon(1e-13));
  }
}

TEST_CASE("realify of the identity germ is the identity on R^2") {
  const auto z = ComplexPoly::variable(1, 0);
  const PolyMap f = realify(z);
  CHECK(f.domain_dim() == 2);
  CHECK(f.codomain_dim() == 2);
  Eigen::VectorXd x(2);
  x << 0.7, -0.3;
  const Eigen::VectorXd fx = f.eval(x);
  CHECK(fx[0] == doctest::Approx(0.7));
  CHECK(fx[1] == doctest::Approx(-0.3));
}

TEST_CASE("realify rejects a nonzero constant term") {
  const auto z = ComplexPoly::variable(1, 0);
  const auto bad = z + ComplexPoly::constant(1, ComplexRational(Rational(1), Rational(0)));
  CHECK_THROWS_AS(realify(bad), std::invalid_argument);
}

TEST_CASE("jacobian matches finite differences") {
  const PolyMap f = realify(z2_plus_w3());
  Rng rng(99);
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(4);
    const Eigen::MatrixXd J = f.jacobian(x);
    for (int j = 0; j < 4; ++j) {
      Eigen::VectorXd hi = x, lo = x;
      hi[j] += h;
      lo[j] -= h;
      const Eigen::VectorXd col = (f.eval(hi) - f.eval(lo)) / (2 * h);
      CHECK((J.col(j) - col).norm() < 1e-7);
    }
  }
}

TEST_CASE("partial returns the exact symbolic derivative") {
  const auto x = RationalPoly::variable(2, 0);
  const auto y = RationalPoly::variable(2, 1);
  const PolyMap f({x * x + y, x * y});
  const double v[] = {3.0, 4.0};
  CHECK(f.partial(0, 0).eval(v, 2) == doctest::Approx(6.0));
  CHECK(f.partial(0, 1).eval(v, 2) == doctest::Approx(1.0));
  CHECK(f.partial(1, 0).eval(v, 2) == doctest::Approx(4.0));
  CHECK(f.partial(1, 1).eval(v, 2) == doctest::Approx(3.0));
  CHECK_THROWS_AS(f.partial(2, 0), std::invalid_argument);
}

TEST_CASE("eval_into and jacobian_into match the allocating variants") {
  const PolyMap f = realify(z2_plus_w2());
  Rng rng(17);
  Eigen::VectorXd out(2);
  Eigen::MatrixXd Jout(2, 4);
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(4);
    f.eval_into(x, out);
    f.jacobian_into(x, Jout);
    CHECK((out - f.eval(x)).norm() == 0.0);
    CHECK((Jout - f.jacobian(x)).norm() == 0.0);
  }
}

TEST_CASE("single hyperplane arrangement in C^1") {
  const Arrangement a(0, {{ComplexRational(Rational(1), Rational(0))}});
  const ComplexPoly q = arrangement_polynomial(a);
  CHECK(q.total_degree() == 1);
  const PolyMap f = arrangement_map(a);
  CHECK(f.domain_dim() == 2);
  CHECK(f.codomain_dim() == 2);
}

TEST_CASE("braid arrangement product z1 z2 (z1 - z2)") {
  const ComplexRational one(Rational(1), Rational(0));
  const ComplexRational zero(Rational(0), Rational(0));
  const ComplexRational minus_one(Rational(-1), Rational(0));
  const Arrangement a(1, {{one, zero}, {zero, one}, {one, minus_one}});
  const ComplexPoly q = arrangement_polynomial(a);
  CHECK(q.total_degree() == 3);
  CHECK(q.is_homogeneous());

  // Q(z) = z1 z2 (z1 - z2) pointwise.
  Rng rng(31);
  for (int k = 0; k < 30; ++k) {
    const std::complex<double> z1(rng.gaussian(), rng.gaussian());
    const std::complex<double> z2(rng.gaussian(), rng.gaussian());
    const std::complex<double> vals[] = {z1, z2};
    const std::complex<double> expect = z1 * z2 * (z1 - z2);
    CHECK(std::abs(q.eval(vals, 2) - expect) < 1e-12);
  }
}

TEST_CASE("arrangement maps are homogeneous of the arrangement degree") {
  const ComplexRational one(Rational(1), Rational(0));
  const ComplexRational zero(Rational(0), Rational(0));
  const ComplexRational minus_one(Rational(-1), Rational(0));
  const Arrangement a(1, {{one, zero}, {zero, one}, {one, minus_one}});
  const PolyMap f = arrangement_map(a);

  Rng rng(63);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(4);
    const double lambda = 0.5 + rng.uniform();
    const Eigen::VectorXd lhs = f.eval(lambda * x);
    const Eigen::VectorXd rhs = std::pow(lambda, 3) * f.eval(x);
    CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("arrangement rejects proportional or zero forms") {
  const ComplexRational one(Rational(1), Rational(0));
  const ComplexRational zero(Rational(0), Rational(0));
  const ComplexRational two(Rational(2), Rational(0));
  CHECK_THROWS_AS(Arrangement(1, {{one, zero}, {two, zero}}), std::invalid_argument);
  CHECK_THROWS_AS(Arrangement(1, {{zero, zero}}), std::invalid_argument);
  CHECK_THROWS_AS(Arrangement(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Arrangement(1, {{one}}), std::invalid_argument);
}
