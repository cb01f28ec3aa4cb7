#include <doctest.h>

#include <complex>

#include "milplan/polynomial.hpp"
#include "milplan/rng.hpp"

using namespace milplan;

TEST_CASE("rational arithmetic normalizes") {
  Rational a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);

  Rational b(1, -3);
  CHECK(b.num() == -1);
  CHECK(b.den() == 3);

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(7, 3) - Rational(1, 3) == Rational(2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("complex rational arithmetic") {
  ComplexRational i(Rational(0), Rational(1));
  CHECK(i * i == ComplexRational(Rational(-1), Rational(0)));
  ComplexRational z(Rational(1, 2), Rational(1, 3));
  ComplexRational w(Rational(2), Rational(-1));
  CHECK((z * w).re == Rational(1, 2) * Rational(2) - Rational(1, 3) * Rational(-1));
  CHECK((z + w).im == Rational(1, 3) + Rational(-1));
}

TEST_CASE("polynomial construction and degree") {
  const auto x = RationalPoly::variable(2, 0);
  const auto y = RationalPoly::variable(2, 1);
  const auto p = x * x + Rational(3) * y;

  CHECK(p.total_degree() == 2);
  CHECK_FALSE(p.is_homogeneous());
  CHECK((x * x + y * y).is_homogeneous());
  CHECK(RationalPoly::constant(2, Rational(0)).total_degree() == -1);

  const double vals[] = {2.0, 5.0};
  CHECK(p.eval(vals, 2) == doctest::Approx(19.0));
}

TEST_CASE("polynomial product matches pointwise product") {
  const auto x = RationalPoly::variable(3, 0);
  const auto y = RationalPoly::variable(3, 1);
  const auto z = RationalPoly::variable(3, 2);
  const auto a = x * y + z;
  const auto b = x - Rational(2) * z * z;
  const auto ab = a * b;

  Rng rng(42);
  for (int k = 0; k < 50; ++k) {
    double v[3] = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
    CHECK(ab.eval(v, 3) == doctest::Approx(a.eval(v, 3) * b.eval(v, 3)).epsilon(1e-12));
  }
}

TEST_CASE("symbolic derivative matches finite differences") {
  const auto x = RationalPoly::variable(2, 0);
  const auto y = RationalPoly::variable(2, 1);
  const auto p = x * x * y + Rational(5, 2) * y * y * y - x;
  const auto dpdx = p.derivative(0);
  const auto dpdy = p.derivative(1);

  Rng rng(7);
  const double h = 1e-6;
  for (int k = 0; k < 20; ++k) {
    double v[2] = {rng.gaussian(), rng.gaussian()};
    double vx_hi[2] = {v[0] + h, v[1]};
    double vx_lo[2] = {v[0] - h, v[1]};
    double vy_hi[2] = {v[0], v[1] + h};
    double vy_lo[2] = {v[0], v[1] - h};
    const double fd_x = (p.eval(vx_hi, 2) - p.eval(vx_lo, 2)) / (2 * h);
    const double fd_y = (p.eval(vy_hi, 2) - p.eval(vy_lo, 2)) / (2 * h);
    CHECK(dpdx.eval(v, 2) == doctest::Approx(fd_x).epsilon(1e-7));
    CHECK(dpdy.eval(v, 2) == doctest::Approx(fd_y).epsilon(1e-7));
  }
}

TEST_CASE("derivative of a constant is zero") {
  const auto c = RationalPoly::constant(3, Rational(4));
  CHECK(c.derivative(1).total_degree() == -1);
}

TEST_CASE("pow expands correctly") {
  const auto x = RationalPoly::variable(1, 0);
  const auto p = (x + RationalPoly::constant(1, Rational(1))).pow(3);
  const double v[] = {2.0};
  CHECK(p.eval(v, 1) == doctest::Approx(27.0));
  CHECK(p.total_degree() == 3);
  CHECK_THROWS_AS(x.pow(-1), std::invalid_argument);
}

TEST_CASE("complex polynomial evaluates over std::complex") {
  const auto z = ComplexPoly::variable(2, 0);
  const auto w = ComplexPoly::variable(2, 1);
  const auto f = z * z + w * w * w;

  const std::complex<double> vals[] = {{0.3, -0.4}, {0.1, 0.2}};
  const std::complex<double> expect =
      vals[0] * vals[0] + vals[1] * vals[1] * vals[1];
  const std::complex<double> got = f.eval(vals, 2);
  CHECK(std::abs(got - expect) < 1e-15);
}

TEST_CASE("add_term rejects negative exponents and merges duplicates") {
  RationalPoly p(2);
  CHECK_THROWS_AS(p.add_term({-1, 0}, Rational(1)), std::invalid_argument);
  p.add_term({1, 1}, Rational(2));
  p.add_term({1, 1}, Rational(-2));
  CHECK(p.total_degree() == -1);  // cancelled to zero
}
