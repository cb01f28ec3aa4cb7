#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "milplan/rational.hpp"

namespace milplan {

// Exponent vector of a monomial; length equals the variable count.
using Exponents = std::vector<int>;

namespace detail {

template <class Scalar>
Scalar scalar_from(const Rational& c) {
  return static_cast<Scalar>(c.to_double());
}

template <class Scalar>
Scalar scalar_from(const ComplexRational& c) {
  return Scalar(c.re.to_double(), c.im.to_double());
}

template <class Scalar>
Scalar int_pow(Scalar base, int e) {
  Scalar r = base;
  for (int i = 1; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

// Sparse multivariate polynomial with exact coefficients. Arithmetic stays
// exact; numeric evaluation converts per coefficient, so evaluation error is
// a single rounding per term.
template <class Coeff>
class Polynomial {
 public:
  explicit Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("Polynomial: nvars must be >= 1");
  }

  static Polynomial constant(int nvars, Coeff c) {
    Polynomial p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }

  static Polynomial variable(int nvars, int j) {
    if (j < 0 || j >= nvars) throw std::invalid_argument("Polynomial: variable index out of range");
    Polynomial p(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(j)] = 1;
    p.add_term(e, Coeff(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exponents, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates a monomial; terms that cancel to zero are dropped.
  void add_term(Exponents e, Coeff c) {
    if (static_cast<int>(e.size()) != nvars_)
      throw std::invalid_argument("Polynomial: exponent vector has wrong length");
    for (int x : e)
      if (x < 0) throw std::invalid_argument("Polynomial: negative exponent");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(std::move(e), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Coeff constant_term() const {
    auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  // Degree of the zero polynomial is reported as -1.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (d == -1) d = s;
      else if (s != d) return false;
    }
    return true;
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  friend Polynomial operator*(const Coeff& c, const Polynomial& a) {
    Polynomial r(a.nvars_);
    for (const auto& [e, t] : a.terms_) r.add_term(e, c * t);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Coeff& c) { return c * a; }

  Polynomial pow(int k) const {
    if (k < 0) throw std::invalid_argument("Polynomial: negative power");
    Polynomial r = constant(nvars_, Coeff(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  Polynomial derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("Polynomial: variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
      const int k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      Exponents d(e);
      d[static_cast<std::size_t>(var)] = k - 1;
      r.add_term(std::move(d), c * Coeff(k));
    }
    return r;
  }

  template <class Scalar>
  Scalar eval(const Scalar* x, int n) const {
    if (n != nvars_) throw std::invalid_argument("Polynomial: evaluation point has wrong dimension");
    Scalar s = Scalar(0);
    for (const auto& [e, c] : terms_) {
      Scalar v = detail::scalar_from<Scalar>(c);
      for (int j = 0; j < nvars_; ++j) {
        const int k = e[static_cast<std::size_t>(j)];
        if (k > 0) v *= detail::int_pow(x[j], k);
      }
      s += v;
    }
    return s;
  }

  template <class Derived>
  typename Derived::Scalar eval(const Eigen::MatrixBase<Derived>& x) const {
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> v = x;
    return eval(v.data(), static_cast<int>(v.size()));
  }

  std::string to_string(const std::string& var = "x") const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.to_string();
      for (int j = 0; j < nvars_; ++j) {
        const int k = e[static_cast<std::size_t>(j)];
        if (k == 0) continue;
        s += "*" + var + std::to_string(j + 1);
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void check_same_vars(const Polynomial& other) const {
    if (nvars_ != other.nvars_)
      throw std::invalid_argument("Polynomial: operands have different variable counts");
  }

  int nvars_;
  std::map<Exponents, Coeff> terms_;
};

using RationalPoly = Polynomial<Rational>;
using ComplexPoly = Polynomial<ComplexRational>;

}  // namespace milplan
