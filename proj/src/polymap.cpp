#include "milplan/polymap.hpp"

#include <stdexcept>
#include <string>

namespace milplan {

PolyMap::PolyMap(std::vector<RationalPoly> components)
    : components_(std::move(components)) {
  p_ = static_cast<int>(components_.size());
  if (p_ < 2) throw std::invalid_argument("PolyMap: need at least 2 components");
  n_ = components_[0].nvars();
  for (const auto& c : components_)
    if (c.nvars() != n_)
      throw std::invalid_argument("PolyMap: components disagree on variable count");
  if (n_ < p_) throw std::invalid_argument("PolyMap: domain dimension must be >= codomain dimension");
  for (const auto& c : components_)
    if (!c.constant_term().is_zero())
      throw std::invalid_argument("PolyMap: map must vanish at the origin");

  partials_.reserve(static_cast<std::size_t>(p_) * static_cast<std::size_t>(n_));
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < n_; ++j) partials_.push_back(components_[static_cast<std::size_t>(i)].derivative(j));

  comp_eval_.reserve(static_cast<std::size_t>(p_));
  for (const auto& c : components_) comp_eval_.push_back(compile(c));
  comp_partial_.reserve(partials_.size());
  for (const auto& d : partials_) comp_partial_.push_back(compile(d));
}

const RationalPoly& PolyMap::partial(int i, int j) const {
  if (i < 0 || i >= p_ || j < 0 || j >= n_)
    throw std::invalid_argument("PolyMap::partial: index out of range");
  return partials_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

PolyMap::Compiled PolyMap::compile(const RationalPoly& p) {
  Compiled c;
  c.offset.push_back(0);
  for (const auto& [e, coeff] : p.terms()) {
    c.coef.push_back(coeff.to_double());
    for (int j = 0; j < p.nvars(); ++j) {
      const int k = e[static_cast<std::size_t>(j)];
      if (k > 0) {
        c.pows.push_back(j);
        c.pows.push_back(k);
      }
    }
    c.offset.push_back(static_cast<std::int32_t>(c.pows.size()));
  }
  return c;
}

double PolyMap::Compiled::eval(const double* x) const {
  double s = 0.0;
  for (std::size_t t = 0; t < coef.size(); ++t) {
    double v = coef[t];
    for (std::int32_t k = offset[t]; k < offset[t + 1]; k += 2) {
      const double b = x[pows[static_cast<std::size_t>(k)]];
      const int e = pows[static_cast<std::size_t>(k) + 1];
      double pw = b;
      for (int q = 1; q < e; ++q) pw *= b;
      v *= pw;
    }
    s += v;
  }
  return s;
}

Eigen::VectorXd PolyMap::eval(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(p_);
  eval_into(x, out);
  return out;
}

void PolyMap::eval_into(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& out) const {
  if (x.size() != n_) throw std::invalid_argument("PolyMap::eval: point has wrong dimension");
  out.resize(p_);
  for (int i = 0; i < p_; ++i) out[i] = comp_eval_[static_cast<std::size_t>(i)].eval(x.data());
}

Eigen::MatrixXd PolyMap::jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::MatrixXd out(p_, n_);
  jacobian_into(x, out);
  return out;
}

void PolyMap::jacobian_into(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::MatrixXd& out) const {
  if (x.size() != n_) throw std::invalid_argument("PolyMap::jacobian: point has wrong dimension");
  out.resize(p_, n_);
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < n_; ++j)
      out(i, j) = comp_partial_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)].eval(x.data());
}

PolyMap realify(const ComplexPoly& g) {
  if (!g.constant_term().is_zero())
    throw std::invalid_argument("realify: germ must vanish at the origin");
  const int m = g.nvars();
  const int n = 2 * m;

  // z_k = x_{2k-1} + i x_{2k} (1-based), expanded exactly.
  std::vector<ComplexPoly> z;
  z.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    ComplexPoly zk = ComplexPoly::variable(n, 2 * k);
    ComplexPoly im = ComplexPoly::variable(n, 2 * k + 1);
    zk = zk + ComplexPoly::constant(n, ComplexRational(Rational(0), Rational(1))) * im;
    z.push_back(zk);
  }

  ComplexPoly expanded(n);
  for (const auto& [e, c] : g.terms()) {
    ComplexPoly term = ComplexPoly::constant(n, c);
    for (int k = 0; k < m; ++k) {
      const int ek = e[static_cast<std::size_t>(k)];
      if (ek > 0) term = term * z[static_cast<std::size_t>(k)].pow(ek);
    }
    expanded = expanded + term;
  }

  RationalPoly re(n);
  RationalPoly im(n);
  for (const auto& [e, c] : expanded.terms()) {
    if (!c.re.is_zero()) re.add_term(e, c.re);
    if (!c.im.is_zero()) im.add_term(e, c.im);
  }
  return PolyMap({re, im});
}

Arrangement::Arrangement(int d, std::vector<std::vector<ComplexRational>> forms)
    : d_(d), forms_(std::move(forms)) {
  if (d_ < 0) throw std::invalid_argument("Arrangement: d must be >= 0");
  if (forms_.empty()) throw std::invalid_argument("Arrangement: need at least one form");
  const std::size_t len = static_cast<std::size_t>(d_ + 1);
  for (const auto& f : forms_) {
    if (f.size() != len) throw std::invalid_argument("Arrangement: form has wrong length");
    bool nonzero = false;
    for (const auto& c : f) nonzero = nonzero || !c.is_zero();
    if (!nonzero) throw std::invalid_argument("Arrangement: zero form");
  }
  // Two forms cut the same hyperplane exactly when they are proportional,
  // i.e. all 2x2 minors of the coefficient pair vanish.
  for (std::size_t a = 0; a < forms_.size(); ++a) {
    for (std::size_t b = a + 1; b < forms_.size(); ++b) {
      bool proportional = true;
      for (std::size_t i = 0; i < len && proportional; ++i)
        for (std::size_t j = i + 1; j < len && proportional; ++j)
          if (forms_[a][i] * forms_[b][j] != forms_[a][j] * forms_[b][i]) proportional = false;
      if (proportional)
        throw std::invalid_argument("Arrangement: forms " + std::to_string(a) + " and " +
                                    std::to_string(b) + " are proportional");
    }
  }
}

ComplexPoly arrangement_polynomial(const Arrangement& a) {
  const int m = a.ambient_dim();
  ComplexPoly q = ComplexPoly::constant(m, ComplexRational(Rational(1)));
  for (const auto& f : a.forms()) {
    ComplexPoly form(m);
    for (int j = 0; j < m; ++j) {
      const ComplexRational& c = f[static_cast<std::size_t>(j)];
      if (!c.is_zero()) {
        Exponents e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(j)] = 1;
        form.add_term(std::move(e), c);
      }
    }
    q = q * form;
  }
  return q;
}

PolyMap arrangement_map(const Arrangement& a) { return realify(arrangement_polynomial(a)); }

}  // namespace milplan
