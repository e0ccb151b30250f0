#include "liouvprop/algebra/polynomial.hpp"

#include <stdexcept>

namespace liouvprop::algebra {

Polynomial::Polynomial(std::string variable, std::vector<AlgebraicScalar> coeffs)
    : var_(std::move(variable)), c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::constant(const std::string& variable, const AlgebraicScalar& c) {
  return Polynomial(variable, {c});
}

Polynomial Polynomial::monomial(const std::string& variable, int n, const AlgebraicScalar& c) {
  std::vector<AlgebraicScalar> v(static_cast<std::size_t>(n) + 1);
  v[static_cast<std::size_t>(n)] = c;
  return Polynomial(variable, std::move(v));
}

Polynomial Polynomial::linear_factor(const std::string& variable, const AlgebraicScalar& root) {
  return Polynomial(variable, {-root, AlgebraicScalar(1L)});
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AlgebraicScalar Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return {};
  return c_[static_cast<std::size_t>(k)];
}

Polynomial Polynomial::monic() const {
  if (is_zero() || is_monic()) return *this;
  AlgebraicScalar inv = leading().inverse();
  return *this * inv;
}

Polynomial Polynomial::derivative() const {
  std::vector<AlgebraicScalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * AlgebraicScalar(static_cast<long>(k)));
  return Polynomial(var_, std::move(d));
}

AlgebraicScalar Polynomial::evaluate(const AlgebraicScalar& x) const {
  AlgebraicScalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

Polynomial Polynomial::taylor_shift(const AlgebraicScalar& shift) const {
  // Horner with the linear polynomial (var + shift).
  Polynomial x(var_, {shift, AlgebraicScalar(1L)});
  Polynomial acc(var_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += constant(var_, *it);
  }
  return acc;
}

Polynomial Polynomial::conj() const {
  std::vector<AlgebraicScalar> v;
  for (const auto& c : c_) v.push_back(c.conj());
  return Polynomial(var_, std::move(v));
}

Polynomial Polynomial::surd_conjugate() const {
  std::vector<AlgebraicScalar> v;
  for (const auto& c : c_) v.push_back(c.surd_conjugate());
  return Polynomial(var_, std::move(v));
}

BigInteger Polynomial::radicand() const {
  BigInteger d = 0;
  for (const auto& c : c_) {
    if (c.has_surd()) d = common_radicand(c, AlgebraicScalar(GaussianRational{}, GaussianRational(1), d == 0 ? c.radicand() : d));
  }
  return d;
}

bool Polynomial::is_rational() const {
  for (const auto& c : c_) {
    if (!c.is_rational()) return false;
  }
  return true;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<AlgebraicScalar> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const AlgebraicScalar& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) throw std::domain_error("negative polynomial power");
  Polynomial r = constant(var_, AlgebraicScalar(1L));
  for (int k = 0; k < n; ++k) r *= *this;
  return r;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const AlgebraicScalar& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = cs[0] == '-';
    bool composite = cs.find_first_of("+-", 1) != std::string::npos || cs.find('/') != std::string::npos;
    std::string mono = k == 0 ? "" : (k == 1 ? var_ : var_ + "^" + std::to_string(k));
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else if (composite && !(negative && cs.find_first_of("+-", 1) == std::string::npos)) {
      term = "(" + cs + ")*" + mono;
    } else {
      term = cs + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::string& v = a.variable();
  if (a.degree() < b.degree()) return {Polynomial(v), a};
  std::vector<AlgebraicScalar> rem = a.coefficients();
  std::vector<AlgebraicScalar> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  AlgebraicScalar inv = b.leading().inverse();
  const auto& bc = b.coefficients();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    auto top = static_cast<std::size_t>(k + b.degree());
    AlgebraicScalar q = rem[top] * inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * bc[j];
  }
  return {Polynomial(v, std::move(quo)), Polynomial(v, std::move(rem))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
  Polynomial a = p;
  Polynomial b = q;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a = poly_gcd(f, fp);
  Polynomial b = exact_div(f, a);
  Polynomial c = exact_div(fp, a);
  Polynomial d = c - b.derivative();
  for (int k = 1; b.degree() >= 1; ++k) {
    Polynomial g = poly_gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, k);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace liouvprop::algebra
