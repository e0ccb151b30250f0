#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liouvprop/algebra/numbers.hpp"

namespace liouvprop::algebra {

/// Dense univariate polynomial with AlgebraicScalar coefficients, stored
/// low-to-high. The zero polynomial has an empty coefficient list and
/// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::string variable) : var_(std::move(variable)) {}
  Polynomial(std::string variable, std::vector<AlgebraicScalar> coeffs);

  static Polynomial constant(const std::string& variable, const AlgebraicScalar& c);
  /// The monomial c * var^n.
  static Polynomial monomial(const std::string& variable, int n, const AlgebraicScalar& c = AlgebraicScalar(1L));
  /// var - root
  static Polynomial linear_factor(const std::string& variable, const AlgebraicScalar& root);

  const std::string& variable() const { return var_; }
  const std::vector<AlgebraicScalar>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  AlgebraicScalar coeff(int k) const;
  const AlgebraicScalar& leading() const { return c_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  AlgebraicScalar evaluate(const AlgebraicScalar& x) const;
  std::complex<double> evaluate(std::complex<double> x) const;
  /// p(x + shift)
  Polynomial taylor_shift(const AlgebraicScalar& shift) const;
  Polynomial conj() const;
  Polynomial surd_conjugate() const;
  /// Radicand shared by all coefficients (0 if none).
  BigInteger radicand() const;
  bool is_rational() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const AlgebraicScalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const AlgebraicScalar& s) { return a *= s; }
  friend Polynomial operator*(const AlgebraicScalar& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial pow(int n) const;

  /// Text in the expression grammar, high degree first.
  std::string to_string() const;

 private:
  void trim();
  std::string var_ = "tau";
  std::vector<AlgebraicScalar> c_;
};

/// Euclidean division; throws std::domain_error when b is zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws std::domain_error when the remainder is nonzero.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor (zero only when both inputs are zero).
Polynomial poly_gcd(const Polynomial& p, const Polynomial& q);
/// Yun's algorithm: pairs (f_k, k) with p = lc * prod f_k^k, each f_k monic,
/// square-free and pairwise coprime. Factors equal to 1 are omitted.
std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& p);

}  // namespace liouvprop::algebra
