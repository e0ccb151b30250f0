#pragma once

#include <string>

#include "liouvprop/algebra/polynomial.hpp"

namespace liouvprop::algebra {

/// num/den in lowest terms with a monic denominator. Every constructor and
/// every arithmetic result is normalized.
class RationalFunction {
 public:
  RationalFunction() : num_("tau"), den_(Polynomial::constant("tau", AlgebraicScalar(1L))) {}
  explicit RationalFunction(Polynomial num);
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(const std::string& variable, const AlgebraicScalar& c);
  static RationalFunction variable(const std::string& variable);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const std::string& var() const { return num_.variable(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  /// Value when is_constant().
  AlgebraicScalar constant_value() const { return num_.coeff(0); }

  RationalFunction derivative() const;
  AlgebraicScalar evaluate(const AlgebraicScalar& x) const;
  std::complex<double> evaluate(std::complex<double> x) const;
  RationalFunction pow(int n) const;
  RationalFunction conj() const;
  /// deg(den) - deg(num); the order of infinity as a zero.
  int order_at_infinity() const { return den_.degree() - num_.degree(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

RationalFunction operator*(const AlgebraicScalar& s, const RationalFunction& f);

}  // namespace liouvprop::algebra
