#include "liouvprop/algebra/rational_function.hpp"

#include <stdexcept>

namespace liouvprop::algebra {

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.variable(), AlgebraicScalar(1L))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RationalFunction RationalFunction::constant(const std::string& variable, const AlgebraicScalar& c) {
  return RationalFunction(Polynomial::constant(variable, c));
}

RationalFunction RationalFunction::variable(const std::string& variable) {
  return RationalFunction(Polynomial::monomial(variable, 1));
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.variable(), AlgebraicScalar(1L));
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  AlgebraicScalar lc = den_.leading();
  if (!lc.is_one()) {
    AlgebraicScalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

AlgebraicScalar RationalFunction::evaluate(const AlgebraicScalar& x) const {
  AlgebraicScalar d = den_.evaluate(x);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_.evaluate(x) / d;
}

std::complex<double> RationalFunction::evaluate(std::complex<double> x) const {
  return num_.evaluate(x) / den_.evaluate(x);
}

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return RationalFunction(den_, num_).pow(-n);
  RationalFunction r(num_.pow(n), den_.pow(n));
  return r;
}

RationalFunction RationalFunction::conj() const { return {num_.conj(), den_.conj()}; }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    *this = RationalFunction(num_ + o.num_, den_);
  } else {
    *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  *this = RationalFunction(num_ * o.num_, den_ * o.den_);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  *this = RationalFunction(num_ * o.den_, den_ * o.num_);
  return *this;
}

RationalFunction operator*(const AlgebraicScalar& s, const RationalFunction& f) {
  return RationalFunction::constant(f.var(), s) * f;
}

std::string RationalFunction::to_string() const {
  std::string n = num_.to_string();
  if (is_polynomial()) return n;
  bool n_atom = num_.degree() <= 0 && n.find_first_of("+-/", 1) == std::string::npos;
  std::string d = den_.to_string();
  bool d_atom = den_.degree() == 1 ? den_.coefficients()[0].is_zero() : false;
  return (n_atom ? n : "(" + n + ")") + "/" + (d_atom ? d : "(" + d + ")");
}

}  // namespace liouvprop::algebra
