#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <optional>
#include <string>

namespace liouvprop::algebra {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonicalizes after every operation).
using BigRational = mpq_class;
using BigInteger = mpz_class;

BigRational make_rational(long num, long den = 1);
/// Parses "p" or "p/q"; throws std::invalid_argument on malformed text.
BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& q);
bool is_integer(const BigRational& q);
/// Exact square root when q is the square of a rational.
std::optional<BigRational> exact_sqrt(const BigRational& q);
/// Writes |n| = s^2 * d with d square-free. Trial division only; a large
/// squared prime factor beyond the trial bound is left inside d.
void square_free_split(const BigInteger& n, BigInteger& square_root_part, BigInteger& square_free);
int compare(const BigRational& a, const BigRational& b);

/// Element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(BigRational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(BigRational re, BigRational im) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)

  static GaussianRational i() { return {BigRational(0), BigRational(1)}; }

  const BigRational& re() const { return re_; }
  const BigRational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  BigRational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic (re, im); a total order used for canonical sorting only.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  BigRational re_{0};
  BigRational im_{0};
};

/// Square root inside Q(i) when z is a perfect square there; the principal
/// root (positive real part, ties toward non-negative imaginary part).
std::optional<GaussianRational> exact_sqrt(const GaussianRational& z);

/// x + y*sqrt(d) with x, y in Q(i) and d a positive square-free integer
/// (d == 0 means no surd is attached). Scalars carrying two different
/// nonzero surds cannot be combined: the coefficient field never grows
/// beyond one quadratic extension of Q(i).
class AlgebraicScalar {
 public:
  AlgebraicScalar() = default;
  AlgebraicScalar(GaussianRational base) : base_(std::move(base)) {}  // NOLINT
  AlgebraicScalar(BigRational q) : base_(std::move(q)) {}             // NOLINT
  AlgebraicScalar(long v) : base_(v) {}                               // NOLINT
  AlgebraicScalar(GaussianRational base, GaussianRational surd_coeff, BigInteger radicand);

  static AlgebraicScalar i() { return GaussianRational::i(); }
  static AlgebraicScalar rational(long num, long den = 1) { return make_rational(num, den); }
  /// sqrt of a Gaussian rational: exact in Q(i) when possible, otherwise
  /// a canonical surd for rational input.
  /// Throws UnsupportedFactorization for non-square non-real radicands.
  static AlgebraicScalar sqrt_of(const GaussianRational& z);

  const GaussianRational& base() const { return base_; }
  const GaussianRational& surd_coeff() const { return surd_; }
  const BigInteger& radicand() const { return radicand_; }
  bool has_surd() const { return radicand_ != 0; }

  bool is_zero() const { return base_.is_zero() && surd_.is_zero(); }
  bool is_one() const { return !has_surd() && base_ == GaussianRational(1); }
  bool is_gaussian() const { return !has_surd(); }
  bool is_rational() const { return !has_surd() && base_.is_real(); }
  bool is_integer() const { return is_rational() && liouvprop::algebra::is_integer(base_.re()); }
  /// Real in the complex sense: both parts real (sqrt(d) is real for d > 0).
  bool is_real() const { return base_.is_real() && surd_.is_real(); }
  /// Requires is_integer().
  long to_long() const;
  /// Requires is_rational().
  const BigRational& to_rational() const { return base_.re(); }

  AlgebraicScalar conj() const;
  /// Galois conjugate sqrt(d) -> -sqrt(d).
  AlgebraicScalar surd_conjugate() const;
  AlgebraicScalar real_part() const;
  AlgebraicScalar imag_part() const;
  AlgebraicScalar inverse() const;
  /// Principal square root; throws UnsupportedFactorization when the result
  /// would leave the supported field.
  AlgebraicScalar sqrt() const;
  AlgebraicScalar pow(long n) const;

  AlgebraicScalar operator-() const;
  AlgebraicScalar& operator+=(const AlgebraicScalar& o);
  AlgebraicScalar& operator-=(const AlgebraicScalar& o);
  AlgebraicScalar& operator*=(const AlgebraicScalar& o);
  AlgebraicScalar& operator/=(const AlgebraicScalar& o);
  friend AlgebraicScalar operator+(AlgebraicScalar a, const AlgebraicScalar& b) { return a += b; }
  friend AlgebraicScalar operator-(AlgebraicScalar a, const AlgebraicScalar& b) { return a -= b; }
  friend AlgebraicScalar operator*(AlgebraicScalar a, const AlgebraicScalar& b) { return a *= b; }
  friend AlgebraicScalar operator/(AlgebraicScalar a, const AlgebraicScalar& b) { return a /= b; }
  friend bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b);
  friend std::strong_ordering operator<=>(const AlgebraicScalar& a, const AlgebraicScalar& b);

  std::complex<double> to_complex() const;
  /// Canonical text in the expression grammar, e.g. "(1+i)/2" or
  /// "(1+i*sqrt(3))/2".
  std::string to_string() const;

 private:
  void normalize();
  friend BigInteger common_radicand(const AlgebraicScalar& a, const AlgebraicScalar& b);

  GaussianRational base_;
  GaussianRational surd_;
  BigInteger radicand_{0};
};

/// Radicand shared by a and b (0 when neither has one).
/// Throws UnsupportedFactorization on two distinct nonzero radicands.
BigInteger common_radicand(const AlgebraicScalar& a, const AlgebraicScalar& b);

}  // namespace liouvprop::algebra
