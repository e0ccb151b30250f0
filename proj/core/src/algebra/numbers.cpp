#include "liouvprop/algebra/numbers.hpp"

#include <stdexcept>
#include <vector>

#include "liouvprop/errors.hpp"

namespace liouvprop::algebra {

BigRational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational parse_rational(const std::string& text) {
  BigRational q;
  if (text.empty() || q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

int compare(const BigRational& a, const BigRational& b) { return cmp(a, b); }

namespace {

std::optional<BigInteger> exact_isqrt(const BigInteger& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  BigInteger r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

std::optional<BigRational> exact_sqrt(const BigRational& q) {
  if (sgn(q) < 0) return std::nullopt;
  auto n = exact_isqrt(q.get_num());
  auto d = exact_isqrt(q.get_den());
  if (!n || !d) return std::nullopt;
  BigRational r(*n, *d);
  r.canonicalize();
  return r;
}

void square_free_split(const BigInteger& n, BigInteger& square_root_part, BigInteger& square_free) {
  BigInteger m = abs(n);
  square_root_part = 1;
  square_free = 1;
  if (m == 0) {
    square_free = 0;
    return;
  }
  for (unsigned long p = 2; p < 100000 && p * p <= m; ++p) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p * p) != 0) {
      m /= p * p;
      square_root_part *= p;
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      m /= p;
      square_free *= p;
    }
  }
  if (auto r = exact_isqrt(m)) {
    square_root_part *= *r;
  } else {
    square_free *= m;
  }
}

// ---------------------------------------------------------------- Q(i)

GaussianRational GaussianRational::inverse() const {
  BigRational n = norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  BigRational r = re_ * o.re_ - im_ * o.im_;
  BigRational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.is_zero()) return GaussianRational{};
  if (z.is_real()) {
    if (sgn(z.re()) > 0) {
      if (auto r = exact_sqrt(z.re())) return GaussianRational(*r);
      return std::nullopt;
    }
    if (auto r = exact_sqrt(BigRational(-z.re()))) return GaussianRational(BigRational(0), *r);
    return std::nullopt;
  }
  // (u + iv)^2 = a + ib  =>  u^2 = (a + |z|)/2, v = b/(2u).
  auto modulus = exact_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  BigRational u2 = (z.re() + *modulus) / 2;
  auto u = exact_sqrt(u2);
  if (!u || sgn(*u) == 0) return std::nullopt;
  BigRational v = z.im() / (2 * *u);
  return GaussianRational(*u, v);
}

// ------------------------------------------------------ AlgebraicScalar

AlgebraicScalar::AlgebraicScalar(GaussianRational base, GaussianRational surd_coeff, BigInteger radicand)
    : base_(std::move(base)), surd_(std::move(surd_coeff)) {
  if (sgn(radicand) < 0) {
    surd_ *= GaussianRational::i();
    radicand = -radicand;
  }
  BigInteger outside;
  square_free_split(radicand, outside, radicand_);
  surd_ *= GaussianRational(BigRational(outside));
  normalize();
}

void AlgebraicScalar::normalize() {
  if (radicand_ == 1) {
    base_ += surd_;
    surd_ = GaussianRational{};
    radicand_ = 0;
  }
  if (surd_.is_zero()) radicand_ = 0;
  if (radicand_ == 0) surd_ = GaussianRational{};
}

BigInteger common_radicand(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  if (a.radicand_ == 0) return b.radicand_;
  if (b.radicand_ == 0 || a.radicand_ == b.radicand_) return a.radicand_;
  throw UnsupportedFactorization("incompatible square roots sqrt(" + a.radicand_.get_str() + ") and sqrt(" +
                                 b.radicand_.get_str() + ")");
}

AlgebraicScalar AlgebraicScalar::sqrt_of(const GaussianRational& z) {
  if (auto r = exact_sqrt(z)) return *r;
  if (!z.is_real()) {
    throw UnsupportedFactorization("square root of a non-real Gaussian rational outside Q(i)");
  }
  // sqrt(p/q) = sqrt(p*q)/q; negative values pick up a factor i.
  const BigRational& q = z.re();
  BigInteger pq = q.get_num() * q.get_den();
  GaussianRational coeff(BigRational(1, 1) / BigRational(q.get_den()));
  if (sgn(pq) < 0) coeff *= GaussianRational::i();
  return {GaussianRational{}, coeff, abs(pq)};
}

long AlgebraicScalar::to_long() const {
  if (!is_integer()) throw std::domain_error("not an integer: " + to_string());
  const BigInteger& n = base_.re().get_num();
  if (!n.fits_slong_p()) throw std::overflow_error("integer too large");
  return n.get_si();
}

AlgebraicScalar AlgebraicScalar::conj() const {
  AlgebraicScalar r = *this;
  r.base_ = base_.conj();
  r.surd_ = surd_.conj();
  return r;
}

AlgebraicScalar AlgebraicScalar::surd_conjugate() const {
  AlgebraicScalar r = *this;
  r.surd_ = -surd_;
  return r;
}

AlgebraicScalar AlgebraicScalar::real_part() const {
  AlgebraicScalar r = *this;
  r.base_ = GaussianRational(base_.re());
  r.surd_ = GaussianRational(surd_.re());
  r.normalize();
  return r;
}

AlgebraicScalar AlgebraicScalar::imag_part() const {
  AlgebraicScalar r = *this;
  r.base_ = GaussianRational(base_.im());
  r.surd_ = GaussianRational(surd_.im());
  r.normalize();
  return r;
}

AlgebraicScalar AlgebraicScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (!has_surd()) return base_.inverse();
  // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
  GaussianRational den = base_ * base_ - surd_ * surd_ * GaussianRational(BigRational(radicand_));
  GaussianRational inv = den.inverse();
  AlgebraicScalar r;
  r.base_ = base_ * inv;
  r.surd_ = -surd_ * inv;
  r.radicand_ = radicand_;
  r.normalize();
  return r;
}

AlgebraicScalar AlgebraicScalar::sqrt() const {
  if (!has_surd()) return sqrt_of(base_);
  // Try (u + v sqrt d)^2 = x + y sqrt d with u, v in Q(i):
  // u^2 + v^2 d = x, 2uv = y. Then u^2 is a root of z^2 - x z + y^2 d / 4.
  const GaussianRational d{BigRational(radicand_)};
  GaussianRational disc = base_ * base_ - surd_ * surd_ * d;
  if (auto s = exact_sqrt(disc)) {
    for (int sign : {1, -1}) {
      GaussianRational u2 = (base_ + GaussianRational(sign) * *s) / GaussianRational(2);
      auto u = exact_sqrt(u2);
      if (!u || u->is_zero()) continue;
      GaussianRational v = surd_ / (GaussianRational(2) * *u);
      AlgebraicScalar cand(*u, v, radicand_);
      if (cand * cand == *this) {
        auto c = cand.to_complex();
        if (c.real() < 0 || (c.real() == 0 && c.imag() < 0)) cand = -cand;
        return cand;
      }
    }
  }
  throw UnsupportedFactorization("square root of " + to_string() + " needs a second radical");
}

AlgebraicScalar AlgebraicScalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  AlgebraicScalar result(1L);
  AlgebraicScalar b = *this;
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

AlgebraicScalar AlgebraicScalar::operator-() const {
  AlgebraicScalar r = *this;
  r.base_ = -base_;
  r.surd_ = -surd_;
  return r;
}

AlgebraicScalar& AlgebraicScalar::operator+=(const AlgebraicScalar& o) {
  radicand_ = common_radicand(*this, o);
  base_ += o.base_;
  surd_ += o.surd_;
  normalize();
  return *this;
}

AlgebraicScalar& AlgebraicScalar::operator-=(const AlgebraicScalar& o) { return *this += -o; }

AlgebraicScalar& AlgebraicScalar::operator*=(const AlgebraicScalar& o) {
  BigInteger d = common_radicand(*this, o);
  GaussianRational b = base_ * o.base_ + surd_ * o.surd_ * GaussianRational(BigRational(d));
  GaussianRational s = base_ * o.surd_ + surd_ * o.base_;
  base_ = std::move(b);
  surd_ = std::move(s);
  radicand_ = d;
  normalize();
  return *this;
}

AlgebraicScalar& AlgebraicScalar::operator/=(const AlgebraicScalar& o) { return *this *= o.inverse(); }

bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  return a.radicand_ == b.radicand_ && a.base_ == b.base_ && a.surd_ == b.surd_;
}

std::strong_ordering operator<=>(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  int c = cmp(a.radicand_, b.radicand_);
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto o = a.base_ <=> b.base_; o != 0) return o;
  return a.surd_ <=> b.surd_;
}

std::complex<double> AlgebraicScalar::to_complex() const {
  std::complex<double> v = base_.to_complex();
  if (has_surd()) v += surd_.to_complex() * std::sqrt(radicand_.get_d());
  return v;
}

namespace {

// "k*f" with the usual shortcuts for k = 1, -1.
std::string term_text(const BigInteger& k, const std::string& factor) {
  if (factor.empty()) return k.get_str();
  if (k == 1) return factor;
  if (k == -1) return "-" + factor;
  return k.get_str() + "*" + factor;
}

}  // namespace

std::string AlgebraicScalar::to_string() const {
  BigInteger den = 1;
  for (const BigRational* q : {&base_.re(), &base_.im(), &surd_.re(), &surd_.im()}) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q->get_den().get_mpz_t());
  }
  std::string root = has_surd() ? "sqrt(" + radicand_.get_str() + ")" : "";
  struct Part {
    const BigRational* coeff;
    std::string factor;
  };
  std::vector<Part> parts = {{&base_.re(), ""},
                             {&base_.im(), "i"},
                             {&surd_.re(), root},
                             {&surd_.im(), root.empty() ? "" : "i*" + root}};
  std::string num;
  int terms = 0;
  for (const auto& p : parts) {
    if (sgn(*p.coeff) == 0) continue;
    BigRational scaled = *p.coeff * BigRational(den);
    std::string t = term_text(scaled.get_num(), p.factor);
    if (terms > 0 && t[0] != '-') num += "+";
    num += t;
    ++terms;
  }
  if (terms == 0) return "0";
  if (den == 1) return num;
  if (terms > 1) num = "(" + num + ")";
  return num + "/" + den.get_str();
}

}  // namespace liouvprop::algebra
