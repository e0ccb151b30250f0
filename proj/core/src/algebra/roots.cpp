#include "liouvprop/algebra/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liouvprop/errors.hpp"

namespace liouvprop::algebra {

namespace {

using cld = std::complex<long double>;

cld horner(const std::vector<cld>& c, cld z) {
  cld acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::optional<AlgebraicScalar> recognize_gaussian(std::complex<double> z) {
  double scale = std::max(1.0, std::abs(z));
  double tol = 1e-8 * scale;
  auto re = recognize_rational(std::abs(z.real()) < tol ? 0.0 : z.real(), tol);
  auto im = recognize_rational(std::abs(z.imag()) < tol ? 0.0 : z.imag(), tol);
  if (!re || !im) return std::nullopt;
  return AlgebraicScalar(GaussianRational(*re, *im));
}

std::vector<AlgebraicScalar> quadratic_roots(const Polynomial& q) {
  Polynomial m = q.monic();
  const AlgebraicScalar& b = m.coefficients()[1];
  const AlgebraicScalar& c = m.coefficients()[0];
  AlgebraicScalar s = (b * b - AlgebraicScalar(4L) * c).sqrt();
  AlgebraicScalar half = AlgebraicScalar::rational(1, 2);
  return {(-b + s) * half, (-b - s) * half};
}

// Roots of a monic square-free polynomial.
std::vector<AlgebraicScalar> squarefree_roots(const Polynomial& f) {
  std::vector<AlgebraicScalar> roots;
  if (f.radicand() != 0) {
    // Work with the norm f * conj_surd(f), which has Q(i) coefficients, and
    // keep the candidates that are roots of f itself.
    Polynomial norm = f * f.surd_conjugate();
    for (const auto& [g, k] : square_free_decomposition(norm)) {
      for (const auto& r : squarefree_roots(g)) {
        bool compatible = true;
        try {
          compatible = f.evaluate(r).is_zero();
        } catch (const UnsupportedFactorization&) {
          compatible = false;
        }
        if (compatible && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    }
    if (static_cast<int>(roots.size()) != f.degree()) {
      throw UnsupportedFactorization("cannot split " + f.to_string() + " over a single quadratic extension");
    }
    return roots;
  }
  Polynomial g = f;
  const std::string& v = f.variable();
  while (g.degree() > 0) {
    if (g.degree() == 1) {
      roots.push_back(-g.coefficients()[0] / g.coefficients()[1]);
      break;
    }
    if (g.degree() == 2) {
      for (auto& r : quadratic_roots(g)) roots.push_back(std::move(r));
      break;
    }
    auto approx = numeric_roots(g);
    bool found = false;
    for (const auto& z : approx) {
      auto r = recognize_gaussian(z);
      if (r && g.evaluate(*r).is_zero()) {
        roots.push_back(*r);
        g = exact_div(g, Polynomial::linear_factor(v, *r));
        found = true;
        break;
      }
    }
    if (found) continue;
    for (std::size_t i = 0; i < approx.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < approx.size() && !found; ++j) {
        auto s = recognize_gaussian(approx[i] + approx[j]);
        auto p = recognize_gaussian(approx[i] * approx[j]);
        if (!s || !p) continue;
        Polynomial q(v, {*p, -*s, AlgebraicScalar(1L)});
        auto [quo, rem] = divmod(g, q);
        if (!rem.is_zero()) continue;
        for (auto& r : quadratic_roots(q)) roots.push_back(std::move(r));
        g = quo;
        found = true;
      }
    }
    if (!found) {
      throw UnsupportedFactorization("irreducible factor of degree >= 3 in " + f.to_string());
    }
  }
  return roots;
}

}  // namespace

std::optional<BigRational> recognize_rational(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  BigInteger h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rem);
    BigInteger ai(a);
    BigInteger h2 = ai * h1 + h0;
    BigInteger k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    BigRational cand(h1, k1);
    cand.canonicalize();
    if (std::abs(cand.get_d() - x) <= tol) return cand;
    double frac = rem - a;
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

std::vector<std::complex<double>> numeric_roots(const Polynomial& p) {
  int n = p.degree();
  std::vector<std::complex<double>> out;
  if (n < 1) return out;
  std::vector<cld> c;
  for (const auto& a : p.coefficients()) {
    auto z = a.to_complex();
    c.emplace_back(z.real(), z.imag());
  }
  cld lead = c.back();
  for (auto& a : c) a /= lead;
  std::vector<cld> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<long double>(k));

  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)]));
  bound += 1;
  std::vector<cld> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double ang = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(bound * 0.5L + 0.1L, ang);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cld pv = horner(c, z[i]);
      if (std::abs(pv) == 0) continue;
      cld ratio = pv / horner(dc, z[i]);
      cld sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += 1.0L / (z[i] - z[j]);
      }
      cld w = ratio / (1.0L - ratio * sum);
      z[i] -= w;
      change = std::max(change, std::abs(w) / (1 + std::abs(z[i])));
    }
    if (change < 1e-18L) break;
  }
  for (const auto& r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

std::vector<Root> find_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Root> out;
  for (const auto& [f, k] : square_free_decomposition(p)) {
    for (auto& r : squarefree_roots(f)) out.push_back({std::move(r), k});
  }
  BigInteger d = 0;
  for (const auto& r : out) {
    d = common_radicand(r.value, AlgebraicScalar(GaussianRational{}, GaussianRational(1), d));
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
  return out;
}

std::vector<AlgebraicScalar> laurent_coefficients(const RationalFunction& f, const AlgebraicScalar& c, int order,
                                                  int count) {
  // f(c + s) = s^{-shift} * N(s) / Q(s) with Q(0) != 0.
  Polynomial num = f.num().taylor_shift(c);
  Polynomial den = f.den().taylor_shift(c);
  std::vector<AlgebraicScalar> dc = den.coefficients();
  int shift = 0;
  while (shift < static_cast<int>(dc.size()) && dc[static_cast<std::size_t>(shift)].is_zero()) ++shift;
  // den = s^shift * Q(s); f = s^{-shift} N/Q. Requested leading power is -order.
  std::vector<AlgebraicScalar> q(dc.begin() + shift, dc.end());
  std::vector<AlgebraicScalar> series;
  int need = shift - order + count;
  AlgebraicScalar q0inv = q[0].inverse();
  for (int k = 0; k < need; ++k) {
    AlgebraicScalar acc = num.coeff(k);
    for (int j = 1; j <= k && j < static_cast<int>(q.size()); ++j) {
      acc -= q[static_cast<std::size_t>(j)] * series[static_cast<std::size_t>(k - j)];
    }
    series.push_back(acc * q0inv);
  }
  // Coefficient of s^m in f is series[m + shift]; we want m = -order + j.
  std::vector<AlgebraicScalar> out;
  for (int j = 0; j < count; ++j) {
    int idx = -order + j + shift;
    out.push_back(idx >= 0 && idx < static_cast<int>(series.size()) ? series[static_cast<std::size_t>(idx)]
                                                                    : AlgebraicScalar{});
  }
  return out;
}

PartialFractions partial_fractions(const RationalFunction& f) {
  PartialFractions pf;
  auto [quo, rem] = divmod(f.num(), f.den());
  pf.polynomial_part = quo;
  if (rem.is_zero()) return pf;
  RationalFunction proper(rem, f.den());
  for (const auto& root : find_roots(f.den())) {
    auto coeffs = laurent_coefficients(proper, root.value, root.multiplicity, root.multiplicity);
    for (int j = 0; j < root.multiplicity; ++j) {
      const auto& c = coeffs[static_cast<std::size_t>(j)];
      if (!c.is_zero()) pf.terms.push_back({root.value, root.multiplicity - j, c});
    }
  }
  return pf;
}

RationalFunction PartialFractions::resum(const std::string& var) const {
  RationalFunction acc(Polynomial(var, polynomial_part.coefficients()));
  for (const auto& t : terms) {
    Polynomial den = Polynomial::linear_factor(var, t.root).pow(t.order);
    acc += RationalFunction(Polynomial::constant(var, t.coefficient), den);
  }
  return acc;
}

AlgebraicScalar PartialFractions::coefficient(const AlgebraicScalar& root, int order) const {
  for (const auto& t : terms) {
    if (t.root == root && t.order == order) return t.coefficient;
  }
  return {};
}

}  // namespace liouvprop::algebra
