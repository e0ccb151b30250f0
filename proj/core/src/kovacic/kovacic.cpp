#include "liouvprop/kovacic/kovacic.hpp"

#include <algorithm>

#include "liouvprop/algebra/linear.hpp"
#include "liouvprop/algebra/roots.hpp"
#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::kovacic {

using algebra::BigRational;
using liouville::exp_integral;
using liouville::from_polynomial;
using liouville::from_rational;

namespace {

constexpr int kInfiniteOrder = 1 << 20;

const AlgebraicScalar kHalf = AlgebraicScalar::rational(1, 2);

RationalFunction constant(const std::string& v, const AlgebraicScalar& c) { return RationalFunction::constant(v, c); }

RationalFunction simple_pole(const std::string& v, const AlgebraicScalar& c) {
  return RationalFunction(Polynomial::constant(v, AlgebraicScalar(1L)), Polynomial::linear_factor(v, c));
}

bool is_nonnegative_integer(const AlgebraicScalar& x) { return x.is_integer() && x.to_long() >= 0; }

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return algebra::exact_div(a * b, algebra::poly_gcd(a, b)).monic(); }

// Monic P of degree n with sum_k coefs[k] * P^(k) = 0.
std::optional<Polynomial> monic_solution(const std::vector<RationalFunction>& coefs, long n, const std::string& v) {
  Polynomial D = Polynomial::constant(v, AlgebraicScalar(1L));
  for (const auto& c : coefs) D = lcm(D, c.den());
  std::vector<Polynomial> images;
  for (long j = 0; j <= n; ++j) {
    Polynomial m = Polynomial::monomial(v, static_cast<int>(j));
    RationalFunction acc = constant(v, AlgebraicScalar());
    for (std::size_t k = 0; k < coefs.size(); ++k) {
      if (!coefs[k].is_zero()) acc += coefs[k] * RationalFunction(m);
      m = m.derivative();
    }
    RationalFunction scaled = acc * RationalFunction(D);
    if (!scaled.is_polynomial()) throw std::logic_error("common denominator failed");
    images.push_back(scaled.num());
  }
  if (n == 0) {
    if (images[0].is_zero()) return Polynomial::constant(v, AlgebraicScalar(1L));
    return std::nullopt;
  }
  int rows = 0;
  for (const auto& p : images) rows = std::max(rows, p.degree() + 1);
  if (rows == 0) rows = 1;
  algebra::Matrix A(static_cast<std::size_t>(rows), algebra::Vector(static_cast<std::size_t>(n)));
  algebra::Vector rhs(static_cast<std::size_t>(rows));
  for (int d = 0; d < rows; ++d) {
    for (long j = 0; j < n; ++j) A[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] = images[static_cast<std::size_t>(j)].coeff(d);
    rhs[static_cast<std::size_t>(d)] = -images[static_cast<std::size_t>(n)].coeff(d);
  }
  auto sol = algebra::solve_linear(A, rhs);
  if (sol.kind == algebra::LinearSolution::Kind::Inconsistent) return std::nullopt;
  std::vector<AlgebraicScalar> c = sol.particular;
  c.emplace_back(1L);
  return Polynomial(v, c);
}

std::vector<Assignment> enumerate(const std::vector<std::vector<AlgebraicScalar>>& pole_choices,
                                  const std::vector<AlgebraicScalar>& infinity_choices,
                                  const std::function<std::optional<long>(const AlgebraicScalar&, const AlgebraicScalar&)>& n_of) {
  std::vector<Assignment> out;
  std::vector<AlgebraicScalar> current;
  std::function<void(std::size_t, const AlgebraicScalar&)> rec = [&](std::size_t k, const AlgebraicScalar& sum) {
    if (k == pole_choices.size()) {
      for (const auto& inf : infinity_choices) {
        if (auto n = n_of(inf, sum)) out.push_back({current, inf, *n});
      }
      return;
    }
    for (const auto& a : pole_choices[k]) {
      current.push_back(a);
      rec(k + 1, sum + a);
      current.pop_back();
    }
  };
  rec(0, AlgebraicScalar());
  std::stable_sort(out.begin(), out.end(), [](const Assignment& a, const Assignment& b) { return a.n < b.n; });
  return out;
}

std::vector<AlgebraicScalar> distinct(std::vector<AlgebraicScalar> v) {
  std::vector<AlgebraicScalar> out;
  for (auto& x : v) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  return out;
}

std::vector<long> integer_e_set(const AlgebraicScalar& b) {
  AlgebraicScalar s = (AlgebraicScalar(1L) + AlgebraicScalar(4L) * b).sqrt();
  std::vector<long> out;
  for (long k : {0L, 2L, -2L}) {
    AlgebraicScalar e = AlgebraicScalar(2L) + AlgebraicScalar(k) * s;
    if (e.is_integer()) out.push_back(e.to_long());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p) {
  if (p.is_zero()) return p;
  int deg = p.degree();
  if (deg % 2 != 0) return std::nullopt;
  int m = deg / 2;
  try {
    std::vector<AlgebraicScalar> s(static_cast<std::size_t>(m + 1));
    s[static_cast<std::size_t>(m)] = p.leading().sqrt();
    AlgebraicScalar two_lead = AlgebraicScalar(2L) * s[static_cast<std::size_t>(m)];
    for (int k = m - 1; k >= 0; --k) {
      AlgebraicScalar acc = p.coeff(m + k);
      for (int i = k + 1; i <= m; ++i) {
        int j = m + k - i;
        if (j > k && j <= m) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
      }
      s[static_cast<std::size_t>(k)] = acc / two_lead;
    }
    Polynomial root(p.variable(), s);
    if (root * root == p) return root;
  } catch (const UnsupportedFactorization&) {
  }
  return std::nullopt;
}

bool independent(const Witness& a, const RationalFunction& omega, const Polynomial& P) {
  RationalFunction la = a.omega + RationalFunction(a.P.derivative(), a.P);
  RationalFunction lb = omega + RationalFunction(P.derivative(), P);
  return !(la == lb);
}

// A point that is neither a pole of f nor a zero of P.
long regular_point(const RationalFunction& f, const Polynomial& P) {
  for (long x = 0;; ++x) {
    AlgebraicScalar v(x);
    if (!f.den().evaluate(v).is_zero() && !P.evaluate(v).is_zero()) return x;
  }
}

}  // namespace

std::vector<long> Case1Data::D() const {
  std::vector<long> out;
  for (const auto& a : assignments) out.push_back(a.n);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<long> Case2Data::D() const {
  std::vector<long> out;
  for (const auto& a : assignments) out.push_back(a.n);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Case1:
      return "Case1";
    case CaseLabel::Case2:
      return "Case2";
    case CaseLabel::UnresolvedCases12:
      return "UnresolvedCases12";
    case CaseLabel::UnsupportedStructure:
      return "UnsupportedStructure";
  }
  return {};
}

std::string to_string(GaloisClass g) {
  switch (g) {
    case GaloisClass::Triangularizable:
      return "Triangularizable";
    case GaloisClass::InfiniteDihedral:
      return "InfiniteDihedral";
    case GaloisClass::Indeterminate:
      return "Indeterminate";
  }
  return {};
}

PoleAnalysis analyze_poles(const RationalFunction& r) {
  PoleAnalysis pa;
  if (r.is_zero()) {
    pa.infinity_order = kInfiniteOrder;
    return pa;
  }
  for (const auto& root : algebra::find_roots(r.den())) {
    if (root.multiplicity > 2) {
      throw UnsupportedStructure("pole of order " + std::to_string(root.multiplicity) + " at " +
                                 root.value.to_string());
    }
    Pole p{root.value, root.multiplicity, AlgebraicScalar()};
    if (p.order == 2) p.b = algebra::laurent_coefficients(r, p.location, 2, 1).front();
    pa.poles.push_back(p);
  }
  pa.infinity_order = r.order_at_infinity();
  if (pa.infinity_order < 2) {
    throw UnsupportedStructure("order " + std::to_string(pa.infinity_order) + " at infinity");
  }
  if (pa.infinity_order == 2) pa.b_infinity = r.num().leading() / r.den().leading();
  return pa;
}

Expr residual(const Expr& y, const RationalFunction& r) {
  const std::string& v = r.var();
  return liouville::expand(liouville::differentiate(liouville::differentiate(y, v), v) - from_rational(r) * y);
}

Expr second_solution(const Polynomial& P, const RationalFunction& omega) {
  const std::string& v = omega.var();
  Expr y1 = from_polynomial(P) * exp_integral(omega);
  auto inv_sq = liouville::integrate_rational(AlgebraicScalar(-2L) * omega);
  bool rational = inv_sq.arctans.empty() && std::all_of(inv_sq.logs.begin(), inv_sq.logs.end(), [](const auto& l) {
                    return l.coefficient.is_integer();
                  });
  if (rational && inv_sq.rational_part.is_constant()) {
    RationalFunction w = RationalFunction(P * P).pow(-1);
    for (const auto& l : inv_sq.logs) w *= RationalFunction(l.argument).pow(static_cast<int>(l.coefficient.to_long()));
    return liouville::expand(y1 * liouville::integrate_rational(w).to_expr());
  }
  Expr integrand = liouville::substitute(liouville::pow(from_polynomial(P), AlgebraicScalar(-2L)) *
                                             exp_integral(AlgebraicScalar(-2L) * omega),
                                         v, liouville::var("s"));
  long x0 = regular_point(omega, P);
  return y1 * liouville::integral(integrand, "s", AlgebraicScalar(x0), liouville::var(v));
}

Case1Result run_case1(const PoleAnalysis& pa, const RationalFunction& r) {
  const std::string& v = r.var();
  Case1Result out;
  auto& d = out.data;
  std::vector<std::vector<AlgebraicScalar>> choices;
  for (const auto& p : pa.poles) {
    if (p.order == 1) {
      d.alpha_poles.emplace_back(AlgebraicScalar(1L), AlgebraicScalar(1L));
    } else {
      AlgebraicScalar s = (AlgebraicScalar(1L) + AlgebraicScalar(4L) * p.b).sqrt();
      d.alpha_poles.emplace_back((AlgebraicScalar(1L) + s) * kHalf, (AlgebraicScalar(1L) - s) * kHalf);
    }
    choices.push_back(distinct({d.alpha_poles.back().first, d.alpha_poles.back().second}));
  }
  if (pa.infinity_order == 2) {
    AlgebraicScalar s = (AlgebraicScalar(1L) + AlgebraicScalar(4L) * pa.b_infinity).sqrt();
    d.alpha_infinity = {(AlgebraicScalar(1L) + s) * kHalf, (AlgebraicScalar(1L) - s) * kHalf};
  } else {
    d.alpha_infinity = {AlgebraicScalar(), AlgebraicScalar(1L)};
  }
  d.assignments = enumerate(choices, distinct({d.alpha_infinity.first, d.alpha_infinity.second}),
                            [](const AlgebraicScalar& inf, const AlgebraicScalar& sum) -> std::optional<long> {
                              AlgebraicScalar n = inf - sum;
                              if (!is_nonnegative_integer(n)) return std::nullopt;
                              return n.to_long();
                            });
  for (const auto& a : d.assignments) {
    RationalFunction omega = constant(v, AlgebraicScalar());
    for (std::size_t k = 0; k < pa.poles.size(); ++k) {
      omega += a.at_poles[k] * simple_pole(v, pa.poles[k].location);
    }
    d.omega_candidates.push_back(omega);
    if (out.witnesses.size() >= 2) continue;
    RationalFunction c0 = omega.derivative() + omega * omega - r;
    RationalFunction c1 = AlgebraicScalar(2L) * omega;
    auto P = monic_solution({c0, c1, constant(v, AlgebraicScalar(1L))}, a.n, v);
    if (!P) continue;
    if (!out.witnesses.empty() && !independent(out.witnesses.front(), omega, *P)) continue;
    out.witnesses.push_back({a, omega, *P, liouville::expand(from_polynomial(*P)) * exp_integral(omega)});
  }
  return out;
}

Case2Result run_case2(const PoleAnalysis& pa, const RationalFunction& r) {
  const std::string& v = r.var();
  Case2Result out;
  auto& d = out.data;
  std::vector<std::vector<AlgebraicScalar>> choices;
  for (const auto& p : pa.poles) {
    d.E_poles.push_back(p.order == 1 ? std::vector<long>{4} : integer_e_set(p.b));
    std::vector<AlgebraicScalar> c;
    for (long e : d.E_poles.back()) c.emplace_back(e);
    choices.push_back(c);
  }
  d.E_infinity = pa.infinity_order == 2 ? integer_e_set(pa.b_infinity) : std::vector<long>{0, 2, 4};
  std::vector<AlgebraicScalar> inf;
  for (long e : d.E_infinity) inf.emplace_back(e);
  d.assignments = enumerate(choices, inf, [](const AlgebraicScalar& e_inf, const AlgebraicScalar& sum) -> std::optional<long> {
    AlgebraicScalar n = (e_inf - sum) * kHalf;
    if (!is_nonnegative_integer(n)) return std::nullopt;
    return n.to_long();
  });

  for (const auto& a : d.assignments) {
    RationalFunction theta = constant(v, AlgebraicScalar());
    for (std::size_t k = 0; k < pa.poles.size(); ++k) {
      theta += (a.at_poles[k] * kHalf) * simple_pole(v, pa.poles[k].location);
    }
    RationalFunction dtheta = theta.derivative();
    RationalFunction c0 = dtheta.derivative() + AlgebraicScalar(3L) * theta * dtheta + theta.pow(3) -
                          AlgebraicScalar(4L) * r * theta - AlgebraicScalar(2L) * r.derivative();
    RationalFunction c1 = AlgebraicScalar(3L) * dtheta + AlgebraicScalar(3L) * theta * theta - AlgebraicScalar(4L) * r;
    RationalFunction c2 = AlgebraicScalar(3L) * theta;
    auto P = monic_solution({c0, c1, c2, constant(v, AlgebraicScalar(1L))}, a.n, v);
    if (!P) continue;
    out.assignment = a;
    out.theta = theta;
    out.P = *P;
    out.phi = theta + RationalFunction(P->derivative(), *P);
    // omega^2 - phi*omega + (phi'/2 + phi^2/2 - r) = 0
    out.discriminant = AlgebraicScalar(4L) * r - out.phi * out.phi - AlgebraicScalar(2L) * out.phi.derivative();
    out.sqrt_discriminant = rational_sqrt(out.discriminant);
    if (out.sqrt_discriminant) {
      RationalFunction wp = kHalf * (out.phi + *out.sqrt_discriminant);
      RationalFunction wm = kHalf * (out.phi - *out.sqrt_discriminant);
      out.omegas = std::make_pair(wp, wm);
      out.solutions = {exp_integral(wp), exp_integral(wm)};
    } else {
      Expr phi = liouville::substitute(from_rational(out.phi), v, liouville::var("s"));
      Expr root = liouville::sqrt(liouville::substitute(from_rational(out.discriminant), v, liouville::var("s")));
      long x0 = regular_point(out.discriminant, out.P);
      for (long sign : {1L, -1L}) {
        Expr integrand = Expr(kHalf) * (phi + Expr(sign) * root);
        out.solutions.push_back(
            liouville::exp(liouville::integral(integrand, "s", AlgebraicScalar(x0), liouville::var(v))));
      }
    }
    break;
  }
  return out;
}

std::optional<RationalFunction> rational_sqrt(const RationalFunction& f) {
  auto n = polynomial_sqrt(f.num());
  auto d = polynomial_sqrt(f.den());
  if (!n || !d) return std::nullopt;
  return RationalFunction(*n, *d);
}

KovacicOutcome solve(const transforms::ReducedODE& red, const SolveOptions& opts) {
  KovacicOutcome out;
  try {
    out.poles = analyze_poles(red.r);
  } catch (const UnsupportedStructure& e) {
    out.case_label = CaseLabel::UnsupportedStructure;
    out.unsupported_reason = e.what();
    return out;
  }
  out.case1 = run_case1(*out.poles, red.r);
  const auto& w = out.case1->witnesses;
  if (!w.empty()) {
    out.case_label = CaseLabel::Case1;
    out.galois_class = GaloisClass::Triangularizable;
    out.solutions.push_back(w[0].solution);
    out.solutions.push_back(w.size() > 1 ? w[1].solution : second_solution(w[0].P, w[0].omega));
  }
  if (w.empty() || opts.force_case2) {
    out.case2 = run_case2(*out.poles, red.r);
    if (w.empty() && out.case2->solved()) {
      out.case_label = CaseLabel::Case2;
      out.galois_class = GaloisClass::InfiniteDihedral;
      out.solutions = out.case2->solutions;
    }
  }
  return out;
}

}  // namespace liouvprop::kovacic
