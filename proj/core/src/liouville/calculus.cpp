#include "liouvprop/liouville/calculus.hpp"

#include <cmath>

#include "liouvprop/algebra/roots.hpp"
#include "liouvprop/errors.hpp"

namespace liouvprop::liouville {

using algebra::Polynomial;

namespace {

bool is_positive_real(const AlgebraicScalar& v) {
  if (!v.is_real() || v.is_zero()) return false;
  return v.to_complex().real() > 0;
}

AlgebraicScalar half(const AlgebraicScalar& v) { return v * AlgebraicScalar::rational(1, 2); }

}  // namespace

// ------------------------------------------------------ rational integrals

RationalIntegral integrate_rational(const RationalFunction& f) {
  const std::string& v = f.var();
  RationalIntegral out{RationalFunction::constant(v, AlgebraicScalar()), {}, {}};
  auto pf = algebra::partial_fractions(f);

  const auto& pc = pf.polynomial_part.coefficients();
  std::vector<AlgebraicScalar> ic(pc.size() + 1);
  for (std::size_t k = 0; k < pc.size(); ++k) ic[k + 1] = pc[k] / AlgebraicScalar(static_cast<long>(k + 1));
  out.rational_part = RationalFunction(Polynomial(v, ic));

  std::vector<algebra::PartialFractionTerm> simple;
  for (const auto& t : pf.terms) {
    if (t.coefficient.is_zero()) continue;
    if (t.order == 1) {
      simple.push_back(t);
      continue;
    }
    // c (v-p)^-n integrates to c/(1-n) (v-p)^(1-n)
    RationalFunction lin(Polynomial::linear_factor(v, t.root));
    out.rational_part += (t.coefficient / AlgebraicScalar(static_cast<long>(1 - t.order))) * lin.pow(1 - t.order);
  }

  std::vector<bool> used(simple.size(), false);
  for (std::size_t k = 0; k < simple.size(); ++k) {
    if (used[k]) continue;
    const auto& p = simple[k].root;
    AlgebraicScalar y = p.imag_part();
    if (!y.is_zero()) {
      for (std::size_t m = k + 1; m < simple.size(); ++m) {
        if (used[m] || !(simple[m].root == p.conj())) continue;
        used[k] = used[m] = true;
        const auto& upper = y.to_complex().real() > 0 ? simple[k] : simple[m];
        const auto& lower = y.to_complex().real() > 0 ? simple[m] : simple[k];
        AlgebraicScalar x = p.real_part();
        AlgebraicScalar yy = upper.root.imag_part();
        AlgebraicScalar A = half(upper.coefficient + lower.coefficient);
        AlgebraicScalar B = half(upper.coefficient - lower.coefficient);
        Polynomial shifted = Polynomial::linear_factor(v, x);
        if (!A.is_zero()) out.logs.push_back({A, shifted * shifted + Polynomial::constant(v, yy * yy)});
        if (!B.is_zero()) {
          out.arctans.push_back({AlgebraicScalar(2L) * AlgebraicScalar::i() * B, shifted * Polynomial::constant(v, yy.inverse())});
        }
        break;
      }
    }
    if (used[k]) continue;
    used[k] = true;
    out.logs.push_back({simple[k].coefficient, Polynomial::linear_factor(v, p)});
  }
  return out;
}

Expr RationalIntegral::to_expr() const {
  std::vector<Expr> ts{from_rational(rational_part)};
  for (const auto& l : logs) ts.push_back(mul({Expr(l.coefficient), log(from_polynomial(l.argument))}));
  for (const auto& a : arctans) ts.push_back(mul({Expr(a.coefficient), arctan(from_polynomial(a.argument))}));
  return add(std::move(ts));
}

Expr RationalIntegral::exp_to_expr() const {
  std::vector<Expr> exponent{from_rational(rational_part)};
  for (const auto& a : arctans) exponent.push_back(mul({Expr(a.coefficient), arctan(from_polynomial(a.argument))}));
  std::vector<Expr> fs{exp(add(std::move(exponent)))};
  for (const auto& l : logs) {
    // Pull the leading coefficient out so equal factors share one base.
    AlgebraicScalar lc = l.argument.leading();
    Polynomial monic = l.argument.monic();
    if (!lc.is_one()) fs.push_back(pow(Expr(lc), l.coefficient));
    fs.push_back(pow(from_polynomial(monic), l.coefficient));
  }
  return mul(std::move(fs));
}

Expr exp_integral(const RationalFunction& f) { return integrate_rational(f).exp_to_expr(); }

// ------------------------------------------------------------- simplify

namespace {

// log A - log B rewritten as an arctan when A and B are conjugate-like.
std::optional<Expr> log_difference(const Expr& A, const Expr& B) {
  Expr s = expand(A + B);
  Expr d = expand(A - B);
  if (s.is_const()) {
    AlgebraicScalar sum = s.value();
    AlgebraicScalar x = half(sum);
    if (is_positive_real(x)) {
      Expr u = expand(d * Expr(half(AlgebraicScalar::i().inverse())));
      return mul({Expr(AlgebraicScalar(2L) * AlgebraicScalar::i()), arctan(expand(u * Expr(x.inverse())))});
    }
    AlgebraicScalar y = half(sum) * AlgebraicScalar::i().inverse();
    if (y.is_real() && !y.is_zero()) {
      Expr w = expand(d * Expr(AlgebraicScalar::rational(1, 2)));
      return mul({Expr(AlgebraicScalar(-2L) * AlgebraicScalar::i()), arctan(expand(w * Expr(y.inverse())))});
    }
  }
  return std::nullopt;
}

Expr simplify_add(const Expr& e) {
  std::vector<Expr> ts = e.args();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto [ck, rk] = split_coefficient(ts[k]);
    if (rk.kind() != Kind::Log) continue;
    for (std::size_t m = 0; m < ts.size(); ++m) {
      if (m == k) continue;
      auto [cm, rm] = split_coefficient(ts[m]);
      if (rm.kind() != Kind::Log || !(cm == -ck)) continue;
      if (auto r = log_difference(rk.args()[0], rm.args()[0])) {
        ts[k] = mul({Expr(ck), *r});
        ts.erase(ts.begin() + static_cast<long>(m));
        return add(std::move(ts));
      }
    }
  }
  // c*M*cosh(z) +- c*M*sinh(z) -> c*M*exp(+-z)
  auto strip = [](const Expr& t, Kind k) -> std::optional<std::pair<Expr, Expr>> {
    std::vector<Expr> fs = t.kind() == Kind::Mul ? t.args() : std::vector<Expr>{t};
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].kind() != k) continue;
      Expr z = fs[j].args()[0];
      fs.erase(fs.begin() + static_cast<long>(j));
      return std::make_pair(mul(std::move(fs)), z);
    }
    return std::nullopt;
  };
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto ch = strip(ts[k], Kind::Cosh);
    if (!ch) continue;
    for (std::size_t m = 0; m < ts.size(); ++m) {
      if (m == k) continue;
      auto sh = strip(ts[m], Kind::Sinh);
      if (!sh || !(sh->second == ch->second)) continue;
      Expr z = ch->second;
      if (sh->first == ch->first) {
        ts[k] = mul({ch->first, exp(z)});
      } else if (sh->first == -ch->first) {
        ts[k] = mul({ch->first, exp(-z)});
      } else {
        continue;
      }
      ts.erase(ts.begin() + static_cast<long>(m));
      return add(std::move(ts));
    }
  }
  return e;
}

Expr simplify_mul(const Expr& e) {
  std::vector<Expr> fs = e.args();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    auto [A, ka] = split_power(fs[k]);
    if (fs[k].kind() != Kind::Pow) continue;
    for (std::size_t m = 0; m < fs.size(); ++m) {
      if (m == k || fs[m].kind() != Kind::Pow) continue;
      auto [B, kb] = split_power(fs[m]);
      if (!(kb == -ka)) continue;
      if (auto r = log_difference(A, B)) {
        fs[k] = exp(mul({Expr(ka), *r}));
        fs.erase(fs.begin() + static_cast<long>(m));
        return mul(std::move(fs));
      }
    }
  }
  return e;
}

Expr simplify_once(const Expr& e) {
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(simplify_once(a));
  Expr r;
  switch (e.kind()) {
    case Kind::Add:
      return simplify_add(add(std::move(args)));
    case Kind::Mul:
      r = mul(std::move(args));
      return r.kind() == Kind::Mul ? simplify_mul(r) : r;
    case Kind::Pow:
      return pow(args[0], e.exponent());
    case Kind::Exp:
      return exp(args[0]);
    case Kind::Log:
      return log(args[0]);
    case Kind::Arctan:
      return arctan(args[0]);
    case Kind::Sin:
      return sin(args[0]);
    case Kind::Cos:
      return cos(args[0]);
    case Kind::Tan:
      return tan(args[0]);
    case Kind::Sinh:
      return sinh(args[0]);
    case Kind::Cosh:
      return cosh(args[0]);
    case Kind::Integral:
      return integral(args[0], e.name(), e.exponent(), args[1]);
    default:
      return e;
  }
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr cur = e;
  for (int iter = 0; iter < 64; ++iter) {
    Expr next = simplify_once(cur);
    if (next == cur) return cur;
    cur = next;
  }
  return cur;
}

Expr to_hyperbolic(const Expr& e) {
  Expr x = expand(e);
  if (x.kind() != Kind::Add) return x;
  struct Pair {
    AlgebraicScalar plus;
    AlgebraicScalar minus;
  };
  std::map<std::pair<Expr, Expr>, Pair> groups;
  std::vector<Expr> rest;
  for (const auto& t : x.args()) {
    auto [c, r] = split_coefficient(t);
    std::vector<Expr> fs = r.kind() == Kind::Mul ? r.args() : std::vector<Expr>{r};
    auto it = std::find_if(fs.begin(), fs.end(), [](const Expr& f) { return f.kind() == Kind::Exp; });
    if (it == fs.end()) {
      rest.push_back(t);
      continue;
    }
    Expr z = it->args()[0];
    fs.erase(it);
    Expr M = mul(std::move(fs));
    bool flip = looks_negative(z);
    if (flip) z = -z;
    auto& g = groups[{M, z}];
    (flip ? g.minus : g.plus) += c;
  }
  for (const auto& [key, g] : groups) {
    const auto& [M, z] = key;
    if (g.plus.is_zero() || g.minus.is_zero()) {
      rest.push_back(mul({Expr(g.plus), M, exp(z)}));
      rest.push_back(mul({Expr(g.minus), M, exp(-z)}));
      continue;
    }
    rest.push_back(mul({Expr(g.plus + g.minus), M, cosh(z)}));
    rest.push_back(mul({Expr(g.plus - g.minus), M, sinh(z)}));
  }
  return add(std::move(rest));
}

bool proportional(const Expr& a, const Expr& b, const std::string& var) {
  Expr r = simplify(expand(a / b));
  if (!depends_on(r, var)) return true;
  auto ra = to_rational(a, var);
  auto rb = to_rational(b, var);
  if (ra && rb && !rb->is_zero()) return (*ra / *rb).is_constant();
  return false;
}

bool structurally_equal(const Expr& a, const Expr& b, const std::string& var) {
  Expr sa = simplify(expand(a));
  Expr sb = simplify(expand(b));
  if (sa == sb) return true;
  auto ra = to_rational(sa, var);
  auto rb = to_rational(sb, var);
  if (ra && rb) return *ra == *rb;
  return simplify(expand(sa - sb)).is_zero();
}

std::optional<std::complex<double>> numeric_ratio(const Expr& a, const Expr& b, const std::string& var,
                                                  const std::vector<double>& points, double tol) {
  std::optional<std::complex<double>> first;
  for (double p : points) {
    Bindings bind{{var, p}};
    std::complex<double> vb = eval_complex(b, bind);
    if (std::abs(vb) < 1e-12) continue;
    std::complex<double> r = eval_complex(a, bind) / vb;
    if (!first) {
      first = r;
    } else if (std::abs(r - *first) > tol * std::max(1.0, std::abs(*first))) {
      return std::nullopt;
    }
  }
  return first;
}

bool same_log_derivative(const Expr& a, const Expr& b, const std::string& var, const std::vector<double>& points,
                         double tol) {
  Expr da = differentiate(a, var);
  Expr db = differentiate(b, var);
  for (double p : points) {
    Bindings bind{{var, p}};
    std::complex<double> la = eval_complex(da, bind) / eval_complex(a, bind);
    std::complex<double> lb = eval_complex(db, bind) / eval_complex(b, bind);
    if (std::abs(la - lb) > tol * std::max(1.0, std::abs(la))) return false;
  }
  return true;
}

// ------------------------------------------------------ antiderivatives

namespace {

const char* const kSubst = "__u";

Expr tan_to_sin_cos(const Expr& e) {
  Expr cur = map_args(e, tan_to_sin_cos);
  if (cur.kind() == Kind::Tan) return sin(cur.args()[0]) / cos(cur.args()[0]);
  return cur;
}

Expr replace(const Expr& e, const Expr& target, const Expr& with) {
  if (e == target) return with;
  return map_args(e, [&](const Expr& a) { return replace(a, target, with); });
}

// k*var with k constant
bool linear_in(const Expr& arg, const std::string& v) {
  auto [k, rest] = split_coefficient(arg);
  return rest == var(v);
}

void collect_kernels(const Expr& e, const std::string& v, std::vector<Expr>& out) {
  bool kernel = e.kind() == Kind::Sin || e.kind() == Kind::Cos || e.kind() == Kind::Exp;
  if (kernel && linear_in(e.args()[0], v)) {
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    return;
  }
  for (const auto& a : e.args()) collect_kernels(a, v, out);
}

std::optional<Expr> rational_antiderivative(const Expr& f, const std::string& v) {
  auto r = to_rational(f, v);
  if (!r) return std::nullopt;
  try {
    return integrate_rational(*r).to_expr();
  } catch (const UnsupportedFactorization&) {
    return std::nullopt;
  }
}

// P(v) * exp(k v) -> Q(v) * exp(k v), Q = sum_j (-1)^j P^(j) / k^(j+1)
std::optional<Expr> poly_exp_antiderivative(const Expr& f, const std::string& v) {
  std::vector<Expr> fs = f.kind() == Kind::Mul ? f.args() : std::vector<Expr>{f};
  auto it = std::find_if(fs.begin(), fs.end(), [](const Expr& x) { return x.kind() == Kind::Exp; });
  if (it == fs.end()) return std::nullopt;
  Expr e = *it;
  auto [k, rest] = split_coefficient(e.args()[0]);
  if (!(rest == var(v))) return std::nullopt;
  fs.erase(it);
  auto P = to_rational(mul(std::move(fs)), v);
  if (!P || !P->is_polynomial()) return std::nullopt;
  algebra::Polynomial p = P->num();
  algebra::Polynomial q(v);
  AlgebraicScalar kp = k;
  long sign = 1;
  while (!p.is_zero()) {
    q += p * (AlgebraicScalar(sign) / kp);
    p = p.derivative();
    kp *= k;
    sign = -sign;
  }
  return from_polynomial(q) * e;
}

std::optional<Expr> substitution_antiderivative(const Expr& f, const std::string& v) {
  std::vector<Expr> kernels;
  collect_kernels(f, v, kernels);
  for (const auto& g : kernels) {
    Expr h = replace(simplify(f / differentiate(g, v)), g, var(kSubst));
    if (depends_on(h, v)) continue;
    if (auto F = rational_antiderivative(h, kSubst)) return substitute(*F, kSubst, g);
  }
  return std::nullopt;
}

std::optional<Expr> antiderivative_term(const Expr& f, const std::string& v) {
  if (!depends_on(f, v)) return f * var(v);
  if (auto r = rational_antiderivative(f, v)) return r;
  if (auto r = poly_exp_antiderivative(f, v)) return r;
  return substitution_antiderivative(f, v);
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& f, const std::string& v) {
  if (auto r = rational_antiderivative(f, v)) return r;
  Expr e = expand(tan_to_sin_cos(f));
  if (e.kind() != Kind::Add) return antiderivative_term(e, v);
  std::vector<Expr> parts;
  for (const auto& t : e.args()) {
    auto F = antiderivative_term(t, v);
    if (!F) return std::nullopt;
    parts.push_back(*F);
  }
  return add(std::move(parts));
}

}  // namespace liouvprop::liouville
