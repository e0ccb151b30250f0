#include "liouvprop/liouville/expr.hpp"

#include <algorithm>
#include <functional>

#include "liouvprop/errors.hpp"
#include "liouvprop/parser/parser.hpp"

namespace liouvprop::liouville {

using algebra::BigRational;
using algebra::GaussianRational;
using algebra::Polynomial;

Expr make_node(Kind kind, AlgebraicScalar value, std::string name, std::vector<Expr> args, AlgebraicScalar exponent) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = std::move(value);
  n->name = std::move(name);
  n->args = std::move(args);
  n->exponent = std::move(exponent);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

const AlgebraicScalar kZero;
const AlgebraicScalar kOne(1L);
const std::vector<Expr> kNoArgs;

Expr function_node(Kind k, const Expr& a) { return make_node(k, {}, {}, {a}, {}); }

int sign_of(const AlgebraicScalar& c) {
  auto re = c.real_part();
  if (!re.is_zero()) return re.to_complex().real() < 0 ? -1 : 1;
  auto im = c.imag_part();
  if (!im.is_zero()) return im.to_complex().real() < 0 ? -1 : 1;
  return 0;
}

bool is_integer(const AlgebraicScalar& k) { return k.is_integer(); }

}  // namespace

// ------------------------------------------------------------- Expr basics

Expr::Expr() : Expr(make_node(Kind::Const, kZero, {}, {}, {})) {}
Expr::Expr(long v) : Expr(make_node(Kind::Const, AlgebraicScalar(v), {}, {}, {})) {}
Expr::Expr(const AlgebraicScalar& v) : Expr(make_node(Kind::Const, v, {}, {}, {})) {}

Kind Expr::kind() const { return node_->kind; }
const AlgebraicScalar& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
const AlgebraicScalar& Expr::exponent() const { return node_->exponent; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Kind::Const:
      return a.value() <=> b.value();
    case Kind::Pi:
      return std::strong_ordering::equal;
    case Kind::Var:
      return a.name() <=> b.name();
    default:
      break;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.exponent() <=> b.exponent(); c != 0) return c;
  const auto& x = a.args();
  const auto& y = b.args();
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (auto c = x[k] <=> y[k]; c != 0) return c;
  }
  return x.size() <=> y.size();
}

// ------------------------------------------------------------ constructors

Expr constant(const AlgebraicScalar& v) { return Expr(v); }
Expr rational(long num, long den) { return Expr(AlgebraicScalar::rational(num, den)); }
Expr imag_unit() { return Expr(AlgebraicScalar::i()); }
Expr pi() { return make_node(Kind::Pi, {}, {}, {}, {}); }
Expr var(const std::string& name) { return make_node(Kind::Var, {}, name, {}, {}); }

std::pair<AlgebraicScalar, Expr> split_coefficient(const Expr& e) {
  if (e.is_const()) return {e.value(), Expr(1L)};
  if (e.kind() == Kind::Mul && e.args().front().is_const()) {
    std::vector<Expr> rest(e.args().begin() + 1, e.args().end());
    Expr r = rest.size() == 1 ? rest.front() : make_node(Kind::Mul, {}, {}, std::move(rest), {});
    return {e.args().front().value(), r};
  }
  return {kOne, e};
}

std::pair<Expr, AlgebraicScalar> split_power(const Expr& e) {
  if (e.kind() == Kind::Pow) return {e.args().front(), e.exponent()};
  return {e, kOne};
}

Expr add(std::vector<Expr> terms) {
  AlgebraicScalar c;
  std::map<Expr, AlgebraicScalar> collected;
  std::function<void(const Expr&)> take = [&](const Expr& t) {
    if (t.kind() == Kind::Add) {
      for (const auto& s : t.args()) take(s);
    } else if (t.is_const()) {
      c += t.value();
    } else {
      auto [k, rest] = split_coefficient(t);
      collected[rest] += k;
    }
  };
  for (const auto& t : terms) take(t);
  std::vector<Expr> out;
  if (!c.is_zero()) out.emplace_back(c);
  for (const auto& [rest, k] : collected) {
    if (k.is_zero()) continue;
    out.push_back(k.is_one() ? rest : mul({Expr(k), rest}));
  }
  if (out.empty()) return Expr();
  if (out.size() == 1) return out.front();
  return make_node(Kind::Add, {}, {}, std::move(out), {});
}

Expr mul(std::vector<Expr> factors) {
  AlgebraicScalar c(1L);
  std::vector<Expr> exp_args;
  std::map<Expr, AlgebraicScalar> powers;
  std::function<void(const Expr&)> take = [&](const Expr& f) {
    if (f.kind() == Kind::Mul) {
      for (const auto& s : f.args()) take(s);
    } else if (f.is_const()) {
      c *= f.value();
    } else if (f.kind() == Kind::Exp) {
      exp_args.push_back(f.args().front());
    } else {
      auto [b, k] = split_power(f);
      auto it = powers.find(b);
      if (it == powers.end()) {
        powers.emplace(b, k);
      } else {
        it->second += k;
      }
    }
  };
  for (const auto& f : factors) take(f);
  if (c.is_zero()) return Expr();

  std::vector<Expr> out;
  bool redo = false;
  for (const auto& [b, k] : powers) {
    if (k.is_zero()) continue;
    Expr p = pow(b, k);
    bool stable = (k.is_one() && p == b) || (p.kind() == Kind::Pow && p.args().front() == b && p.exponent() == k);
    if (!stable) redo = true;
    out.push_back(p);
  }
  if (!exp_args.empty()) {
    Expr e = exp(add(exp_args));
    if (e.kind() != Kind::Exp && !e.is_one()) redo = true;
    if (!e.is_one()) out.push_back(e);
  }
  if (redo) {
    out.emplace_back(c);
    return mul(std::move(out));
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) return Expr(c);
  if (out.size() == 1 && out.front().kind() == Kind::Add && !c.is_one()) {
    std::vector<Expr> ts;
    for (const auto& t : out.front().args()) ts.push_back(mul({Expr(c), t}));
    return add(std::move(ts));
  }
  if (!c.is_one()) out.insert(out.begin(), Expr(c));
  if (out.size() == 1) return out.front();
  return make_node(Kind::Mul, {}, {}, std::move(out), {});
}

Expr pow(const Expr& base, const AlgebraicScalar& k) {
  if (k.is_zero()) return Expr(1L);
  if (k.is_one()) return base;
  switch (base.kind()) {
    case Kind::Const: {
      const AlgebraicScalar& v = base.value();
      if (v.is_one()) return base;
      if (v.is_zero()) {
        if (k.is_real() && k.to_complex().real() > 0) return Expr();
        throw EvaluationSingularity("division by zero");
      }
      if (is_integer(k)) return Expr(v.pow(k.to_long()));
      if (k.is_rational() && is_integer(AlgebraicScalar(k.to_rational() * 2))) {
        try {
          AlgebraicScalar root = v.sqrt();
          return Expr(root.pow(BigRational(k.to_rational() * 2).get_num().get_si()));
        } catch (const UnsupportedFactorization&) {
        }
      }
      break;
    }
    case Kind::Pow:
      if (is_integer(k)) return pow(base.args().front(), base.exponent() * k);
      break;
    case Kind::Mul:
      if (is_integer(k)) {
        std::vector<Expr> fs;
        for (const auto& f : base.args()) fs.push_back(pow(f, k));
        return mul(std::move(fs));
      }
      break;
    case Kind::Exp:
      return exp(mul({Expr(k), base.args().front()}));
    default:
      break;
  }
  return make_node(Kind::Pow, {}, {}, {base}, k);
}

Expr exp(const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  if (a.kind() == Kind::Log) return a.args().front();
  auto log_part = [](const Expr& t) -> std::optional<std::pair<AlgebraicScalar, Expr>> {
    auto [k, rest] = split_coefficient(t);
    if (rest.kind() == Kind::Log) return std::make_pair(k, rest.args().front());
    return std::nullopt;
  };
  if (auto lp = log_part(a)) return pow(lp->second, lp->first);
  if (a.kind() == Kind::Add) {
    std::vector<Expr> factors;
    std::vector<Expr> rest;
    for (const auto& t : a.args()) {
      if (auto lp = log_part(t)) {
        factors.push_back(pow(lp->second, lp->first));
      } else {
        rest.push_back(t);
      }
    }
    if (!factors.empty()) {
      factors.push_back(exp(add(std::move(rest))));
      return mul(std::move(factors));
    }
  }
  return function_node(Kind::Exp, a);
}

Expr log(const Expr& a) {
  if (a.is_one()) return Expr();
  if (a.kind() == Kind::Exp) return a.args().front();
  return function_node(Kind::Log, a);
}

namespace {

Expr odd_function(Kind k, const Expr& a) {
  if (a.is_zero()) return Expr();
  if (looks_negative(a)) return mul({Expr(-1L), function_node(k, mul({Expr(-1L), a}))});
  return function_node(k, a);
}

Expr even_function(Kind k, const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  if (looks_negative(a)) return function_node(k, mul({Expr(-1L), a}));
  return function_node(k, a);
}

}  // namespace

Expr arctan(const Expr& a) { return odd_function(Kind::Arctan, a); }
Expr sin(const Expr& a) { return odd_function(Kind::Sin, a); }
Expr cos(const Expr& a) { return even_function(Kind::Cos, a); }
Expr tan(const Expr& a) { return odd_function(Kind::Tan, a); }
Expr sinh(const Expr& a) { return odd_function(Kind::Sinh, a); }
Expr cosh(const Expr& a) { return even_function(Kind::Cosh, a); }
Expr sqrt(const Expr& a) { return pow(a, AlgebraicScalar::rational(1, 2)); }

Expr integral(const Expr& integrand, const std::string& dummy, const AlgebraicScalar& lower, const Expr& upper) {
  if (integrand.is_zero()) return Expr();
  return make_node(Kind::Integral, {}, dummy, {integrand, upper}, lower);
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({Expr(-1L), b})}); }
Expr operator-(const Expr& a) { return mul({Expr(-1L), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, AlgebraicScalar(-1L))}); }

// --------------------------------------------------------------- structure

bool depends_on(const Expr& e, const std::string& v) {
  if (e.kind() == Kind::Var) return e.name() == v;
  if (e.kind() == Kind::Integral) return depends_on(e.args()[1], v);
  for (const auto& a : e.args()) {
    if (depends_on(a, v)) return true;
  }
  return false;
}

bool looks_negative(const Expr& e) {
  if (e.is_const()) return sign_of(e.value()) < 0;
  if (e.kind() == Kind::Add) return looks_negative(e.args().front());
  return sign_of(split_coefficient(e).first) < 0;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& a : e.args()) n += node_count(a);
  return n;
}

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.kind()) {
    case Kind::Add:
      return add(std::move(args));
    case Kind::Mul:
      return mul(std::move(args));
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

Expr map_args(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  if (e.args().empty()) return e;
  if (e.kind() == Kind::Integral) return integral(e.args()[0], e.name(), e.exponent(), f(e.args()[1]));
  std::vector<Expr> args;
  for (const auto& a : e.args()) args.push_back(f(a));
  return rebuild(e, std::move(args));
}

Expr substitute(const Expr& e, const std::string& v, const Expr& replacement) {
  if (e.kind() == Kind::Var) return e.name() == v ? replacement : e;
  if (e.args().empty() || !depends_on(e, v)) return e;
  std::vector<Expr> args;
  if (e.kind() == Kind::Integral) {
    // The integrand lives in its own dummy variable.
    return integral(e.args()[0], e.name(), e.exponent(), substitute(e.args()[1], v, replacement));
  }
  for (const auto& a : e.args()) args.push_back(substitute(a, v, replacement));
  return rebuild(e, std::move(args));
}

Expr differentiate(const Expr& e, const std::string& v) {
  if (!depends_on(e, v)) return Expr();
  const auto& a = e.args();
  switch (e.kind()) {
    case Kind::Var:
      return Expr(1L);
    case Kind::Add: {
      std::vector<Expr> ts;
      for (const auto& t : a) ts.push_back(differentiate(t, v));
      return add(std::move(ts));
    }
    case Kind::Mul: {
      std::vector<Expr> ts;
      for (std::size_t k = 0; k < a.size(); ++k) {
        Expr dk = differentiate(a[k], v);
        if (dk.is_zero()) continue;
        std::vector<Expr> fs = a;
        fs[k] = dk;
        ts.push_back(mul(std::move(fs)));
      }
      return add(std::move(ts));
    }
    case Kind::Pow:
      return mul({Expr(e.exponent()), pow(a[0], e.exponent() - kOne), differentiate(a[0], v)});
    case Kind::Exp:
      return mul({e, differentiate(a[0], v)});
    case Kind::Log:
      return mul({differentiate(a[0], v), pow(a[0], AlgebraicScalar(-1L))});
    case Kind::Arctan:
      return mul({differentiate(a[0], v), pow(add({Expr(1L), pow(a[0], AlgebraicScalar(2L))}), AlgebraicScalar(-1L))});
    case Kind::Sin:
      return mul({cos(a[0]), differentiate(a[0], v)});
    case Kind::Cos:
      return mul({Expr(-1L), sin(a[0]), differentiate(a[0], v)});
    case Kind::Tan:
      return mul({add({Expr(1L), pow(e, AlgebraicScalar(2L))}), differentiate(a[0], v)});
    case Kind::Sinh:
      return mul({cosh(a[0]), differentiate(a[0], v)});
    case Kind::Cosh:
      return mul({sinh(a[0]), differentiate(a[0], v)});
    case Kind::Integral:
      return mul({substitute(a[0], e.name(), a[1]), differentiate(a[1], v)});
    default:
      return Expr();
  }
}

Expr expand(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const:
    case Kind::Pi:
    case Kind::Var:
      return e;
    case Kind::Add: {
      std::vector<Expr> ts;
      for (const auto& t : e.args()) ts.push_back(expand(t));
      return add(std::move(ts));
    }
    case Kind::Mul: {
      std::vector<Expr> terms = {Expr(1L)};
      for (const auto& f0 : e.args()) {
        Expr f = expand(f0);
        std::vector<Expr> summands = f.kind() == Kind::Add ? f.args() : std::vector<Expr>{f};
        std::vector<Expr> next;
        for (const auto& t : terms) {
          for (const auto& s : summands) next.push_back(mul({t, s}));
        }
        terms = std::move(next);
      }
      return add(std::move(terms));
    }
    case Kind::Pow: {
      Expr b = expand(e.args()[0]);
      const AlgebraicScalar& k = e.exponent();
      if (b.kind() == Kind::Add && k.is_integer() && k.to_long() > 0 && k.to_long() <= 12) {
        std::vector<Expr> copies(static_cast<std::size_t>(k.to_long()), b);
        return expand(make_node(Kind::Mul, {}, {}, std::move(copies), {}));
      }
      return pow(b, k);
    }
    case Kind::Integral:
      return integral(expand(e.args()[0]), e.name(), e.exponent(), expand(e.args()[1]));
    default:
      return rebuild(e, {expand(e.args()[0])});
  }
}

// ------------------------------------------------------------- conversions

std::optional<RationalFunction> to_rational(const Expr& e, const std::string& v) {
  switch (e.kind()) {
    case Kind::Const:
      return RationalFunction::constant(v, e.value());
    case Kind::Var:
      if (e.name() == v) return RationalFunction::variable(v);
      return std::nullopt;
    case Kind::Add:
    case Kind::Mul: {
      bool sum = e.kind() == Kind::Add;
      RationalFunction acc = RationalFunction::constant(v, AlgebraicScalar(sum ? 0L : 1L));
      for (const auto& t : e.args()) {
        auto r = to_rational(t, v);
        if (!r) return std::nullopt;
        if (sum) {
          acc += *r;
        } else {
          acc *= *r;
        }
      }
      return acc;
    }
    case Kind::Pow: {
      if (!e.exponent().is_integer()) return std::nullopt;
      auto b = to_rational(e.args()[0], v);
      if (!b) return std::nullopt;
      return b->pow(static_cast<int>(e.exponent().to_long()));
    }
    default:
      return std::nullopt;
  }
}

Expr from_polynomial(const Polynomial& p) {
  std::vector<Expr> ts;
  Expr x = var(p.variable());
  for (int k = 0; k <= p.degree(); ++k) {
    const auto& c = p.coefficients()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    ts.push_back(mul({Expr(c), pow(x, AlgebraicScalar(static_cast<long>(k)))}));
  }
  return add(std::move(ts));
}

Expr from_rational(const RationalFunction& f) {
  Expr n = from_polynomial(f.num());
  if (f.is_polynomial()) return n;
  return mul({n, pow(from_polynomial(f.den()), AlgebraicScalar(-1L))});
}

Expr from_ast(const parser::Node& n, const std::map<std::string, BigRational>& params) {
  using K = parser::Node::Kind;
  auto arg = [&](std::size_t k) { return from_ast(*n.children[k], params); };
  switch (n.kind) {
    case K::Integer:
      return Expr(AlgebraicScalar(BigRational(n.value)));
    case K::Symbol: {
      if (n.name == "i") return imag_unit();
      if (n.name == "pi") return pi();
      auto it = params.find(n.name);
      if (it != params.end()) return Expr(AlgebraicScalar(it->second));
      return var(n.name);
    }
    case K::Neg:
      return -arg(0);
    case K::Add:
      return arg(0) + arg(1);
    case K::Sub:
      return arg(0) - arg(1);
    case K::Mul:
      return arg(0) * arg(1);
    case K::Div:
      return arg(0) / arg(1);
    case K::Pow: {
      Expr b = arg(0);
      Expr k = arg(1);
      if (k.is_const()) return pow(b, k.value());
      return exp(mul({k, log(b)}));
    }
    case K::Call: {
      Expr a = arg(0);
      const std::string& f = n.name;
      if (f == "sin") return sin(a);
      if (f == "cos") return cos(a);
      if (f == "tan") return tan(a);
      if (f == "sinh") return sinh(a);
      if (f == "cosh") return cosh(a);
      if (f == "exp") return exp(a);
      if (f == "log") return log(a);
      if (f == "arctan") return arctan(a);
      if (f == "sqrt") return sqrt(a);
      throw SyntaxError("unknown function '" + f + "'", n.span, parser::known_functions());
    }
  }
  return Expr();
}

Expr parse(const std::string& text, const std::map<std::string, BigRational>& params) {
  return from_ast(*parser::parse_expression(text), params);
}

DomainWindow DomainWindow::intersect(const DomainWindow& o) const {
  DomainWindow w = *this;
  w.lo = std::max(lo, o.lo);
  w.hi = std::min(hi, o.hi);
  return w;
}

std::optional<AlgebraicScalar> exact_value(const Expr& e) {
  if (e.is_const()) return e.value();
  return std::nullopt;
}

}  // namespace liouvprop::liouville
