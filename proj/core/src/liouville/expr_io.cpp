#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/expr.hpp"
#include "liouvprop/parser/parser.hpp"

namespace liouvprop::liouville {

using PK = parser::Node::Kind;
using parser::NodePtr;

namespace {

NodePtr constant_ast(const AlgebraicScalar& v) { return parser::parse_expression(v.to_string()); }

NodePtr one() { return parser::make_integer(1); }

NodePtr product(const std::vector<NodePtr>& fs) {
  if (fs.empty()) return one();
  NodePtr acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = parser::make_binary(PK::Mul, acc, fs[k]);
  return acc;
}

// base^k with k > 0.
NodePtr power_ast(const Expr& base, const AlgebraicScalar& k) {
  if (k.is_one()) return to_ast(base);
  if (k == AlgebraicScalar::rational(1, 2)) return parser::make_call("sqrt", to_ast(base));
  return parser::make_binary(PK::Pow, to_ast(base), constant_ast(k));
}

bool negative_rational(const AlgebraicScalar& k) { return k.is_rational() && k.to_rational() < 0; }

NodePtr mul_ast(const Expr& e) {
  auto [c, rest] = split_coefficient(e);
  bool neg = looks_negative(Expr(c));
  if (neg) c = -c;
  std::vector<NodePtr> num;
  std::vector<NodePtr> den;
  if (c.is_rational()) {
    const auto& q = c.to_rational();
    if (q.get_num() != 1) num.push_back(parser::make_integer(q.get_num()));
    if (q.get_den() != 1) den.push_back(parser::make_integer(q.get_den()));
  } else {
    num.push_back(constant_ast(c));
  }
  std::vector<Expr> fs = rest.kind() == Kind::Mul ? rest.args() : std::vector<Expr>{rest};
  for (const auto& f : fs) {
    if (f.is_one()) continue;
    auto [b, k] = split_power(f);
    if (negative_rational(k)) {
      den.push_back(power_ast(b, -k));
    } else {
      num.push_back(to_ast(f));
    }
  }
  if (num.empty()) num.push_back(one());
  if (neg) num[0] = parser::make_unary(PK::Neg, num[0]);
  NodePtr out = product(num);
  if (!den.empty()) out = parser::make_binary(PK::Div, out, den.size() == 1 ? den[0] : product(den));
  return out;
}

const char* function_name(Kind k) {
  switch (k) {
    case Kind::Exp:
      return "exp";
    case Kind::Log:
      return "log";
    case Kind::Arctan:
      return "arctan";
    case Kind::Sin:
      return "sin";
    case Kind::Cos:
      return "cos";
    case Kind::Tan:
      return "tan";
    case Kind::Sinh:
      return "sinh";
    case Kind::Cosh:
      return "cosh";
    default:
      return "";
  }
}

}  // namespace

NodePtr to_ast(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const:
      return constant_ast(e.value());
    case Kind::Pi:
      return parser::make_symbol("pi");
    case Kind::Var:
      return parser::make_symbol(e.name());
    case Kind::Add: {
      NodePtr acc = to_ast(e.args().front());
      for (std::size_t k = 1; k < e.args().size(); ++k) {
        const Expr& t = e.args()[k];
        if (looks_negative(t)) {
          acc = parser::make_binary(PK::Sub, acc, to_ast(-t));
        } else {
          acc = parser::make_binary(PK::Add, acc, to_ast(t));
        }
      }
      return acc;
    }
    case Kind::Mul:
      return mul_ast(e);
    case Kind::Pow: {
      const AlgebraicScalar& k = e.exponent();
      if (negative_rational(k)) return parser::make_binary(PK::Div, one(), power_ast(e.args()[0], -k));
      return power_ast(e.args()[0], k);
    }
    case Kind::Integral: {
      // Not part of the grammar; carried as an opaque symbol for printing.
      std::string text = "integral(" + to_string(e.args()[0]) + ", " + e.name() + ", " + e.exponent().to_string() +
                         ", " + to_string(e.args()[1]) + ")";
      return parser::make_symbol(text);
    }
    default:
      return parser::make_call(function_name(e.kind()), to_ast(e.args()[0]));
  }
}

std::string to_string(const Expr& e) { return parser::print(*to_ast(e)); }

std::complex<double> eval_complex(const Expr& e, const Bindings& b) {
  using C = std::complex<double>;
  const auto& a = e.args();
  switch (e.kind()) {
    case Kind::Const:
      return e.value().to_complex();
    case Kind::Pi:
      return {M_PI, 0.0};
    case Kind::Var: {
      auto it = b.find(e.name());
      if (it == b.end()) throw EvaluationSingularity("unbound variable '" + e.name() + "'");
      return it->second;
    }
    case Kind::Add: {
      C s = 0;
      for (const auto& t : a) s += eval_complex(t, b);
      return s;
    }
    case Kind::Mul: {
      C p = 1;
      for (const auto& f : a) p *= eval_complex(f, b);
      return p;
    }
    case Kind::Pow: {
      C base = eval_complex(a[0], b);
      const AlgebraicScalar& k = e.exponent();
      bool negative = k.to_complex().real() < 0;
      if (std::abs(base) < 1e-12 && negative) throw EvaluationSingularity("pole of " + to_string(e));
      if (k.is_integer()) {
        long n = k.to_long();
        C r = 1;
        C x = n < 0 ? C(1) / base : base;
        for (long m = std::labs(n); m > 0; m >>= 1, x *= x) {
          if (m & 1) r *= x;
        }
        return r;
      }
      if (std::abs(base) == 0.0) return 0.0;
      return std::pow(base, k.to_complex());
    }
    case Kind::Exp:
      return std::exp(eval_complex(a[0], b));
    case Kind::Log: {
      C v = eval_complex(a[0], b);
      if (std::abs(v) < 1e-300) throw EvaluationSingularity("log of zero in " + to_string(e));
      return std::log(v);
    }
    case Kind::Arctan: {
      C v = eval_complex(a[0], b);
      if (std::abs(v - C(0, 1)) < 1e-12 || std::abs(v + C(0, 1)) < 1e-12) {
        throw EvaluationSingularity("arctan branch point in " + to_string(e));
      }
      return std::atan(v);
    }
    case Kind::Sin:
      return std::sin(eval_complex(a[0], b));
    case Kind::Cos:
      return std::cos(eval_complex(a[0], b));
    case Kind::Tan: {
      C v = eval_complex(a[0], b);
      if (std::abs(std::cos(v)) < 1e-12) throw EvaluationSingularity("pole of " + to_string(e));
      return std::tan(v);
    }
    case Kind::Sinh:
      return std::sinh(eval_complex(a[0], b));
    case Kind::Cosh:
      return std::cosh(eval_complex(a[0], b));
    case Kind::Integral: {
      C lo = e.exponent().to_complex();
      C hi = eval_complex(a[1], b);
      C span = hi - lo;
      Bindings inner = b;
      auto f = [&](double th, bool imag) {
        inner[e.name()] = lo + span * th;
        C v = eval_complex(a[0], inner) * span;
        return imag ? v.imag() : v.real();
      };
      using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
      double re = GK::integrate([&](double th) { return f(th, false); }, 0.0, 1.0, 12, 1e-13);
      double im = GK::integrate([&](double th) { return f(th, true); }, 0.0, 1.0, 12, 1e-13);
      if (!std::isfinite(re) || !std::isfinite(im)) throw NonintegrableQuadrature("quadrature diverged in " + to_string(e));
      return {re, im};
    }
  }
  return 0.0;
}

}  // namespace liouvprop::liouville
