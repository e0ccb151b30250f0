#pragma once

#include <complex>
#include <compare>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liouvprop/algebra/rational_function.hpp"
#include "liouvprop/parser/ast.hpp"

namespace liouvprop::liouville {

using algebra::AlgebraicScalar;
using algebra::RationalFunction;

enum class Kind {
  Const,
  Pi,
  Var,
  Add,
  Mul,
  Pow,
  Exp,
  Log,
  Arctan,
  Sin,
  Cos,
  Tan,
  Sinh,
  Cosh,
  Integral,
};

struct Node;

/// Immutable, canonical expression handle. All construction goes through
/// the smart constructors below, which flatten and sort Add/Mul, fold
/// constants, collect like terms and powers of equal bases, merge
/// exponentials and normalize the sign of odd/even function arguments.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(long v);                 // NOLINT(google-explicit-constructor)
  Expr(const AlgebraicScalar& v);  // NOLINT(google-explicit-constructor)

  Kind kind() const;
  /// Const value; zero for other kinds.
  const AlgebraicScalar& value() const;
  /// Var name, or the dummy variable of an Integral.
  const std::string& name() const;
  /// Operands: Add/Mul terms, Pow base, function argument, or
  /// (integrand, upper limit) for Integral.
  const std::vector<Expr>& args() const;
  /// Pow exponent, or the lower limit of an Integral.
  const AlgebraicScalar& exponent() const;

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const { return is_const() && value().is_zero(); }
  bool is_one() const { return is_const() && value().is_one(); }

  const Node* node() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend Expr make_node(Kind, AlgebraicScalar, std::string, std::vector<Expr>, AlgebraicScalar);
};

struct Node {
  Kind kind;
  AlgebraicScalar value;
  std::string name;
  std::vector<Expr> args;
  AlgebraicScalar exponent;
};

// ---- constructors ------------------------------------------------------
Expr constant(const AlgebraicScalar& v);
Expr rational(long num, long den = 1);
Expr imag_unit();
Expr pi();
Expr var(const std::string& name);
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const AlgebraicScalar& k);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr arctan(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr sqrt(const Expr& a);
/// Integral of integrand (in the dummy variable) from lower to upper.
Expr integral(const Expr& integrand, const std::string& dummy, const AlgebraicScalar& lower, const Expr& upper);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

// ---- structure ---------------------------------------------------------
/// (c, rest) with e = c * rest and rest carrying no constant factor.
std::pair<AlgebraicScalar, Expr> split_coefficient(const Expr& e);
/// (base, k) with e = base^k.
std::pair<Expr, AlgebraicScalar> split_power(const Expr& e);
bool depends_on(const Expr& e, const std::string& var);
/// True when the leading coefficient is negative (real part < 0, or real
/// part 0 and imaginary part < 0). Used for sign normalization.
bool looks_negative(const Expr& e);
std::size_t node_count(const Expr& e);

/// Rebuilds e through the smart constructors with f applied to every
/// argument (for Integral only the upper limit is mapped).
Expr map_args(const Expr& e, const std::function<Expr(const Expr&)>& f);
Expr substitute(const Expr& e, const std::string& var, const Expr& replacement);
Expr differentiate(const Expr& e, const std::string& var);
/// Distributes products over sums and expands positive integer powers of
/// sums, recursively.
Expr expand(const Expr& e);

// ---- conversions -------------------------------------------------------
std::optional<RationalFunction> to_rational(const Expr& e, const std::string& var);
Expr from_rational(const RationalFunction& f);
Expr from_polynomial(const algebra::Polynomial& p);
/// Symbols bound in `params` become constants; i and pi are constants; all
/// other symbols become variables.
Expr from_ast(const parser::Node& n, const std::map<std::string, algebra::BigRational>& params = {});
Expr parse(const std::string& text, const std::map<std::string, algebra::BigRational>& params = {});
parser::NodePtr to_ast(const Expr& e);
/// Canonical text in the expression grammar. Integral nodes print as
/// integral(f, s, a, upper), which the grammar does not accept back.
std::string to_string(const Expr& e);

// ---- numerics ----------------------------------------------------------
using Bindings = std::map<std::string, std::complex<double>>;
/// Principal branches everywhere. Throws EvaluationSingularity at poles.
std::complex<double> eval_complex(const Expr& e, const Bindings& b);
/// Exact value of a constant expression after folding, if it is a Const.
std::optional<AlgebraicScalar> exact_value(const Expr& e);

/// Open interval (lo, hi) of a variable; infinite ends allowed.
struct DomainWindow {
  std::string variable = "t";
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const { return v > lo && v < hi; }
  DomainWindow intersect(const DomainWindow& o) const;
};

}  // namespace liouvprop::liouville
