#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liouvprop/algebra/numbers.hpp"
#include "liouvprop/errors.hpp"

namespace liouvprop::parser {

/// Parse tree of the expression language. Literals are non-negative
/// integers; a rational is a Div node and a negative number a Neg node.
struct Node {
  enum class Kind { Integer, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  algebra::BigInteger value;     // Integer
  std::string name;              // Symbol, Call
  std::vector<std::shared_ptr<const Node>> children;
  SourceSpan span;
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_integer(algebra::BigInteger v, SourceSpan span = {});
NodePtr make_symbol(std::string name, SourceSpan span = {});
NodePtr make_unary(Node::Kind kind, NodePtr operand, SourceSpan span = {});
NodePtr make_binary(Node::Kind kind, NodePtr lhs, NodePtr rhs, SourceSpan span = {});
NodePtr make_call(std::string name, NodePtr arg, SourceSpan span = {});

/// Structural equality, ignoring spans.
bool structurally_equal(const Node& a, const Node& b);

/// Functions recognized by the grammar.
const std::vector<std::string>& known_functions();
bool is_known_function(const std::string& name);
/// Names that can never be parameters: i, pi, t, tau, x, y.
bool is_reserved_name(const std::string& name);

}  // namespace liouvprop::parser
