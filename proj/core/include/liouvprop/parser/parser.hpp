#pragma once

#include <set>
#include <string>

#include "liouvprop/parser/ast.hpp"

namespace liouvprop::parser {

/// Recursive-descent parser. Precedence from tight to loose: ^, unary -,
/// (* /), (+ -). ^ is right-associative and its exponent may carry a unary
/// minus. Implicit multiplication is rejected. Throws SyntaxError.
NodePtr parse_expression(const std::string& text);

/// Minimal-parenthesis printer; parse_expression(print(n)) is structurally
/// equal to n.
std::string print(const Node& n);

/// Symbol names occurring in n (function names excluded).
std::set<std::string> free_symbols(const Node& n);

}  // namespace liouvprop::parser
