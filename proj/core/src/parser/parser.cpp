#include "liouvprop/parser/parser.hpp"

#include <algorithm>
#include <cctype>

namespace liouvprop::parser {

// ------------------------------------------------------------------ nodes

NodePtr make_integer(algebra::BigInteger v, SourceSpan span) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Integer;
  n->value = std::move(v);
  n->span = span;
  return n;
}

NodePtr make_symbol(std::string name, SourceSpan span) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Symbol;
  n->name = std::move(name);
  n->span = span;
  return n;
}

NodePtr make_unary(Node::Kind kind, NodePtr operand, SourceSpan span) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(operand)};
  n->span = span;
  return n;
}

NodePtr make_binary(Node::Kind kind, NodePtr lhs, NodePtr rhs, SourceSpan span) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(lhs), std::move(rhs)};
  n->span = span;
  return n;
}

NodePtr make_call(std::string name, NodePtr arg, SourceSpan span) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Call;
  n->name = std::move(name);
  n->children = {std::move(arg)};
  n->span = span;
  return n;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.name != b.name || a.value != b.value || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.children.size(); ++k) {
    if (!structurally_equal(*a.children[k], *b.children[k])) return false;
  }
  return true;
}

const std::vector<std::string>& known_functions() {
  static const std::vector<std::string> names = {"arctan", "cos", "cosh", "exp", "log",
                                                 "sin",    "sinh", "sqrt", "tan"};
  return names;
}

bool is_known_function(const std::string& name) {
  const auto& f = known_functions();
  return std::find(f.begin(), f.end(), name) != f.end();
}

bool is_reserved_name(const std::string& name) {
  return name == "i" || name == "pi" || name == "t" || name == "tau" || name == "x" || name == "y";
}

// ------------------------------------------------------------------ lexer

namespace {

struct Token {
  enum class Kind { Integer, Name, Op, End };
  Kind kind;
  std::string text;
  SourceSpan span;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    SourceSpan sp{i, i, line, col};
    std::size_t j = i;
    Token::Kind kind;
    if (std::isdigit(c)) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      kind = Token::Kind::Integer;
    } else if (std::isalpha(c) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      kind = Token::Kind::Name;
    } else if (std::string("+-*/^()").find(static_cast<char>(c)) != std::string::npos) {
      j = i + 1;
      kind = Token::Kind::Op;
    } else {
      sp.end = i + 1;
      throw SyntaxError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", sp,
                        {"integer", "name", "operator"});
    }
    sp.end = j;
    out.push_back({kind, s.substr(i, j - i), sp});
    advance(j - i);
  }
  out.push_back({Token::Kind::End, "", {s.size(), s.size(), line, col}});
  return out;
}

const std::vector<std::string> kOperandStart = {"integer", "name", "(", "-"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    const Token& t = peek();
    if (t.kind != Token::Kind::End) {
      std::string msg = t.text == ")" ? "unbalanced ')'"
                                      : "unexpected '" + t.text + "' (implicit multiplication is not allowed)";
      throw SyntaxError(msg, t.span, {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::Op && peek().text == op; }
  Token take() { return toks_[pos_++]; }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.start, b.end, a.line, a.column}; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (is_op("+") || is_op("-")) {
      auto k = take().text == "+" ? Node::Kind::Add : Node::Kind::Sub;
      NodePtr rhs = term();
      lhs = make_binary(k, lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (is_op("*") || is_op("/")) {
      auto k = take().text == "*" ? Node::Kind::Mul : Node::Kind::Div;
      NodePtr rhs = unary();
      lhs = make_binary(k, lhs, rhs, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  NodePtr unary() {
    if (is_op("-")) {
      Token m = take();
      NodePtr operand = unary();
      return make_unary(Node::Kind::Neg, operand, join(m.span, operand->span));
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (is_op("^")) {
      take();
      NodePtr exponent = unary();
      return make_binary(Node::Kind::Pow, base, exponent, join(base->span, exponent->span));
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Integer: {
        Token tok = take();
        return make_integer(algebra::BigInteger(tok.text), tok.span);
      }
      case Token::Kind::Name: {
        Token tok = take();
        if (is_op("(")) {
          if (!is_known_function(tok.text)) {
            throw SyntaxError("unknown function '" + tok.text + "'", tok.span, known_functions());
          }
          take();
          NodePtr arg = expr();
          if (!is_op(")")) throw SyntaxError("expected ')'", peek().span, {")"});
          Token close = take();
          return make_call(tok.text, arg, join(tok.span, close.span));
        }
        if (is_known_function(tok.text)) {
          throw SyntaxError("function '" + tok.text + "' needs an argument", peek().span, {"("});
        }
        return make_symbol(tok.text, tok.span);
      }
      case Token::Kind::Op:
        if (t.text == "(") {
          Token open = take();
          NodePtr inner = expr();
          if (!is_op(")")) throw SyntaxError("expected ')'", peek().span, {")"});
          Token close = take();
          auto copy = std::make_shared<Node>(*inner);
          copy->span = join(open.span, close.span);
          return copy;
        }
        break;
      case Token::Kind::End:
        break;
    }
    throw SyntaxError(t.kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
                      t.span, kOperandStart);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Add:
    case Node::Kind::Sub:
      return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div:
      return 2;
    case Node::Kind::Neg:
      return 3;
    case Node::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const Node& n, int min_prec) {
  std::string s = print(n);
  return precedence(n) >= min_prec ? s : "(" + s + ")";
}

void collect_symbols(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::Symbol) out.insert(n.name);
  for (const auto& c : n.children) collect_symbols(*c, out);
}

}  // namespace

NodePtr parse_expression(const std::string& text) { return Parser(tokenize(text)).parse_all(); }

std::string print(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Integer:
      return n.value.get_str();
    case Node::Kind::Symbol:
      return n.name;
    case Node::Kind::Call:
      return n.name + "(" + print(*n.children[0]) + ")";
    case Node::Kind::Neg:
      return "-" + wrap(*n.children[0], 3);
    case Node::Kind::Add:
      return wrap(*n.children[0], 1) + "+" + wrap(*n.children[1], 2);
    case Node::Kind::Sub:
      return wrap(*n.children[0], 1) + "-" + wrap(*n.children[1], 2);
    case Node::Kind::Mul:
      return wrap(*n.children[0], 2) + "*" + wrap(*n.children[1], 3);
    case Node::Kind::Div:
      return wrap(*n.children[0], 2) + "/" + wrap(*n.children[1], 3);
    case Node::Kind::Pow:
      return wrap(*n.children[0], 5) + "^" + wrap(*n.children[1], 3);
  }
  return {};
}

std::set<std::string> free_symbols(const Node& n) {
  std::set<std::string> out;
  collect_symbols(n, out);
  return out;
}

}  // namespace liouvprop::parser
