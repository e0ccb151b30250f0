#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liouvprop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A polynomial needs an irreducible factor of degree >= 3, or two
/// incompatible square roots, to split.
class UnsupportedFactorization : public Error {
 public:
  using Error::Error;
};

/// Pole structure outside the implemented sub-cases of the Kovacic
/// algorithm (pole order > 2, or order at infinity < 2).
class UnsupportedStructure : public Error {
 public:
  using Error::Error;
};

class NonRationalResult : public Error {
 public:
  using Error::Error;
};

/// A time-domain subterm matched no entry of the change-of-variable table.
class RewriteIncomplete : public Error {
 public:
  using Error::Error;
};

class EvaluationSingularity : public Error {
 public:
  using Error::Error;
};

class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

class NonintegrableQuadrature : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

/// Location of a token or node inside parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span, std::vector<std::string> expected)
      : Error(message), span_(span), expected_(std::move(expected)) {}

  const SourceSpan& span() const noexcept { return span_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// Problem-file validation failure: missing role, unbound parameter, unknown
/// catalog key or malformed line.
class ProblemError : public Error {
 public:
  enum class Kind { MissingRole, UnboundParameter, UnknownCatalogKey, UnknownKey, Malformed };

  ProblemError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace liouvprop
