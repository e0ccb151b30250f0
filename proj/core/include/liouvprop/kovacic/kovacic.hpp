#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liouvprop/liouville/expr.hpp"
#include "liouvprop/transforms/transforms.hpp"

namespace liouvprop::kovacic {

using algebra::AlgebraicScalar;
using algebra::Polynomial;
using algebra::RationalFunction;
using liouville::Expr;

struct Pole {
  AlgebraicScalar location;
  int order = 0;
  /// Coefficient of (tau - c)^-2 in the Laurent expansion of r.
  AlgebraicScalar b;
};

struct PoleAnalysis {
  std::vector<Pole> poles;
  /// deg den - deg num; large for r = 0.
  int infinity_order = 0;
  /// Coefficient of tau^-2 at infinity; zero when infinity_order > 2.
  AlgebraicScalar b_infinity;
};

/// Exact pole data of r. Throws UnsupportedStructure when a pole has order
/// outside {1, 2} or infinity_order < 2.
PoleAnalysis analyze_poles(const RationalFunction& r);

/// One sign/e choice: per pole (in PoleAnalysis order) then infinity.
struct Assignment {
  std::vector<AlgebraicScalar> at_poles;
  AlgebraicScalar at_infinity;
  long n = 0;
};

struct Case1Data {
  std::vector<std::pair<AlgebraicScalar, AlgebraicScalar>> alpha_poles;  // (alpha+, alpha-)
  std::pair<AlgebraicScalar, AlgebraicScalar> alpha_infinity;
  /// Every assignment with a non-negative integer n, ascending n.
  std::vector<Assignment> assignments;
  std::vector<RationalFunction> omega_candidates;
  std::vector<long> D() const;
};

struct Case2Data {
  std::vector<std::vector<long>> E_poles;
  std::vector<long> E_infinity;
  std::vector<Assignment> assignments;
  std::vector<long> D() const;
};

/// A Liouvillian solution y = P * exp(integral omega).
struct Witness {
  Assignment assignment;
  RationalFunction omega;
  Polynomial P;
  Expr solution;
};

struct Case1Result {
  Case1Data data;
  std::vector<Witness> witnesses;  // independent solutions found, first is y1
};

struct Case2Result {
  Case2Data data;
  std::optional<Assignment> assignment;
  RationalFunction theta;
  Polynomial P;
  RationalFunction phi;
  /// Discriminant of the omega quadratic, and its square root when rational.
  RationalFunction discriminant;
  std::optional<RationalFunction> sqrt_discriminant;
  /// omega+ and omega- when rational.
  std::optional<std::pair<RationalFunction, RationalFunction>> omegas;
  std::vector<Expr> solutions;
  bool solved() const { return !solutions.empty(); }
};

Case1Result run_case1(const PoleAnalysis& pa, const RationalFunction& r);
Case2Result run_case2(const PoleAnalysis& pa, const RationalFunction& r);

enum class CaseLabel { Case1, Case2, UnresolvedCases12, UnsupportedStructure };
enum class GaloisClass { Triangularizable, InfiniteDihedral, Indeterminate };
std::string to_string(CaseLabel c);
std::string to_string(GaloisClass g);

struct KovacicOutcome {
  CaseLabel case_label = CaseLabel::UnresolvedCases12;
  GaloisClass galois_class = GaloisClass::Indeterminate;
  std::optional<PoleAnalysis> poles;
  std::optional<Case1Result> case1;
  std::optional<Case2Result> case2;
  std::vector<Expr> solutions;
  std::string unsupported_reason;
};

struct SolveOptions {
  /// Also run case 2 when case 1 succeeds (reported, not used for the label).
  bool force_case2 = false;
};

/// analyze -> case 1 -> case 2. UnsupportedStructure is reported in the
/// outcome rather than thrown.
KovacicOutcome solve(const transforms::ReducedODE& red, const SolveOptions& opts = {});

/// Exact square root of a rational function, if it has one.
std::optional<RationalFunction> rational_sqrt(const RationalFunction& f);

/// y2 = y1 * integral(1/y1^2) for y1 = P exp(integral omega).
Expr second_solution(const Polynomial& P, const RationalFunction& omega);

/// Residual y'' - r y as an expression.
Expr residual(const Expr& y, const RationalFunction& r);

}  // namespace liouvprop::kovacic
