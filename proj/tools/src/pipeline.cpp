#include "liouvprop/cli/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liouvprop/errors.hpp"
#include "liouvprop/liouville/calculus.hpp"

namespace liouvprop::cli {

using nlohmann::ordered_json;
using namespace liouville;
using algebra::AlgebraicScalar;
using algebra::Polynomial;
using algebra::RationalFunction;

namespace {

constexpr double kClaimTolerance = 1e-8;
constexpr double kRiccatiTolerance = 1e-8;
constexpr double kOdeTolerance = 1e-10;
constexpr double kMinAbsMu = 0.05;
constexpr double kTauLo = 0.2;
constexpr double kTauHi = 2.0;

std::string str(const AlgebraicScalar& a) { return a.to_string(); }
std::string str(const RationalFunction& f) { return to_string(from_rational(f)); }
std::string str(const Polynomial& p) { return to_string(from_polynomial(p)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

ordered_json assignment_json(const kovacic::Assignment& a) {
  ordered_json poles = ordered_json::array();
  for (const auto& v : a.at_poles) poles.push_back(str(v));
  return {{"at_poles", poles}, {"at_infinity", str(a.at_infinity)}, {"n", a.n}};
}

ordered_json kovacic_json(const kovacic::KovacicOutcome& o) {
  ordered_json j;
  j["case"] = kovacic::to_string(o.case_label);
  j["galois_class"] = kovacic::to_string(o.galois_class);
  if (!o.unsupported_reason.empty()) j["unsupported_reason"] = o.unsupported_reason;
  if (o.poles) {
    ordered_json poles = ordered_json::array();
    for (const auto& p : o.poles->poles) {
      poles.push_back({{"location", str(p.location)}, {"order", p.order}, {"b", str(p.b)}});
    }
    j["poles"] = poles;
    j["infinity_order"] = o.poles->infinity_order;
    j["b_infinity"] = str(o.poles->b_infinity);
  }
  if (o.case1) {
    const auto& d = o.case1->data;
    ordered_json c1;
    ordered_json ap = ordered_json::array();
    for (const auto& [plus, minus] : d.alpha_poles) ap.push_back({str(plus), str(minus)});
    c1["alpha_poles"] = ap;
    c1["alpha_infinity"] = {str(d.alpha_infinity.first), str(d.alpha_infinity.second)};
    c1["D"] = d.D();
    ordered_json as = ordered_json::array();
    for (const auto& a : d.assignments) as.push_back(assignment_json(a));
    c1["assignments"] = as;
    ordered_json om = ordered_json::array();
    for (const auto& w : d.omega_candidates) om.push_back(str(w));
    c1["omega_candidates"] = om;
    ordered_json wit = ordered_json::array();
    for (const auto& w : o.case1->witnesses) {
      wit.push_back({{"n", w.assignment.n}, {"omega", str(w.omega)}, {"P", str(w.P)}, {"solution", to_string(w.solution)}});
    }
    c1["witnesses"] = wit;
    c1["succeeded"] = !o.case1->witnesses.empty();
    j["case1"] = c1;
  }
  if (o.case2) {
    const auto& c = *o.case2;
    ordered_json c2;
    c2["E_poles"] = c.data.E_poles;
    c2["E_infinity"] = c.data.E_infinity;
    c2["D"] = c.data.D();
    if (c.assignment) c2["assignment"] = assignment_json(*c.assignment);
    if (c.solved()) {
      c2["theta"] = str(c.theta);
      c2["P"] = str(c.P);
      c2["phi"] = str(c.phi);
      if (c.omegas) {
        c2["omega_plus"] = str(c.omegas->first);
        c2["omega_minus"] = str(c.omegas->second);
      }
      ordered_json sols = ordered_json::array();
      for (const auto& s : c.solutions) sols.push_back(to_string(s));
      c2["solutions"] = sols;
    }
    c2["succeeded"] = c.solved();
    j["case2"] = c2;
  }
  return j;
}

std::vector<std::string> split_alternatives(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto bar = s.find('|', start);
    out.push_back(s.substr(start, bar - start));
    if (bar == std::string::npos) return out;
    start = bar + 1;
  }
}

std::string time_var(const Problem& p) {
  if (p.hamiltonian) return p.hamiltonian->var;
  if (p.riccati) return p.riccati->var;
  if (p.equation) return p.equation->var;
  return "t";
}

GridSpec time_line(const Report& r, const Problem& p, int count, bool avoid_mu0) {
  double lo = std::max(p.t_lo, r.window.lo + 1e-3);
  double hi = std::min(p.t_hi, r.window.hi - 1e-3);
  GridSpec g = GridSpec::line(r.window.variable, lo, hi, count);
  if (avoid_mu0) {
    g.avoid = "mu0";
    g.min_abs = kMinAbsMu;
  }
  return g;
}

void add_check(Report& r, CheckSpec spec) { r.checks.push_back(run_check(spec, r.context())); }

Annotation evaluate_claim(const Claim& c, const Report& r, const Problem& p) {
  Annotation a;
  a.name = c.name;
  a.printed = to_string(c.printed);
  a.tolerance = kClaimTolerance;
  a.note = c.note;
  std::string var = depends_on(c.printed, "tau") ? "tau" : time_var(p);

  std::optional<std::string> chosen;
  for (const auto& f : split_alternatives(c.field)) {
    auto it = r.fields.find(f);
    if (it == r.fields.end()) continue;
    if (!chosen) chosen = f;
    if (structurally_equal(c.printed, it->second, var)) {
      chosen = f;
      a.structural_match = true;
      break;
    }
  }
  if (chosen) a.computed = to_string(r.fields.at(*chosen));

  if (c.oracle == "structural") {
    a.max_residual = a.structural_match ? 0.0 : 1.0;
    a.verdict = a.structural_match ? "agrees" : "formula-discrepant";
    return a;
  }
  CheckContext ctx = r.context();
  ctx.fields["claim"] = c.printed;
  CheckSpec spec;
  spec.name = c.name;
  spec.tolerance = kClaimTolerance;
  spec.grid = time_line(r, p, 50, r.fields.count("mu0") > 0);
  if (c.oracle == "ode") {
    spec.kind = "ode";
    spec.inputs = {"claim"};
  } else if (c.oracle == "tau-ode") {
    // residual in the algebrized equation
    ctx.equation = transforms::GeneralODE2{r.fields.at("b1"), r.fields.at("b0"), "tau"};
    spec.kind = "ode";
    spec.inputs = {"claim"};
    spec.grid = GridSpec::line("tau", kTauLo, kTauHi, 50);
  } else if (c.oracle == "riccati-alpha") {
    spec.kind = c.oracle;
    spec.inputs = {"claim"};
  } else if (c.oracle == "riccati-beta") {
    spec.kind = c.oracle;
    spec.inputs = {"alpha0", "claim"};
  } else if (c.oracle == "riccati-gamma") {
    spec.kind = c.oracle;
    spec.inputs = {"beta0", "claim"};
  } else {
    throw std::invalid_argument("unknown claim oracle " + c.oracle);
  }
  auto res = run_check(spec, ctx);
  a.max_residual = res.max_residual;
  a.verdict = res.pass ? "agrees" : "formula-discrepant";
  if (c.alternative) {
    ctx.equation = c.alternative;
    spec.kind = "ode";
    spec.inputs = {"claim"};
    spec.grid = GridSpec::line(c.alternative->var, p.t_lo, p.t_hi, 50);
    auto alt = run_check(spec, ctx);
    std::string line = c.alternative_label + ": max residual " + fmt(alt.max_residual) + (alt.pass ? " (solves it)" : "");
    a.note = a.note.empty() ? line : a.note + "; " + line;
  }
  return a;
}

void add_claims(Report& r, const Problem& p, const std::string& stage) {
  for (const auto& c : p.claims) {
    if (c.stage == stage) r.annotations.push_back(evaluate_claim(c, r, p));
  }
}

void propagator_checks(Report& r, const Problem& p, bool with_oracles) {
  const std::string tv = r.window.variable;
  auto line = time_line(r, p, 50, false);
  auto safe = time_line(r, p, 50, true);
  if (r.fields.count("mu0")) add_check(r, {"mu0_characteristic", "ode", {"mu0"}, line, kOdeTolerance, {}, {}});
  if (r.fields.count("mu1")) add_check(r, {"mu1_characteristic", "ode", {"mu1"}, line, kOdeTolerance, {}, {}});
  add_check(r, {"riccati_alpha0", "riccati-alpha", {"alpha0"}, safe, kRiccatiTolerance, {}, {}});
  add_check(r, {"riccati_beta0", "riccati-beta", {"alpha0", "beta0"}, safe, kRiccatiTolerance, {}, {}});
  add_check(r, {"riccati_gamma0", "riccati-gamma", {"beta0", "gamma0"}, safe, kRiccatiTolerance, {}, {}});
  add_check(r, {"beta0_mu0", "beta-mu", {"beta0", "mu0"}, safe, 1e-12, {}, {}});

  GridSpec cube;
  cube.axes = {{"x", -1, 1, 5}, {"y", -1, 1, 5}, line.axes[0]};
  cube.axes[2].count = 5;
  cube.avoid = "mu0";
  cube.min_abs = kMinAbsMu;
  add_check(r, {"pde", "pde", {"green"}, cube, 1e-4, {{"hx", 1e-3}, {"ht", p.pde_ht}}, {}});
  if (!with_oracles) return;

  add_check(r, {"wronskian", "wronskian", {"mu0", "mu1"}, GridSpec::line(tv, 0, line.axes[0].hi, 13), 1e-8, {}, {}});
  add_check(r, {"asymptotics", "asymptotic", {"alpha0", "beta0", "gamma0"}, {}, 1e-3, {}, {}});
  std::vector<double> pts;
  for (double t : {0.3, 0.5, 1.0}) {
    if (r.window.contains(t)) pts.push_back(t);
  }
  if (pts.empty()) return;
  std::map<std::string, double> rk{{"t_start", 1e-7}, {"step", 2e-3}};
  add_check(r, {"rk4_alpha0_beta0", "rk4", {"alpha0", "beta0"}, {}, 1e-6, rk, pts});

  // gamma0 is adjudicated by the oracle, not assumed.
  auto g = run_check({"rk4_gamma0", "rk4", {"gamma0"}, {}, 1e-6, rk, pts}, r.context());
  Annotation a;
  a.name = "gamma0 closed form vs RK4";
  a.printed = to_string(r.fields.at("gamma0"));
  a.computed = "RK4 oracle";
  a.max_residual = g.max_residual;
  a.tolerance = 1e-6;
  a.verdict = g.pass ? "agrees" : "formula-discrepant";
  a.note = g.detail;
  r.annotations.push_back(a);
}

transforms::GeneralODE2 time_equation(const Problem& p) {
  if (p.equation) return *p.equation;
  if (p.hamiltonian) return p.hamiltonian->characteristic().as_general();
  throw std::invalid_argument("problem has neither an equation nor a hamiltonian");
}

}  // namespace

bool unsupported(const Report& r) {
  return !r.kovacic.is_null() && r.kovacic.value("case", std::string()) == "UnsupportedStructure";
}

Report run_solve(const Problem& p) {
  Report r;
  r.command = "solve";
  r.target = p.target;
  r.parameters = p.parameters;
  r.hamiltonian = p.hamiltonian;
  r.notes = p.notes;
  auto time_eq = time_equation(p);
  r.equation = time_eq;
  r.window.variable = time_eq.var;

  transforms::GeneralODE2 g = time_eq;
  if (p.cov) {
    g = transforms::algebrize(time_eq, *p.cov);
    r.window = r.window.intersect(p.cov->window);
    r.window.variable = time_eq.var;
    r.fields["b1"] = g.b1;
    r.fields["b0"] = g.b0;
  }
  auto red = transforms::reduce_general(g);
  r.fields["r"] = red.rho;
  r.fields["multiplier"] = red.multiplier;

  kovacic::KovacicOutcome outcome;
  try {
    outcome = kovacic::solve(red.reduced(), {p.force_case2});
  } catch (const NonRationalResult& e) {
    outcome.case_label = kovacic::CaseLabel::UnsupportedStructure;
    outcome.unsupported_reason = e.what();
  }
  r.kovacic = kovacic_json(outcome);
  if (outcome.case2 && outcome.case2->omegas) {
    r.fields["omega_plus"] = from_rational(outcome.case2->omegas->first);
    r.fields["omega_minus"] = from_rational(outcome.case2->omegas->second);
  }

  for (std::size_t k = 0; k < outcome.solutions.size(); ++k) {
    std::string n = std::to_string(k + 1);
    r.fields["xi" + n] = outcome.solutions[k];
    Expr mu_hat = simplify(outcome.solutions[k] * red.multiplier);
    Expr sol = mu_hat;
    if (p.cov) {
      r.fields["mu_hat" + n] = mu_hat;
      auto back = transforms::back_substitute(mu_hat, *p.cov, g.var, time_eq.var);
      sol = back.result;
      r.window = r.window.intersect(back.window);
      if (!back.complete) r.notes.push_back("solution" + n + ": back-substitution left tau-side terms");
    }
    r.fields["solution" + n] = sol;
  }
  if (p.basis) {
    r.fields["basis1"] = p.basis->first;
    r.fields["basis2"] = p.basis->second;
    if (!p.basis_source.empty()) r.notes.push_back("basis1, basis2: " + p.basis_source);
  }

  for (std::size_t k = 0; k < outcome.solutions.size(); ++k) {
    std::string n = std::to_string(k + 1);
    add_check(r, {"kovacic_residual" + n, "reduced", {"xi" + n}, GridSpec::line(g.var, p.t_lo, p.t_hi, 50),
                  kOdeTolerance, {}, {}});
    add_check(r, {"solution" + n, "ode", {"solution" + n}, time_line(r, p, 50, false), kOdeTolerance, {}, {}});
  }
  if (p.basis) {
    add_check(r, {"basis1", "ode", {"basis1"}, time_line(r, p, 50, false), kOdeTolerance, {}, {}});
    add_check(r, {"basis2", "ode", {"basis2"}, time_line(r, p, 50, false), kOdeTolerance, {}, {}});
  }
  add_claims(r, p, "solve");
  return r;
}

Report run_propagator(const Problem& p) {
  if (p.riccati) {
    if (!p.riccati_solution) {
      throw ProblemError(ProblemError::Kind::MissingRole, "riccati-general propagator needs a known solution");
    }
    Report r;
    r.command = "propagator";
    r.target = p.target;
    r.parameters = p.parameters;
    r.notes = p.notes;
    auto h = propagator::QuadraticHamiltonian::from_riccati(*p.riccati);
    r.hamiltonian = h;
    r.equation = h.characteristic().as_general();
    r.window.variable = h.var;
    propagator::RiccatiDirectOptions opts;
    opts.mu_scale = p.mu_scale;
    opts.check_points = {p.t_lo, (p.t_lo + p.t_hi) / 2, p.t_hi};
    auto d = propagator::riccati_direct(*p.riccati_solution, h, opts);
    r.fields["mu0"] = d.mu;
    r.fields["alpha0"] = d.triple.alpha0;
    r.fields["beta0"] = d.triple.beta0;
    r.fields["gamma0"] = d.triple.gamma0;
    r.fields["green"] = propagator::build_green(d.triple, d.mu).closed_form;
    if (!d.gamma_closed) r.notes.push_back("gamma0 has no closed form here and is kept as a quadrature");
    propagator_checks(r, p, false);
    add_claims(r, p, "solve");
    add_claims(r, p, "propagator");
    return r;
  }
  if (!p.hamiltonian) {
    throw ProblemError(ProblemError::Kind::Malformed, "the propagator command needs a hamiltonian or riccati-general problem");
  }

  Report r = run_solve(p);
  r.command = "propagator";
  std::optional<std::pair<Expr, Expr>> basis;
  if (r.fields.count("solution1") && r.fields.count("solution2")) {
    basis = {r.fields.at("solution1"), r.fields.at("solution2")};
  } else if (p.basis) {
    basis = p.basis;
  }
  if (!basis) {
    throw UnsupportedStructure("no Liouvillian basis of the characteristic equation: " +
                               r.kovacic.value("unsupported_reason", std::string("Kovacic cases 1-2 failed")));
  }
  auto norm = propagator::normalize_solutions(basis->first, basis->second, *p.hamiltonian, r.window, p.mu1_at_zero);
  auto triple = propagator::build_triple(norm.solutions, *p.hamiltonian);
  r.fields["mu0"] = norm.solutions.mu0;
  r.fields["mu1"] = norm.solutions.mu1;
  r.fields["alpha0"] = triple.alpha0;
  r.fields["beta0"] = triple.beta0;
  r.fields["gamma0"] = triple.gamma0;
  r.fields["green"] = propagator::build_green(triple, norm.solutions.mu0).closed_form;
  auto c0 = propagator::value_at_zero(p.hamiltonian->c, p.hamiltonian->var);
  if (!c0 || !c0->is_zero()) {
    r.fields["gamma0_asymptotic"] = propagator::gamma0_from_asymptotics(norm.solutions, *p.hamiltonian);
  }
  std::ostringstream coef;
  coef << "mu0 = (" << norm.mu0_coefficients.first.to_string() << ") f + (" << norm.mu0_coefficients.second.to_string()
       << ") g, mu1 = (" << norm.mu1_coefficients.first.to_string() << ") f + ("
       << norm.mu1_coefficients.second.to_string() << ") g";
  r.notes.push_back(coef.str());
  propagator_checks(r, p, true);
  add_claims(r, p, "propagator");
  return r;
}

Problem problem_from_spec(const parser::ProblemSpec& spec, const std::string& name) {
  using parser::ProblemKind;
  Problem p;
  p.target = name;
  for (const auto& [k, v] : spec.parameters) p.parameters[k] = v.get_str();
  auto coef = [&](const std::string& role) { return from_ast(*spec.coefficient_tree(role), spec.parameters); };
  const std::string& v = spec.variable;
  switch (spec.kind) {
    case ProblemKind::ReducedOde:
      p.equation = transforms::GeneralODE2{Expr(0L), -coef("r"), v};
      break;
    case ProblemKind::GeneralOde:
    case ProblemKind::Characteristic:
      p.equation = transforms::GeneralODE2{coef("b1"), coef("b0"), v};
      break;
    case ProblemKind::Hamiltonian:
      p.hamiltonian = propagator::QuadraticHamiltonian{coef("a"), coef("b"), coef("c"), std::nullopt, v};
      break;
    case ProblemKind::RiccatiGeneral:
      p.riccati = transforms::RiccatiGeneral{coef("a0"), coef("a1"), coef("a2"), v};
      if (spec.solution) p.riccati_solution = parse(*spec.solution, spec.parameters);
      break;
  }
  if (spec.change_of_variable) {
    algebra::BigRational rate(1);
    if (spec.cov_rate) {
      auto value = exact_value(parse(*spec.cov_rate, spec.parameters));
      if (!value || !value->is_rational()) {
        throw ProblemError(ProblemError::Kind::Malformed, "cov_rate must be a rational number");
      }
      rate = value->to_rational();
    }
    p.cov = transforms::Catalog::builtin().instantiate(*spec.change_of_variable, rate);
  }
  return p;
}

}  // namespace liouvprop::cli
