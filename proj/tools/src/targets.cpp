#include "liouvprop/cli/targets.hpp"

#include "liouvprop/errors.hpp"

namespace liouvprop::cli {

using algebra::BigRational;
using liouville::parse;

namespace {

using Params = std::map<std::string, BigRational>;

Claim claim(std::string name, std::string field, const std::string& printed, const Params& params,
            std::string oracle = "structural", std::string stage = "solve") {
  Claim c;
  c.name = std::move(name);
  c.field = std::move(field);
  c.printed = parse(printed, params);
  c.oracle = std::move(oracle);
  c.stage = std::move(stage);
  return c;
}

BigRational param_or(const Params& params, const std::string& key, long fallback) {
  auto it = params.find(key);
  return it == params.end() ? BigRational(fallback) : it->second;
}

}  // namespace

Problem ince(const BigRational& lambda, const BigRational& omega) {
  if (omega <= 0) throw ProblemError(ProblemError::Kind::Malformed, "omega must be positive");
  if (lambda <= 0) throw ProblemError(ProblemError::Kind::Malformed, "lambda must be positive");
  Params p{{"l", lambda}, {"w", omega}, {"k", BigRational(lambda / omega)}};
  Problem pr;
  pr.target = "ince";
  pr.parameters = {{"lambda", lambda.get_str()}, {"omega", omega.get_str()}};
  pr.hamiltonian = propagator::QuadraticHamiltonian{parse("(1+(l/w)*cos(2*w*t))/2", p),
                                                    parse("w^2*(1-(l/w)*cos(2*w*t))/2", p),
                                                    parse("(l/2)*sin(2*w*t)", p), std::nullopt, "t"};
  pr.cov = transforms::Catalog::builtin().instantiate("tan", omega);
  pr.force_case2 = true;
  pr.pde_ht = 1e-4;
  // tan(w t) is regular on (0, pi/(2w)); keep the sampling window inside it
  double hi = 1.5707963267948966 / omega.get_d();
  pr.t_lo = 0.2 * std::min(1.0, hi / 1.3);
  pr.t_hi = std::min(1.2, 0.95 * hi);

  auto& c = pr.claims;
  if (lambda == omega) {
    c.push_back(claim("algebrized b1", "b1", "4*tau/(1+tau^2)", p));
    c.push_back(claim("algebrized b0", "b0", "-2/(1+tau^2)^2", p));
    c.push_back(claim("reduced r", "r", "(2*tau^2+4)/(1+tau^2)^2", p));
    c.push_back(claim("case 2 omega-", "omega_minus|omega_plus", "2*(tau^2-tau+1)/(tau^3-tau^2+tau-1)", p));
    c.push_back(claim("case 2 omega+", "omega_plus|omega_minus", "2*(tau^2+tau+1)/(tau^3+tau^2+tau+1)", p));
    c.push_back(claim("reduced solution y1", "xi1|xi2", "exp(-arctan(tau))*(tau-1)*sqrt(1+tau^2)", p));
    c.push_back(claim("reduced solution y2", "xi1|xi2", "exp(arctan(tau))*(tau+1)*sqrt(1+tau^2)", p));
    c.push_back(claim("algebrized solution 1", "mu_hat1|mu_hat2", "exp(-arctan(tau))*(tau-1)/sqrt(1+tau^2)", p,
                      "tau-ode"));
    c.push_back(claim("algebrized solution 2", "mu_hat1|mu_hat2", "exp(arctan(tau))*(tau+1)/sqrt(1+tau^2)", p,
                      "tau-ode"));
    c.push_back(claim("time solution 1", "solution1|solution2", "exp(-l*t)*(sin(l*t)-cos(l*t))", p, "ode"));
    c.push_back(claim("time solution 2", "solution1|solution2", "exp(l*t)*(sin(l*t)+cos(l*t))", p, "ode"));

    const std::string mu0 = "(sinh(l*t)*cos(l*t)+cosh(l*t)*sin(l*t))";
    const std::string mu1 = "(sinh(l*t)*sin(l*t)+cosh(l*t)*cos(l*t))";
    c.push_back(claim("mu0", "mu0", mu0, p, "ode", "propagator"));
    c.push_back(claim("mu1", "mu1", mu1, p, "ode", "propagator"));
    c.push_back(claim("alpha0 from the printed propagator", "alpha0",
                      "(cos(l*t)*cosh(l*t)-sin(l*t)*sinh(l*t))/(2*" + mu0 + ")", p, "riccati-alpha", "propagator"));
    c.push_back(claim("beta0 from the printed propagator", "beta0", "-1/" + mu0, p, "riccati-beta", "propagator"));
    Claim g = claim("gamma0 from the printed propagator", "gamma0",
                    "(sin(l*t)*sinh(l*t)-cos(l*t)*cosh(l*t))/(2*" + mu0 + ")", p, "riccati-gamma", "propagator");
    g.note = "y^2 coefficient of the printed exponent";
    c.push_back(g);
  } else {
    Claim b1 = claim("algebrized b1", "b1",
                     "(2*(k-1)*tau^3-(3*k+1)*tau)/((1+tau^2)*((k-1)*tau^2-k-1))", p);
    b1.note = "as printed; the computed numerator carries 2*(3k+1)*tau";
    c.push_back(b1);
    c.push_back(claim("algebrized b0", "b0",
                      "-((1-3*k^2+k+k^3)*tau^2+1-3*k^2-k-k^3)/((1+tau^2)^2*((k-1)*tau^2-k-1))", p));
    c.push_back(claim("reduced r", "r",
                      "((k^4-4*k^3+7*k^2-4*k)*tau^4+(10*k^2-2*k^4)*tau^2+4*k+7*k^2+4*k^3+k^4)/"
                      "((1+tau^2)^2*((k-1)*tau^2-1-k)^2)",
                      p));
    c.push_back(claim("algebrized solution 1", "mu_hat1|mu_hat2", "exp(-k*arctan(tau))*(tau-1)/sqrt(1+tau^2)", p,
                      "tau-ode"));
    c.push_back(claim("algebrized solution 2", "mu_hat1|mu_hat2", "exp(k*arctan(tau))*(tau+1)/sqrt(1+tau^2)", p,
                      "tau-ode"));
  }
  return pr;
}

Problem toy(int id, const Params& params) {
  Problem pr;
  pr.target = "toy" + std::to_string(id);
  pr.command = "propagator";
  Params p;
  auto ric = [&](const std::string& a0, const std::string& a1, const std::string& a2) {
    pr.riccati = transforms::RiccatiGeneral{parse(a0, p), parse(a1, p), parse(a2, p), "t"};
  };
  auto add = [&](std::string name, std::string field, const std::string& printed, std::string oracle) {
    pr.claims.push_back(claim(std::move(name), std::move(field), printed, p, std::move(oracle), "propagator"));
  };
  switch (id) {
    case 1:
      ric("0", "0", "-cos(t)");
      pr.riccati_solution = parse("1/sin(t)");
      pr.mu_scale = parse("2");
      add("mu", "mu0", "2*sin(t)", "ode");
      add("alpha", "alpha0", "1/sin(t)", "riccati-alpha");
      add("beta", "beta0", "-1/(2*sin(t))", "riccati-beta");
      add("gamma", "gamma0", "1/(16*sin(t))", "riccati-gamma");
      break;
    case 2: {
      p["a0"] = param_or(params, "a0", 1);
      pr.parameters["a0"] = p["a0"].get_str();
      ric("0", "0", "-2*(t+a0)");
      pr.riccati_solution = parse("1/(t^2+2*a0*t)", p);
      add("mu", "mu0", "t^2+2*a0*t", "ode");
      add("alpha", "alpha0", "1/(t^2+2*a0*t)", "riccati-alpha");
      add("beta", "beta0", "-1/(t^2+2*a0*t)", "riccati-beta");
      add("gamma", "gamma0", "1/(4*(t^2+2*a0*t))", "riccati-gamma");
      break;
    }
    case 3:
      ric("-2*cos(t)", "0", "-1/cos(t)");
      pr.riccati_solution = parse("cos(t)^2/sin(t)");
      pr.mu_scale = parse("1/2");
      add("mu", "mu0", "sin(t)/2", "ode");
      add("alpha", "alpha0", "cos(t)^2/sin(t)", "riccati-alpha");
      add("beta", "beta0", "-2/sin(t)", "riccati-beta");
      add("gamma", "gamma0",
          "4/(sin(t)*cos(t)^2) - 16*tan(t)/cos(t) + 16*log(cos(t/2)-sin(t/2)) - 16*log(sin(t/2)+cos(t/2))",
          "riccati-gamma");
      pr.claims.back().note = "printed in x; read as t";
      break;
    case 4:
      ric("0", "-2*tan(t)", "-1/cos(t)");
      pr.riccati_solution = parse("cos(t)^2/sin(t)");
      pr.mu_scale = parse("1/2");
      pr.notes.push_back(
          "the printed Riccati equation has alpha^2/(4 cos t); its stated alpha solves it only with alpha^2/cos t, "
          "which is what is used here");
      add("mu", "mu0", "sin(t)/2", "ode");
      add("alpha", "alpha0", "cos(t)^2/sin(t)", "riccati-alpha");
      // |cos t| = cos t on the sampling window
      add("beta", "beta0", "-2/(sin(t)*cos(t))", "riccati-beta");
      add("gamma", "gamma0", "1/(sin(t)*cos(t)^4)", "riccati-gamma");
      break;
    case 5: {
      p["a"] = param_or(params, "a", 1);
      p["l"] = param_or(params, "l", 1);
      if (p["l"] == 0) throw ProblemError(ProblemError::Kind::Malformed, "toy 5 needs l != 0");
      pr.parameters["a"] = p["a"].get_str();
      pr.parameters["l"] = p["l"].get_str();
      ric("a*exp(l*t)", "a*t*exp(l*t)", "1");
      pr.riccati_solution = parse("-1/t");
      pr.mu_scale = parse("exp(-a/(2*l^2))", p);
      pr.notes.push_back(
          "the printed Schroedinger equation has a = 1/4 and a real x d/dx term; the Riccati equation fixes "
          "a = -1/4 and the Hamiltonian c from its a1 coefficient");
      add("alpha", "alpha0", "-1/t", "riccati-alpha");
      add("beta", "beta0", "-(1/t)*exp(a*exp(l*t)*(l*t-1)/(2*l^2)+a/(2*l^2))", "riccati-beta");
      add("gamma", "gamma0", "-(1/(4*t))*exp(-a*exp(l*t)*(l*t-1)/l^2-a/l^2)+(a/(4*l))*(exp(l*t)-1)",
          "riccati-gamma");
      break;
    }
    default:
      throw ProblemError(ProblemError::Kind::UnknownKey, "toy id must be 1..5");
  }
  return pr;
}

Problem tn(long n) {
  Params p;
  Problem pr;
  pr.target = "tn";
  pr.parameters = {{"n", std::to_string(n)}};
  std::string b = n == 0 ? "1" : "t^(" + std::to_string(n) + ")";
  pr.hamiltonian = propagator::QuadraticHamiltonian{parse("1/4"), parse(b), Expr(0L), std::nullopt, "t"};
  switch (n) {
    case 0:
      pr.command = "propagator";
      pr.basis = {parse("sin(t)"), parse("cos(t)")};
      pr.basis_source = "closed-form basis {sin t, cos t}";
      pr.mu1_at_zero = algebra::AlgebraicScalar(2L);
      pr.claims.push_back(claim("mu0 = sin(t)/2", "mu0", "sin(t)/2", p, "ode", "propagator"));
      pr.claims.push_back(claim("mu1 = 2 cos(t)", "mu1", "2*cos(t)", p, "ode", "propagator"));
      break;
    case -2: {
      auto basis = [&](const std::string& name, const std::string& text) {
        Claim c = claim(name, "solution1|solution2", text, p, "ode");
        c.alternative = transforms::GeneralODE2{Expr(0L), parse("-1/t^2"), "t"};
        c.alternative_label = "in mu'' = mu/t^2";
        c.note = "basis t^(m+1), t^(-m) with m = (-1+sqrt(5))/2";
        pr.claims.push_back(c);
      };
      pr.notes.push_back(
          "the Kovacic exponents at t = 0 are the roots of s^2 - s + 1 = 0; the printed basis exponents m+1 and -m "
          "are the roots of s^2 - s - 1 = 0, which belong to mu'' = mu/t^2");
      basis("printed basis t^(m+1)", "t^((1+sqrt(5))/2)");
      basis("printed basis t^(-m)", "t^((1-sqrt(5))/2)");
      break;
    }
    case -4:
      pr.basis = {parse("t*cos(1/t)"), parse("t*sin(1/t)")};
      pr.basis_source = "closed-form basis {t cos(1/t), t sin(1/t)}";
      break;
    default:
      throw ProblemError(ProblemError::Kind::UnknownKey, "tn supports n in {0, -2, -4}");
  }
  return pr;
}

}  // namespace liouvprop::cli
