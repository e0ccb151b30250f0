#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "liouvprop/cli/commands.hpp"
#include "liouvprop/cli/pipeline.hpp"
#include "liouvprop/cli/properties.hpp"
#include "liouvprop/cli/targets.hpp"
#include "liouvprop/errors.hpp"

using namespace liouvprop;
using namespace liouvprop::cli;

namespace {

struct Options {
  std::string format = "json";
  std::string output;
  std::vector<std::string> params;
  std::vector<std::string> tolerances;
  int points = 0;
  std::string command;
};

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ProblemError(ProblemError::Kind::Malformed, "expected name=value, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::map<std::string, algebra::BigRational> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, algebra::BigRational> out;
  for (const auto& item : items) {
    auto [name, value] = split_assignment(item);
    try {
      out[name] = algebra::parse_rational(value);
    } catch (const std::exception&) {
      throw ProblemError(ProblemError::Kind::Malformed, "parameter " + name + " is not a rational: " + value);
    }
  }
  return out;
}

Overrides overrides(const Options& o) {
  Overrides ov;
  for (const auto& item : o.tolerances) {
    auto [name, value] = split_assignment(item);
    try {
      ov.tolerances[name] = std::stod(value);
    } catch (const std::exception&) {
      throw ProblemError(ProblemError::Kind::Malformed, "tolerance " + name + " is not a number: " + value);
    }
  }
  if (o.points > 0) ov.points = o.points;
  return ov;
}

void emit(const std::string& text, const Options& o) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ProblemError(ProblemError::Kind::Malformed, "cannot write " + o.output);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ProblemError(ProblemError::Kind::Malformed, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int finish(Report r, const Options& o) {
  apply_overrides(r, overrides(o));
  emit(render(r, o.format), o);
  return exit_code(r);
}

int run_problem(const Problem& p, const std::string& command, const Options& o) {
  std::string cmd = command.empty() ? p.command : command;
  if (cmd == "solve") return finish(run_solve(p), o);
  if (cmd == "propagator") return finish(run_propagator(p), o);
  throw ProblemError(ProblemError::Kind::Malformed, "command must be solve or propagator");
}

// Files: parameter overrides must name a declared parameter.
Problem problem_from_file(const std::string& path, const Options& o) {
  auto spec = parser::parse_problem(read_file(path));
  for (const auto& [name, value] : parse_params(o.params)) {
    if (!spec.parameters.count(name)) {
      throw ProblemError(ProblemError::Kind::UnknownKey, "problem declares no parameter '" + name + "'");
    }
    spec.parameters[name] = value;
  }
  return problem_from_spec(spec, path);
}

Problem inline_reduced(const std::string& r, const Options& o) {
  auto params = parse_params(o.params);
  Problem p;
  p.target = "r = " + r;
  p.equation = transforms::GeneralODE2{liouville::Expr(0L), -liouville::parse(r, params), "tau"};
  for (const auto& [k, v] : params) p.parameters[k] = v.get_str();
  return p;
}

void add_output_options(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app->add_option("-o,--output", o.output, "write the report to a file");
  app->add_option("--tol", o.tolerances, "tolerance override, check=value or *=value");
  app->add_option("--points", o.points, "sample count for one-dimensional check grids");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouvillian propagators: Kovacic solver, Hamiltonian algebrization and verification"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* solve = app.add_subcommand("solve", "solve a reduced, general or characteristic equation");
  std::string input, r_text;
  solve->add_option("file", input, "problem file");
  solve->add_option("--r", r_text, "reduced equation xi'' = r xi in tau, given inline");
  solve->add_option("-p,--param", o.params, "parameter override name=rational");
  add_output_options(solve, o);
  solve->callback([&] {
    action = [&] {
      if (!r_text.empty()) return run_problem(inline_reduced(r_text, o), "solve", o);
      if (input.empty()) throw ProblemError(ProblemError::Kind::Malformed, "solve needs a file or --r");
      auto p = problem_from_file(input, o);
      if (p.riccati) throw ProblemError(ProblemError::Kind::Malformed, "riccati-general problems take the propagator command");
      return run_problem(p, "solve", o);
    };
  });

  auto* prop = app.add_subcommand("propagator", "build and verify the Green function of a Hamiltonian");
  std::string prop_input;
  prop->add_option("file", prop_input, "problem file")->required();
  prop->add_option("-p,--param", o.params, "parameter override name=rational");
  add_output_options(prop, o);
  prop->callback([&] {
    action = [&] {
      auto p = problem_from_file(prop_input, o);
      if (!p.hamiltonian && !p.riccati) {
        throw ProblemError(ProblemError::Kind::Malformed, "propagator needs kind hamiltonian or riccati-general");
      }
      return run_problem(p, "propagator", o);
    };
  });

  auto* ver = app.add_subcommand("verify", "re-run the checks recorded in a JSON report");
  std::string report_path;
  ver->add_option("report", report_path, "report file")->required();
  add_output_options(ver, o);
  ver->callback([&] {
    action = [&] {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(report_path));
      } catch (const nlohmann::json::exception& e) {
        throw SchemaMismatch(std::string("not a JSON report: ") + e.what());
      }
      auto v = verify_report(j);
      for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& c : v.changed) std::cerr << "changed verdict: " << c << "\n";
      if (v.report.checks.empty()) {
        std::cerr << "pass (0 checks)\n";
        return static_cast<int>(kPass);
      }
      emit(render(v.report, o.format), o);
      std::cerr << (v.exit_code == kPass ? "pass" : "fail") << " (" << v.report.checks.size() << " checks)\n";
      return v.exit_code;
    };
  });

  std::string lambda = "1", omega = "1";
  auto* inc = app.add_subcommand("ince", "Ince equation of the degenerate parametric oscillator");
  inc->add_option("--lambda", lambda, "modulation (rational)");
  inc->add_option("--omega", omega, "frequency (rational)");
  inc->add_option("--command", o.command, "solve (default) or propagator");
  add_output_options(inc, o);
  inc->callback([&] {
    action = [&] {
      return run_problem(ince(algebra::parse_rational(lambda), algebra::parse_rational(omega)), o.command, o);
    };
  });

  auto* incp = app.add_subcommand("ince-propagator", "Green function of the degenerate parametric oscillator");
  incp->add_option("--lambda", lambda, "modulation (rational)");
  incp->add_option("--omega", omega, "frequency (rational)");
  add_output_options(incp, o);
  incp->callback([&] {
    action = [&] {
      return run_problem(ince(algebra::parse_rational(lambda), algebra::parse_rational(omega)), "propagator", o);
    };
  });

  int toy_id = 1;
  std::string a0, a, l;
  auto* toy_cmd = app.add_subcommand("toy", "Riccati toy models 1..5");
  toy_cmd->add_option("--id", toy_id, "toy number")->required()->check(CLI::Range(1, 5));
  toy_cmd->add_option("--a0", a0, "toy 2 parameter");
  toy_cmd->add_option("--a", a, "toy 5 amplitude");
  toy_cmd->add_option("--l", l, "toy 5 rate");
  toy_cmd->add_option("-p,--param", o.params, "parameter override name=rational");
  add_output_options(toy_cmd, o);
  toy_cmd->callback([&] {
    action = [&] {
      auto params = parse_params(o.params);
      if (!a0.empty()) params["a0"] = algebra::parse_rational(a0);
      if (!a.empty()) params["a"] = algebra::parse_rational(a);
      if (!l.empty()) params["l"] = algebra::parse_rational(l);
      for (const auto& [name, value] : params) {
        bool known = (toy_id == 2 && name == "a0") || (toy_id == 5 && (name == "a" || name == "l"));
        if (!known) throw ProblemError(ProblemError::Kind::UnknownKey, "toy " + std::to_string(toy_id) + " has no parameter '" + name + "'");
      }
      return run_problem(toy(toy_id, params), "", o);
    };
  });

  long n = 0;
  auto* tn_cmd = app.add_subcommand("tn", "characteristic equation mu'' + t^n mu = 0");
  tn_cmd->add_option("--n", n, "exponent: 0, -2 or -4")->required();
  tn_cmd->add_option("--command", o.command, "solve or propagator");
  add_output_options(tn_cmd, o);
  tn_cmd->callback([&] { action = [&] { return run_problem(tn(n), o.command, o); }; });

  std::uint64_t seed = 20240611;
  auto* self = app.add_subcommand("selftest", "randomized property suites");
  self->add_option("--seed", seed, "random seed");
  self->callback([&] {
    action = [&] {
      bool ok = true;
      for (const auto& p : run_properties(seed)) {
        std::cout << (p.pass() ? "PASS " : "FAIL ") << p.name << " (" << p.cases << " cases, " << p.failures
                  << " failures)";
        if (!p.detail.empty()) std::cout << ": " << p.detail;
        std::cout << "\n";
        ok = ok && p.pass();
      }
      return ok ? static_cast<int>(kPass) : static_cast<int>(kCheckFailure);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  try {
    return action();
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << " at line " << e.span().line << ", column " << e.span().column;
    if (!e.expected().empty()) {
      std::cerr << "; expected";
      for (const auto& x : e.expected()) std::cerr << " " << x;
    }
    std::cerr << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}
