#include "liouvprop/cli/commands.hpp"

#include "liouvprop/cli/pipeline.hpp"
#include "liouvprop/errors.hpp"

namespace liouvprop::cli {

void apply_overrides(Report& r, const Overrides& o) {
  if (o.empty()) return;
  auto ctx = r.context();
  for (auto& c : r.checks) {
    CheckSpec spec = c.spec;
    bool changed = false;
    for (const auto& [name, tol] : o.tolerances) {
      if (name == "*" || name == spec.name) {
        spec.tolerance = tol;
        changed = true;
      }
    }
    if (o.points && spec.grid.axes.size() == 1) {
      spec.grid.axes[0].count = *o.points;
      changed = true;
    }
    if (changed) c = run_check(spec, ctx);
  }
}

int exit_code(const Report& r) {
  if (r.command == "solve" && unsupported(r)) return kUnsupported;
  return r.all_pass() ? kPass : kCheckFailure;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const UnsupportedStructure*>(&e) || dynamic_cast<const NonRationalResult*>(&e) ||
      dynamic_cast<const DegenerateBasis*>(&e) || dynamic_cast<const UnsupportedFactorization*>(&e)) {
    return kUnsupported;
  }
  return kInputError;
}

VerifyOutcome verify_report(const nlohmann::json& j) {
  VerifyOutcome out;
  out.report = report_from_json(j);
  if (out.report.checks.empty()) {
    out.warnings.push_back("report records no checks; nothing to verify");
    return out;
  }
  auto ctx = out.report.context();
  for (auto& c : out.report.checks) {
    bool recorded = c.pass;
    c = run_check(c.spec, ctx);
    if (c.pass != recorded) out.changed.push_back(c.spec.name);
  }
  out.exit_code = out.report.all_pass() ? kPass : kCheckFailure;
  return out;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "text") return to_text(r);
  return to_json(r).dump(2) + "\n";
}

}  // namespace liouvprop::cli
