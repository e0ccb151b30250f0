#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace liouvprop::cli {

struct PropertyResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string detail;

  bool pass() const { return cases > 0 && failures == 0; }
};

/// Randomized and convergence-order property suites, reproducible from seed.
PropertyResult field_axioms(std::uint64_t seed, int cases = 1000);
PropertyResult parser_round_trip(std::uint64_t seed, int cases = 1000);
PropertyResult integrate_identity();
PropertyResult finite_difference_order();
PropertyResult rk4_order();

std::vector<PropertyResult> run_properties(std::uint64_t seed);

}  // namespace liouvprop::cli
