#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dp1/coneops.hpp"
#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

// Configuration for the built-in property checks. The inject_* fields
// deliberately corrupt inputs so the harness itself can be tested: they must
// turn specific properties red without touching the library proper.
struct SelftestConfig {
  std::uint64_t seed = 1;
  int per_stratum = 2;
  bool extended_oracle = false;
  int inject_drop_curves = 0;       // pretend the curve list lost its tail
  bool inject_perturb_formula = false;  // nudge the closed form pre-comparison
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<PropertyResult> properties;
  bool all_pass = false;
};

SelftestReport run_selftest(const SelftestConfig& cfg);

// Independent mu oracle: doubling bracket plus dyadic bisection on the
// pseudo-effectivity of K + t*A down to width below 1/(2*10^8), then the
// simplest rational in the bracket. Distinct rationals with denominator at
// most 10^4 differ by more than the final width, so the answer is unique in
// that range; callers compare it exactly against the one-shot LP value.
Rat mu_bisection_oracle(const DivClass& a);

// Exact join identity where a one-parameter family crosses a branch wall.
// The family is base + t*dir; at t_wall the tail sum must sit exactly on a
// wall (4 or 1) and the adjacent branch expressions must agree there.
bool wall_join_ok(const DivClass& base, const DivClass& dir, const Rat& t_wall,
                  std::string* detail = nullptr);

}  // namespace dp1
