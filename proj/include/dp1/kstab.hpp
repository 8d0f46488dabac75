#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dp1/alphac.hpp"
#include "dp1/coneops.hpp"
#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

// (-K . A) / (A . A). Throws NotAmple, which also guards A . A > 0.
Rat slope_nu(const DivClass& a);

struct NefCondition {
  bool holds = false;
  // -K - (2/3) nu(A) A; literally the same class for every positive scaling
  // of A, which is what makes the whole verdict scale-invariant.
  DivClass test_divisor;
  std::optional<CurveClass> witness;  // most negative curve when !holds
  Rat pairing;
};

NefCondition nef_condition(const DivClass& a);

// 2 / (3 + a1), the point bound on alpha(S, muA).
Rat point_alpha_bound(const Decomposition& d);

struct ZClassCheck {
  Rat lhs;  // 1 / (3a1 + 2 s_A + 1 + 2a)
  Rat rhs;  // (2/3) nu(muA)
  bool holds = false;
};

// Consequence of the nef condition paired against 6h - 3e1 - 2(e2+...+e8);
// meaningful as a self-consistency check when nef_condition(a) holds.
ZClassCheck z_class_inequality(const Decomposition& d, const DivClass& a);

// The criterion is sufficient only, so its failure proves nothing.
enum class Outcome { KStable, Inconclusive };

std::string outcome_name(Outcome o);

struct TraceEntry {
  std::string label;
  std::string value;
};

struct VerdictOptions {
  // Run the LP multiplicity oracle next to the closed form.
  bool with_oracle = true;
  // Widen the oracle's candidate set to the conic classes.
  bool extended_oracle = false;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  Rat mu;
  Rat nu_a;     // nu(A)
  Rat nu_mu_a;  // nu(muA) = nu(A) / mu
  NefCondition nef;
  Decomposition decomp;
  // alpha_c values in both normalizations: closed.value is alpha_c(S, muA),
  // alpha_c_a = mu * closed.value is alpha_c(S, A).
  AlphaClosed closed;
  Rat alpha_c_a;
  Rat point_bound;       // 2/(3+a1)
  Rat alpha_lower_mu_a;  // min(closed.value, point_bound)
  Rat alpha_lower_a;     // mu * alpha_lower_mu_a
  // alpha lower bound strictly exceeds (2/3) nu, same in either
  // normalization; informational, the nef condition alone decides.
  bool dervan_condition_i = false;
  std::optional<ZClassCheck> z_check;       // present when nef holds
  std::optional<AlphaReport> alpha_report;  // present with_oracle
  std::vector<TraceEntry> trace;
};

// Full pipeline: decomposition, closed-form alpha, slope, nef test.
// Outcome is KStable exactly when the nef condition holds. Throws NotAmple.
Verdict verdict(const DivClass& a, const VerdictOptions& opts = {});

}  // namespace dp1
