#pragma once

#include <array>
#include <string>
#include <vector>

#include "dp1/coneops.hpp"
#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

// Regimes of the closed forms: s_A > 4, 1 < s_A <= 4, s_A <= 1.
enum class AlphaBranch { High, Mid, Low };

std::string alpha_branch_name(AlphaBranch b);

struct AlphaClosed {
  Rat value;
  AlphaBranch branch = AlphaBranch::Low;
  // Birational and first ruled case, mid regime: the three candidate values
  // whose maximum is taken, with mid_winner the index of the winner (lowest
  // index on ties); other regimes keep one entry. Second ruled case: always
  // the six bounds (high, the three middle ones, low, and the line-pullback
  // bound 5/(3 + 5a_1 + 2s + 5a)), with the high and third-middle entries
  // carrying the +a_7 fiber-component correction, and mid_winner the argmax
  // among the six.
  std::vector<Rat> candidates;
  int mid_winner = -1;
  // The winning expression exceeded 1 and the value was capped.
  bool capped = false;
  // The profile the winning expression consumed.
  Rat a1, a2, a3, a4, s, a;
  // P1xP1 bookkeeping. Deleting a positive coefficient would change the
  // divisor (curve plus fiber partner is the whole fiber), so the deletion
  // device is an identity only at a_m = 0; the designated value instead
  // works with the full profile: the first-case bounds transported to this
  // chart (high and third-middle shifted by +a_7) plus a sixth bound from a
  // line pullback that exists only here, binding when 1 < s < 1 + 5a_7.
  // per_m records the seven naive deletion readings and literal_value the
  // printed expressions; gaps are reported, never reconciled.
  bool relabeled = false;
  std::array<Rat, 7> per_m{};
  bool relabeling_consistent = true;
  Rat literal_value;
  bool literal_agrees = true;
};

// Closed-form alpha_c(S, muA) by contraction kind and regime.
AlphaClosed alpha_c_closed_form(const Decomposition& d);

// (2 + s_A + 2a_1 - a_7 - a_8 + 3a)/3, from the padded sorted coefficients.
Rat mult_bound(const Decomposition& d);

// Largest t >= 0 with muA - t*pivot still pseudo-effective.
// Throws NotInCone when muA is not pseudo-effective.
Rat max_mult_along(const DivClass& mu_a, const DivClass& pivot);

struct OracleResult {
  Rat value;     // min(1, 1/M)
  Rat max_mult;  // M over the candidate pivots
  DivClass argmax;
  std::string argmax_name;  // curve name, "-K", or the class rendering
  bool argmax_is_curve = false;
};

// Independent evaluation: M = max multiplicity over the 240 curves and the
// -K pivot (plus the 2160 conic classes when extended). The optional
// decomposition only supplies pruning certificates; values never depend on it.
OracleResult alpha_c_oracle(const DivClass& mu_a, bool extended = false,
                            const Decomposition* d = nullptr);

struct AlphaReport {
  AlphaClosed closed;
  Rat bound;
  OracleResult oracle;
  bool agree = false;     // closed.value == oracle.value, exact
  bool lemma_ok = false;  // multiplicity bound honored off the face
  bool extended = false;
};

// Runs both paths and the class-level multiplicity-bound checks; reports
// disagreements as data.
AlphaReport compare_alpha(const Decomposition& d, bool extended = false);

}  // namespace dp1
