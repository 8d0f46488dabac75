#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

// Thrown by max_coefficient when the target itself lies outside the cone.
// Carries the separating functional found by phase 1.
struct NotInCone : std::runtime_error {
  explicit NotInCone(DivClass separating)
      : std::runtime_error("target lies outside the generated cone"),
        functional(separating) {}
  DivClass functional;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class LpObjective {
  Feasibility,
  MaximizeScalar,
  MinimizeScalar,
  MaximizeCoefficient,
};

// Encodes: find scalar >= 0 and c >= 0 with
//   target = scalar * direction + sum_g c_g * g
// (the scalar column is present only for the scalar objectives).
struct ConeProgram {
  std::vector<DivClass> generators;
  DivClass target;
  LpObjective objective = LpObjective::Feasibility;
  DivClass direction;
  std::size_t generator_index = 0;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  // Optimal value of the objective variable (scalar or chosen coefficient).
  Rat value;
  // Generator coefficients of the optimal representation, in generator order.
  std::vector<Rat> coefficients;
  // Value of the scalar column when the program has one.
  Rat scalar;
  // Separating functional when Infeasible: pairs >= 0 with every generator
  // (and the direction), < 0 with the target, under the intersection form.
  DivClass functional;
  long pivots = 0;
};

LpOutcome solve(const ConeProgram& program);

struct ConeMembership {
  bool inside = false;
  std::vector<Rat> coefficients;
  DivClass functional;
};

ConeMembership cone_member(const DivClass& target, const std::vector<DivClass>& generators);

struct MultiplicityResult {
  bool bounded = false;
  Rat value;
  // Generator part of the optimal representation target = value*pivot + sum.
  std::vector<Rat> coefficients;
};

// Largest alpha >= 0 with target - alpha*pivot still inside the cone.
// Throws NotInCone when the target is not in the cone to begin with.
MultiplicityResult max_coefficient(const DivClass& target,
                                   const std::vector<DivClass>& generators,
                                   const DivClass& pivot);

// Runs phase 1 once for a fixed (generators, target) pair and answers any
// number of objective queries against that membership instance. Queries work
// on a copy of the feasible tableau, so the solver itself stays immutable.
class ConeSolver {
 public:
  ConeSolver(std::vector<DivClass> generators, DivClass target);

  bool feasible() const { return feasible_; }
  long phase1_pivots() const { return phase1_pivots_; }

  // One representation of the target; throws std::logic_error if infeasible.
  const std::vector<Rat>& feasible_point() const;
  // Separating functional; throws std::logic_error if feasible.
  const DivClass& separating_functional() const;

  // Maximize (or minimize) the coefficient of an existing generator.
  LpOutcome maximize_coefficient(std::size_t index) const;
  LpOutcome minimize_coefficient(std::size_t index) const;
  // Maximize the coefficient of a freshly appended column.
  LpOutcome maximize_scalar(const DivClass& direction) const;

  const std::vector<DivClass>& generators() const { return generators_; }
  const DivClass& target() const { return target_; }

 private:
  // appended == nullptr optimizes an existing generator column; otherwise the
  // class *appended joins the tableau and its coefficient is the objective.
  LpOutcome run_phase2(const DivClass* appended, std::size_t column, int sense) const;

  std::vector<DivClass> generators_;
  DivClass target_;
  bool feasible_ = false;
  long phase1_pivots_ = 0;
  std::vector<Rat> point_;
  DivClass functional_;
  // Post-phase-1 snapshot: rows over [artificials | generators | rhs] with
  // per-row sign flips recorded in sigma_.
  std::vector<std::vector<Rat>> snap_rows_;
  std::vector<std::size_t> snap_basis_;
  std::vector<int> sigma_;
};

}  // namespace dp1
