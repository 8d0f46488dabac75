#include "doctest.h"
#include "dp1/exactlp.hpp"
#include "dp1/piclattice.hpp"

#include <gmpxx.h>

#include <random>
#include <vector>

using namespace dp1;

namespace {

DivClass minus_k() { return -canonical_class(); }

std::vector<DivClass> curve_classes() {
  std::vector<DivClass> out;
  for (const auto& c : enumerate_curves()) out.push_back(c.cls);
  return out;
}

DivClass combine(const std::vector<DivClass>& gens, const std::vector<Rat>& coeff) {
  DivClass out = zero_class();
  for (std::size_t i = 0; i < gens.size(); ++i) out = out + gens[i] * coeff[i];
  return out;
}

// Random nonnegative combination of a few curves: a guaranteed cone member.
DivClass random_cone_point(std::mt19937_64& rng, const std::vector<DivClass>& gens) {
  DivClass out = zero_class();
  for (int pick = 0; pick < 5; ++pick) {
    const DivClass& g = gens[rng() % gens.size()];
    Rat c = rat_of(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
    out = out + g * c;
  }
  return out;
}

mpz_class pivot_ceiling(std::size_t generator_count) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(generator_count + 1), 9);
  return b;
}

}  // namespace

TEST_SUITE("exactlp") {

TEST_CASE("single-generator programs") {
  ConeProgram p;
  p.generators = {e_class(1)};
  p.target = e_class(1);
  LpOutcome out = solve(p);
  REQUIRE(out.status == LpStatus::Optimal);
  REQUIRE(out.coefficients.size() == 1);
  CHECK(out.coefficients[0] == 1);

  p.target = -e_class(1);
  out = solve(p);
  REQUIRE(out.status == LpStatus::Infeasible);
  CHECK(intersect(out.functional, e_class(1)) >= 0);
  CHECK(intersect(out.functional, p.target) < 0);
}

TEST_CASE("anticanonical class is a cone member with exact reconstruction") {
  // explicit two-generator representation, checked by substitution
  DivClass z = minus_k() * Rat(2) - e_class(1);
  CHECK(e_class(1) * Rat(1, 2) + z * Rat(1, 2) == minus_k());

  auto gens = curve_classes();
  ConeMembership m = cone_member(minus_k(), gens);
  REQUIRE(m.inside);
  CHECK(combine(gens, m.coefficients) == minus_k());
  for (const Rat& c : m.coefficients) CHECK(c >= 0);
}

TEST_CASE("membership basics") {
  auto gens = curve_classes();

  ConeMembership zero = cone_member(zero_class(), gens);
  REQUIRE(zero.inside);
  for (const Rat& c : zero.coefficients) CHECK(c == 0);

  ConeMembership k = cone_member(canonical_class(), gens);
  REQUIRE_FALSE(k.inside);
  for (const DivClass& g : gens) CHECK(intersect(k.functional, g) >= 0);
  CHECK(intersect(k.functional, canonical_class()) < 0);
  // -K itself is such a functional; the solver's must share its properties
  CHECK(intersect(minus_k(), canonical_class()) < 0);

  ConeMembership sum = cone_member(e_class(1) + e_class(2), gens);
  REQUIRE(sum.inside);
  CHECK(combine(gens, sum.coefficients) == e_class(1) + e_class(2));
}

TEST_CASE("max_coefficient on a one-dimensional cone") {
  MultiplicityResult r = max_coefficient(e_class(1) * Rat(2), {e_class(1)}, e_class(1));
  REQUIRE(r.bounded);
  CHECK(r.value == 2);
}

TEST_CASE("max multiplicity of e1 inside -K is 1/2") {
  MultiplicityResult r = max_coefficient(minus_k(), curve_classes(), e_class(1));
  REQUIRE(r.bounded);
  CHECK(r.value == Rat(1, 2));
  // residual -K - (1/2)e1 reconstructs from the returned coefficients
  CHECK(combine(curve_classes(), r.coefficients) + e_class(1) * r.value == minus_k());
}

TEST_CASE("max multiplicity matches the coefficient bound at a2/3 profile") {
  DivClass target = minus_k();
  for (int i = 1; i <= 8; ++i) target = target + e_class(i) * Rat(2, 3);
  MultiplicityResult r = max_coefficient(target, curve_classes(), e_class(1));
  REQUIRE(r.bounded);
  CHECK(r.value == Rat(8, 3));  // equals 2 + a1 with a1 = 2/3
}

TEST_CASE("target outside the cone raises NotInCone") {
  CHECK_THROWS_AS(max_coefficient(canonical_class(), curve_classes(), e_class(1)), NotInCone);
  try {
    max_coefficient(canonical_class(), curve_classes(), e_class(1));
  } catch (const NotInCone& err) {
    CHECK(intersect(err.functional, canonical_class()) < 0);
  }
}

TEST_CASE("unbounded pivot direction is reported, not solved") {
  MultiplicityResult r =
      max_coefficient(zero_class(), {e_class(1), -e_class(1)}, e_class(1));
  CHECK_FALSE(r.bounded);
}

TEST_CASE("scalar objectives: threshold of the anticanonical ray") {
  // smallest t with K + t*(-K) in the curve cone is 1 (the zero class)
  ConeProgram p;
  p.generators = curve_classes();
  p.target = canonical_class();
  p.objective = LpObjective::MinimizeScalar;
  p.direction = canonical_class();  // minus the probe class -K
  LpOutcome out = solve(p);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(combine(p.generators, out.coefficients) + p.direction * out.scalar == p.target);

  // a target already inside the cone needs none of the scalar direction
  p.target = e_class(1);
  p.generators = {e_class(1)};
  p.direction = e_class(2);
  out = solve(p);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == 0);
}

TEST_CASE("maximize scalar through solve agrees with the warm-start path") {
  ConeProgram p;
  p.generators = curve_classes();
  p.target = minus_k();
  p.objective = LpObjective::MaximizeScalar;
  p.direction = e_class(1);
  LpOutcome via_solve = solve(p);
  REQUIRE(via_solve.status == LpStatus::Optimal);
  CHECK(via_solve.value == Rat(1, 2));

  ConeSolver s(curve_classes(), minus_k());
  REQUIRE(s.feasible());
  LpOutcome warm = s.maximize_scalar(e_class(1));
  REQUIRE(warm.status == LpStatus::Optimal);
  CHECK(warm.scalar == Rat(1, 2));
  // e1 is generator 0 in canonical order; same optimum through that column
  LpOutcome coeff = s.maximize_coefficient(0);
  REQUIRE(coeff.status == LpStatus::Optimal);
  CHECK(coeff.value == Rat(1, 2));
}

TEST_CASE("homogeneity and superadditivity of max multiplicity") {
  auto gens = curve_classes();
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    DivClass t1 = random_cone_point(rng, gens);
    DivClass t2 = random_cone_point(rng, gens);
    DivClass pivot = gens[rng() % gens.size()];
    MultiplicityResult r1 = max_coefficient(t1, gens, pivot);
    MultiplicityResult r2 = max_coefficient(t2, gens, pivot);
    MultiplicityResult r12 = max_coefficient(t1 + t2, gens, pivot);
    REQUIRE(r1.bounded);
    REQUIRE(r2.bounded);
    REQUIRE(r12.bounded);
    CHECK(r12.value >= r1.value + r2.value);

    Rat scale = rat_of(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 5));
    MultiplicityResult rs = max_coefficient(t1 * scale, gens, pivot);
    REQUIRE(rs.bounded);
    CHECK(rs.value == scale * r1.value);
  }
}

TEST_CASE("deterministic outcomes and a pivot-count ceiling") {
  auto gens = curve_classes();
  ConeMembership first = cone_member(minus_k(), gens);
  ConeMembership second = cone_member(minus_k(), gens);
  REQUIRE(first.inside);
  REQUIRE(second.inside);
  CHECK(first.coefficients == second.coefficients);

  ConeSolver s(gens, minus_k());
  LpOutcome out = s.maximize_scalar(e_class(1));
  mpz_class ceiling = pivot_ceiling(gens.size());
  CHECK(mpz_cmp_si(ceiling.get_mpz_t(), out.pivots) > 0);
  CHECK(out.pivots > 0);
}

TEST_CASE("solver rejects empty generator lists") {
  CHECK_THROWS_AS(cone_member(zero_class(), {}), std::invalid_argument);
}

}
