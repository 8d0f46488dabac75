#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

// The five strata the instance suite is drawn from. Each birational stratum
// pins one branch of the closed form; the two conic strata pin the bundle
// shape and let the branch float.
enum class Stratum {
  BirationalHigh,
  BirationalMid,
  BirationalLow,
  ConicF1,
  ConicP1P1,
};

std::string stratum_name(Stratum s);

struct Sample {
  Stratum stratum;
  DivClass cls;
  std::string name;  // e.g. "birational-mid/07"
};

// Deterministic stratified suite: per_stratum instances per stratum, all
// ample by construction with mu == 1 (coefficients sit strictly inside the
// unit box and the conic coefficient is strictly positive). Consumers apply
// their own Weyl words or scalings on top.
std::vector<Sample> sample_suite(std::uint64_t seed, int per_stratum);

// Image of a under a random reflection word of length <= max_len.
DivClass random_weyl_image(const DivClass& a, std::mt19937_64& rng, int max_len);

// Random positive scale q/p with p, q in 1..9.
Rat random_scale(std::mt19937_64& rng);

}  // namespace dp1
