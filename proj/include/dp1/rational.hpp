#pragma once

#include <gmpxx.h>

#include <string>

namespace dp1 {

// All arithmetic in this project is exact; Rat is the only number type that
// ever crosses a module boundary.
using Rat = mpq_class;

Rat rat_of(long num, long den = 1);

// Parses "p/q" or "p" with optional sign. Throws std::invalid_argument on
// malformed input or zero denominator.
Rat parse_rat(const std::string& text);

// Lowest-terms serialization: "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& x);

// Deterministic decimal approximation with the given number of significant
// digits (round half away from zero). For reports only; never fed back into
// any computation.
std::string rat_approx(const Rat& x, int significant = 12);

}  // namespace dp1
