#pragma once

#include <array>
#include <string>
#include <vector>

#include "dp1/rational.hpp"

namespace dp1 {

// A divisor class b*h + sum b_i*e_i in the rank-9 lattice with intersection
// form diag(1, -1, ..., -1). coeffs[0] is the h coefficient, coeffs[i] the
// e_i coefficient for i = 1..8.
struct DivClass {
  std::array<Rat, 9> coeffs{};

  DivClass() = default;

  DivClass operator+(const DivClass& o) const;
  DivClass operator-(const DivClass& o) const;
  DivClass operator-() const;
  DivClass operator*(const Rat& t) const;
  bool operator==(const DivClass& o) const;
  bool operator!=(const DivClass& o) const { return !(*this == o); }
};

DivClass operator*(const Rat& t, const DivClass& x);
// Lexicographic order on coefficients; used only for canonical sorting and
// set-style dedup, carries no geometric meaning.
bool div_less(const DivClass& a, const DivClass& b);

DivClass zero_class();
DivClass h_class();
DivClass e_class(int i);          // i in 1..8
DivClass canonical_class();       // K = -3h + e_1 + ... + e_8

Rat intersect(const DivClass& a, const DivClass& b);
bool is_integral(const DivClass& x);

// Plain-text rendering like "3h - e1 - 1/2e2" for traces and witnesses.
std::string div_str(const DivClass& x);

// The seven families of (-1)-curve classes, in canonical enumeration order.
enum class CurveKind {
  Exceptional,  // e_i
  Line,         // h - e_i - e_j
  Conic5,       // 2h - e_i1 - ... - e_i5
  KPlus,        // -K + e_i - e_j
  TwoKConic,    // -2K - (2h - e_i1 - ... - e_i5)
  TwoKLine,     // -2K - (h - e_i - e_j)
  TwoKExc,      // -2K - e_i
};

struct CurveClass {
  DivClass cls;
  CurveKind kind;
  std::vector<int> indices;
};

// Builds the class from its family tag and index tuple, validating ranges,
// ordering, and the (-1)-curve identities.
CurveClass make_curve(CurveKind kind, const std::vector<int>& indices);

// All 240 (-1)-curve classes: families in declaration order, index tuples in
// ascending lexicographic order within each family. Cached; do not mutate.
const std::vector<CurveClass>& enumerate_curves();

std::string curve_name(const CurveClass& c);

struct Root {
  DivClass cls;
};

// All 240 integer classes r with r*r = -2 and r*K = 0, found by bounded
// exhaustive search. Cached; deterministic order.
const std::vector<Root>& enumerate_roots();

// x + (x*r)*r: the reflection in the root r. Isometry, fixes K, involution.
DivClass reflect(const DivClass& x, const Root& r);

bool is_minus_one_class(const DivClass& x);

// Exhaustive search over integer classes b*h + sum b_i e_i with |b| <= max_h_abs,
// x*x = norm and x*K = k_pairing. Test oracle for the curve/root/conic lists.
std::vector<DivClass> search_integral_classes(long max_h_abs, long norm, long k_pairing);

// All 2160 integer classes B with B*B = 0 and B*K = -2 (fiber classes of
// conic bundle structures). Cached; deterministic order.
const std::vector<DivClass>& enumerate_conic_classes();

}  // namespace dp1
