#include "dp1/sampling.hpp"

#include <cassert>
#include <cstdio>

#include "dp1/coneops.hpp"

namespace dp1 {

std::string stratum_name(Stratum s) {
  switch (s) {
    case Stratum::BirationalHigh: return "birational-high";
    case Stratum::BirationalMid: return "birational-mid";
    case Stratum::BirationalLow: return "birational-low";
    case Stratum::ConicF1: return "conic-f1";
    case Stratum::ConicP1P1: return "conic-p1p1";
  }
  return "?";
}

namespace {

long pick(std::mt19937_64& rng, long lo, long hi) {
  assert(lo <= hi);
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Uniform-ish rational in [lo, hi] with a random denominator in [16, 40].
// Empty integer windows cannot occur for the ranges used below.
Rat rat_in(std::mt19937_64& rng, const Rat& lo, const Rat& hi) {
  long den = pick(rng, 16, 40);
  Rat lo_d = lo * den, hi_d = hi * den;
  mpz_class nlo, nhi;
  mpz_cdiv_q(nlo.get_mpz_t(), lo_d.get_num_mpz_t(), lo_d.get_den_mpz_t());
  mpz_fdiv_q(nhi.get_mpz_t(), hi_d.get_num_mpz_t(), hi_d.get_den_mpz_t());
  assert(nlo <= nhi);
  long span = mpz_get_si(mpz_class(nhi - nlo).get_mpz_t());
  mpz_class num = nlo + pick(rng, 0, span);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

DivClass birational(std::mt19937_64& rng, const Rat& lo, const Rat& hi) {
  DivClass a = -canonical_class();
  for (int i = 1; i <= 8; ++i) a.coeffs[i] += rat_in(rng, lo, hi);
  return a;
}

DivClass conic_f1(std::mt19937_64& rng) {
  // -K + a(h - e8) + sum_{i<=7} a_i e_i, a > 0, with occasional zero a_i so
  // the face can drop exceptionals.
  DivClass a = -canonical_class() + rat_in(rng, rat_of(1, 10), rat_of(9, 10)) *
                                        (h_class() - e_class(8));
  for (int i = 1; i <= 7; ++i) {
    if (rng() % 4 == 0) continue;
    a.coeffs[i] += rat_in(rng, rat_of(1, 20), rat_of(9, 10));
  }
  return a;
}

DivClass conic_p1p1(std::mt19937_64& rng) {
  // -K + a(h - e1) + a1(h - e1 - e2) + sum_{i>=3} a_i e_i, every coefficient
  // strictly positive so the fiber keeps both component pairs in the face.
  DivClass a = -canonical_class() + rat_in(rng, rat_of(1, 10), rat_of(9, 10)) *
                                        (h_class() - e_class(1));
  a = a + rat_in(rng, rat_of(1, 20), rat_of(9, 10)) *
              (h_class() - e_class(1) - e_class(2));
  for (int i = 3; i <= 8; ++i) a.coeffs[i] += rat_in(rng, rat_of(1, 20), rat_of(9, 10));
  return a;
}

}  // namespace

std::vector<Sample> sample_suite(std::uint64_t seed, int per_stratum) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(5 * static_cast<std::size_t>(per_stratum));
  const Stratum strata[] = {Stratum::BirationalHigh, Stratum::BirationalMid,
                            Stratum::BirationalLow, Stratum::ConicF1,
                            Stratum::ConicP1P1};
  for (Stratum st : strata) {
    for (int k = 0; k < per_stratum; ++k) {
      DivClass cls;
      switch (st) {
        // Tail sums: 7 * 3/5 > 4, [7/5, 7/2] stays in (1, 4], 7/8 <= 1.
        case Stratum::BirationalHigh:
          cls = birational(rng, rat_of(3, 5), rat_of(19, 20));
          break;
        case Stratum::BirationalMid:
          cls = birational(rng, rat_of(1, 5), rat_of(1, 2));
          break;
        case Stratum::BirationalLow:
          cls = birational(rng, rat_of(1, 40), rat_of(1, 8));
          break;
        case Stratum::ConicF1: cls = conic_f1(rng); break;
        case Stratum::ConicP1P1: cls = conic_p1p1(rng); break;
      }
      assert(is_ample(cls).ample);
      char tag[16];
      std::snprintf(tag, sizeof tag, "%02d", k);
      out.push_back({st, cls, stratum_name(st) + "/" + tag});
    }
  }
  return out;
}

DivClass random_weyl_image(const DivClass& a, std::mt19937_64& rng, int max_len) {
  const auto& roots = enumerate_roots();
  int len = static_cast<int>(pick(rng, 1, max_len));
  DivClass out = a;
  for (int i = 0; i < len; ++i)
    out = reflect(out, roots[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(roots.size()) - 1))]);
  return out;
}

Rat random_scale(std::mt19937_64& rng) {
  // rat_of canonicalizes; the raw two-argument constructor would not, and a
  // value like 2/2 breaks exact comparison downstream.
  return rat_of(pick(rng, 1, 9), pick(rng, 1, 9));
}

}  // namespace dp1
