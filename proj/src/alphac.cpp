#include "dp1/alphac.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace dp1 {

namespace {

const Rat& rat_zero() {
  static const Rat z(0);
  return z;
}

struct ProfileEval {
  Rat value;
  AlphaBranch branch = AlphaBranch::Low;
  std::vector<Rat> candidates;
  int mid_winner = -1;
  bool capped = false;
};

// One evaluator serves the birational and F1 closed forms: the birational
// expressions are the a = 0 specialization of the F1 ones.
ProfileEval eval_profile(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4,
                         const Rat& s, const Rat& a) {
  ProfileEval out;
  if (s > Rat(4)) {
    out.branch = AlphaBranch::High;
    out.value = Rat(1) / (Rat(2) + a1 + a);
    out.candidates = {out.value};
  } else if (s > Rat(1)) {
    out.branch = AlphaBranch::Mid;
    out.candidates = {
        Rat(2) / (Rat(2) + Rat(2) * a1 + s - a2 - a3 + Rat(2) * a),
        Rat(4) / (Rat(3) + Rat(4) * a1 + Rat(2) * s - a2 - a3 - a4 + Rat(4) * a),
        Rat(3) / (Rat(2) + Rat(3) * a1 + s + Rat(3) * a),
    };
    out.mid_winner = 0;
    out.value = out.candidates[0];
    for (int i = 1; i < 3; ++i) {
      if (out.candidates[i] > out.value) {
        out.value = out.candidates[i];
        out.mid_winner = i;
      }
    }
  } else {
    out.branch = AlphaBranch::Low;
    Rat raw = Rat(2) / (Rat(1) + Rat(2) * a1 + s + Rat(2) * a);
    out.candidates = {raw};
    if (raw > Rat(1)) {
      out.value = Rat(1);
      out.capped = true;
    } else {
      out.value = raw;
    }
  }
  return out;
}

void adopt(AlphaClosed& dst, const ProfileEval& pe) {
  dst.value = pe.value;
  dst.branch = pe.branch;
  dst.candidates = pe.candidates;
  dst.mid_winner = pe.mid_winner;
  dst.capped = pe.capped;
}

}  // namespace

std::string alpha_branch_name(AlphaBranch b) {
  switch (b) {
    case AlphaBranch::High:
      return "high-s";
    case AlphaBranch::Mid:
      return "mid-s";
    case AlphaBranch::Low:
      return "low-s";
  }
  return "unknown";
}

AlphaClosed alpha_c_closed_form(const Decomposition& d) {
  AlphaClosed out;
  const auto& sa = d.a_sorted;
  out.a = d.a;
  if (d.kind == ContractionKind::Birational || d.subtype == BundleSubtype::F1) {
    out.a1 = sa[0];
    out.a2 = sa[1];
    out.a3 = sa[2];
    out.a4 = sa[3];
    out.s = d.s_A;
    adopt(out, eval_profile(out.a1, out.a2, out.a3, out.a4, out.s, out.a));
    out.literal_value = out.value;
    out.literal_agrees = true;
  } else {
    // Second ruled-surface case. The relabeling device deletes one a_m and
    // reuses the first-case expressions, but since E_m + (its fiber partner)
    // is the whole fiber, deleting a positive a_m describes a different
    // divisor; the substitution is an identity only at a_m = 0. The honest
    // value comes from the dual side: the multiplicity along a fiber
    // component is the minimum, over the extremal nef classes (conic
    // fibrations and line pullbacks), of the pairing ratio, and on this
    // chart exactly six such classes can attain that minimum. Five are the
    // transported first-case bounds, with the s > 4 bound and the third
    // middle bound shifted by +a_7 because here their certificates must
    // cross one more fiber; the sixth, a degree-8 line pullback with no
    // first-case analogue (its class is not integral in the first-case
    // marking), gives 5/(3 + 5a_1 + 2s + 5a) and binds only in the band
    // 1 < s < 1 + 5 a_7. Each bound grows with the pivot coefficient, so
    // the pivot is the largest-coefficient fiber component and the value is
    // the capped maximum of all six bounds at once. At a_7 = 0 the band is
    // empty and the corrections vanish, so the maximum provably collapses
    // to the first-case branch split; with a_7 > 0 the binding bound can
    // cross branch lines, so no pre-selection by regime is sound. The seven
    // deletion readings and the printed expressions are still evaluated and
    // reported; they are data about the source, not the answer.
    out.relabeled = true;
    out.a1 = sa[0];
    out.a2 = sa[1];
    out.a3 = sa[2];
    out.a4 = sa[3];
    out.s = d.s_A;
    const Rat& a7 = sa[6];
    out.candidates = {
        Rat(1) / (Rat(2) + out.a1 + out.a + a7),
        Rat(2) / (Rat(2) + Rat(2) * out.a1 + out.s - out.a2 - out.a3 + Rat(2) * out.a),
        Rat(4) / (Rat(3) + Rat(4) * out.a1 + Rat(2) * out.s - out.a2 - out.a3 - out.a4 +
                  Rat(4) * out.a),
        Rat(3) / (Rat(2) + Rat(3) * out.a1 + out.s + Rat(3) * out.a + a7),
        Rat(2) / (Rat(1) + Rat(2) * out.a1 + out.s + Rat(2) * out.a),
        Rat(5) / (Rat(3) + Rat(5) * out.a1 + Rat(2) * out.s + Rat(5) * out.a),
    };
    out.mid_winner = 0;
    out.value = out.candidates[0];
    for (int i = 1; i < 6; ++i) {
      if (out.candidates[i] > out.value) {
        out.value = out.candidates[i];
        out.mid_winner = i;
      }
    }
    if (out.value > Rat(1)) {
      out.value = Rat(1);
      out.capped = true;
    }
    out.branch = out.s > Rat(4)   ? AlphaBranch::High
                 : out.s > Rat(1) ? AlphaBranch::Mid
                                  : AlphaBranch::Low;
    for (int m = 1; m <= 7; ++m) {
      std::array<Rat, 8> t{};
      int k = 0;
      for (int i = 0; i < 7; ++i) {
        if (i == m - 1) continue;
        t[k++] = sa[i];
      }
      Rat sp;
      for (int i = 1; i < 8; ++i) sp = sp + t[i];
      out.per_m[m - 1] = eval_profile(t[0], t[1], t[2], t[3], sp, d.a).value;
    }
    out.relabeling_consistent =
        std::all_of(out.per_m.begin(), out.per_m.end(),
                    [&](const Rat& v) { return v == out.per_m[6]; });

    // The printed expressions for this case, which drop the a1 multiples and
    // branch on s_A itself; kept as a cross-check, never as the answer.
    Rat s7 = d.s_A - sa[6];
    Rat lit;
    if (d.s_A > Rat(4)) {
      lit = Rat(1) / (Rat(2) + sa[0] + d.a);
    } else if (d.s_A > Rat(1)) {
      lit = Rat(2) / (Rat(2) + s7 - sa[1] - sa[2] + Rat(2) * d.a);
      Rat c2 = Rat(4) / (Rat(3) + Rat(2) * s7 - sa[1] - sa[2] - sa[3] + Rat(4) * d.a);
      Rat c3 = Rat(3) / (Rat(2) + s7 + Rat(3) * d.a);
      if (c2 > lit) lit = c2;
      if (c3 > lit) lit = c3;
    } else {
      lit = Rat(2) / (Rat(1) + s7 + Rat(2) * d.a);
      if (lit > Rat(1)) lit = Rat(1);
    }
    out.literal_value = lit;
    out.literal_agrees = (lit == out.value);
  }
  if (!(out.value > rat_zero()) || out.value > Rat(1)) {
    throw std::logic_error("closed-form alpha fell outside (0,1]");
  }
  return out;
}

Rat mult_bound(const Decomposition& d) {
  const auto& sa = d.a_sorted;
  return (Rat(2) + d.s_A + Rat(2) * sa[0] - sa[6] - sa[7] + Rat(3) * d.a) / Rat(3);
}

Rat max_mult_along(const DivClass& mu_a, const DivClass& pivot) {
  MultiplicityResult r = max_coefficient(mu_a, curve_cone_generators(), pivot);
  if (!r.bounded) throw std::logic_error("multiplicity along pivot is unbounded");
  return r.value;
}

namespace {

// One oracle scan: candidate pivots, cheap upper bounds from nef
// certificates, and lazily computed LP multiplicities over one warm solver.
struct OracleScan {
  std::vector<const DivClass*> pivot;
  std::vector<bool> curve_type;  // false only for the -K marker
  std::vector<bool> in_face;
  std::vector<Rat> ub;
  std::vector<std::optional<Rat>> cache;
  std::size_t n_curves = 0;
  std::size_t k_index = 0;
  DivClass minus_k;
  ConeSolver solver;

  OracleScan(const DivClass& mu_a, bool extended, const Decomposition* d)
      : minus_k(-canonical_class()), solver(curve_cone_generators(), mu_a) {
    if (!solver.feasible()) throw NotInCone(solver.separating_functional());

    const auto& curves = enumerate_curves();
    n_curves = curves.size();
    for (const auto& c : curves) {
      pivot.push_back(&c.cls);
      curve_type.push_back(true);
    }
    k_index = pivot.size();
    pivot.push_back(&minus_k);
    curve_type.push_back(false);
    if (extended) {
      for (const auto& b : enumerate_conic_classes()) {
        pivot.push_back(&b);
        curve_type.push_back(true);
      }
    }

    in_face.assign(pivot.size(), false);
    if (d) {
      for (const auto& f : d->face) {
        for (std::size_t i = 0; i < n_curves; ++i) {
          if (curves[i].cls == f.cls) {
            in_face[i] = true;
            break;
          }
        }
      }
    }

    // Every pivot pairs positively with -K, so each gets a finite bound;
    // the face certificate sharpens it off the face.
    Rat k_total = intersect(minus_k, mu_a);
    bool have_cert = d && d->face_certificate != zero_class();
    Rat cert_total;
    if (have_cert) cert_total = intersect(d->face_certificate, mu_a);
    ub.reserve(pivot.size());
    for (std::size_t i = 0; i < pivot.size(); ++i) {
      Rat u = k_total / intersect(minus_k, *pivot[i]);
      if (have_cert) {
        Rat p = intersect(d->face_certificate, *pivot[i]);
        if (p > rat_zero()) {
          Rat v = cert_total / p;
          if (v < u) u = v;
        }
      }
      ub.push_back(u);
    }
    cache.assign(pivot.size(), std::nullopt);
  }

  Rat mult(std::size_t i) {
    if (!cache[i]) {
      LpOutcome r = (i < n_curves) ? solver.maximize_coefficient(i)
                                   : solver.maximize_scalar(*pivot[i]);
      if (r.status != LpStatus::Optimal) {
        throw std::logic_error("pivot multiplicity must be bounded");
      }
      cache[i] = (i < n_curves) ? r.value : r.scalar;
    }
    return *cache[i];
  }

  std::string name(std::size_t i) const {
    if (i < n_curves) return curve_name(enumerate_curves()[i]);
    if (i == k_index) return "-K";
    return div_str(*pivot[i]);
  }
};

OracleResult scan_oracle(OracleScan& scan) {
  // Likely achievers first: the face curves and the -K pivot.
  Rat best = scan.mult(scan.k_index);
  for (std::size_t i = 0; i < scan.pivot.size(); ++i) {
    if (scan.in_face[i]) {
      Rat m = scan.mult(i);
      if (m > best) best = m;
    }
  }

  // Value pass over the rest, best upper bound first; once bounds fall to
  // the incumbent nothing later can beat it.
  std::vector<std::size_t> order(scan.pivot.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (scan.ub[x] != scan.ub[y]) return scan.ub[y] < scan.ub[x];
    return x < y;
  });
  for (std::size_t i : order) {
    if (!(scan.ub[i] > best)) break;
    if (scan.cache[i]) continue;
    Rat m = scan.mult(i);
    if (m > best) best = m;
  }

  OracleResult out;
  out.max_mult = best;
  out.value = best > Rat(1) ? Rat(1) / best : Rat(1);

  // Argmax pass in canonical pivot order; bounds below the maximum cannot
  // reach it, everything else is settled by (cached) LPs.
  for (std::size_t i = 0; i < scan.pivot.size(); ++i) {
    if (scan.ub[i] < best) continue;
    if (scan.mult(i) == best) {
      out.argmax = *scan.pivot[i];
      out.argmax_name = scan.name(i);
      out.argmax_is_curve = scan.curve_type[i];
      break;
    }
  }
  return out;
}

}  // namespace

OracleResult alpha_c_oracle(const DivClass& mu_a, bool extended, const Decomposition* d) {
  OracleScan scan(mu_a, extended, d);
  return scan_oracle(scan);
}

AlphaReport compare_alpha(const Decomposition& d, bool extended) {
  AlphaReport rep;
  rep.extended = extended;
  rep.closed = alpha_c_closed_form(d);
  rep.bound = mult_bound(d);

  DivClass mu_a = normalized_class(d);
  OracleScan scan(mu_a, extended, &d);
  rep.oracle = scan_oracle(scan);
  rep.agree = rep.closed.value == rep.oracle.value;

  // Class-level multiplicity bound, checked on every run. First threshold:
  // no curve-type pivot may exceed both 1 and the bound off the face.
  // Second: nothing beats the chosen exceptional curves and the bound.
  Rat cap = rep.bound > Rat(1) ? rep.bound : Rat(1);
  Rat t_thr = rep.bound;
  const auto& curves = enumerate_curves();
  for (const auto& e : d.exceptionals) {
    for (std::size_t i = 0; i < scan.n_curves; ++i) {
      if (curves[i].cls == e.cls) {
        Rat m = scan.mult(i);
        if (m > t_thr) t_thr = m;
        break;
      }
    }
  }
  bool ok = true;
  for (std::size_t i = 0; i < scan.pivot.size() && ok; ++i) {
    if (!scan.curve_type[i]) continue;
    bool off_face = !scan.in_face[i];
    Rat gate = t_thr;
    if (off_face && cap < gate) gate = cap;
    if (!(scan.ub[i] > gate)) continue;
    Rat m = scan.mult(i);
    if (m > t_thr) ok = false;
    if (off_face && m > Rat(1) && m > rep.bound) ok = false;
  }
  rep.lemma_ok = ok;
  return rep;
}

}  // namespace dp1
