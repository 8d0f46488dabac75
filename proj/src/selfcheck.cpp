#include "dp1/selfcheck.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dp1/alphac.hpp"
#include "dp1/kstab.hpp"
#include "dp1/sampling.hpp"

namespace dp1 {

namespace {

std::string frac_line(std::size_t good, std::size_t total) {
  std::ostringstream os;
  os << good << "/" << total;
  return os.str();
}

PropertyResult check_curves(const SelftestConfig& cfg) {
  PropertyResult r{"curve enumeration", true, ""};
  std::vector<CurveClass> curves = enumerate_curves();
  if (cfg.inject_drop_curves > 0 &&
      static_cast<std::size_t>(cfg.inject_drop_curves) < curves.size())
    curves.resize(curves.size() - static_cast<std::size_t>(cfg.inject_drop_curves));
  std::ostringstream os;
  if (curves.size() != 240) {
    r.pass = false;
    os << curves.size() << " classes (expected 240)";
    r.detail = os.str();
    return r;
  }
  std::map<CurveKind, int> fam;
  for (const auto& c : curves) {
    ++fam[c.kind];
    if (intersect(c.cls, c.cls) != -1 || intersect(c.cls, canonical_class()) != -1) {
      r.pass = false;
      r.detail = "identity failure at " + curve_name(c);
      return r;
    }
  }
  const std::map<CurveKind, int> want = {
      {CurveKind::Exceptional, 8}, {CurveKind::Line, 28},  {CurveKind::Conic5, 56},
      {CurveKind::KPlus, 56},      {CurveKind::TwoKConic, 56},
      {CurveKind::TwoKLine, 28},   {CurveKind::TwoKExc, 8}};
  if (fam != want) {
    r.pass = false;
    r.detail = "family counts off";
    return r;
  }
  auto brute = search_integral_classes(6, -1, -1);
  std::vector<DivClass> listed;
  listed.reserve(curves.size());
  for (const auto& c : curves) listed.push_back(c.cls);
  std::sort(listed.begin(), listed.end(), div_less);
  std::sort(brute.begin(), brute.end(), div_less);
  if (listed != brute) {
    r.pass = false;
    r.detail = "exhaustive search mismatch";
    return r;
  }
  r.detail = "240 classes, families 8/28/56/56/56/28/8, exhaustive match";
  return r;
}

PropertyResult check_roots() {
  PropertyResult r{"root system", true, ""};
  const auto& roots = enumerate_roots();
  if (roots.size() != 240) {
    r.pass = false;
    r.detail = "wrong count";
    return r;
  }
  DivClass k = canonical_class();
  DivClass probe = -k + rat_of(1, 3) * e_class(1);
  for (const auto& rt : roots) {
    if (intersect(rt.cls, rt.cls) != -2 || intersect(rt.cls, k) != 0) {
      r.pass = false;
      r.detail = "not a root: " + div_str(rt.cls);
      return r;
    }
    if (reflect(k, rt) != k || reflect(reflect(probe, rt), rt) != probe) {
      r.pass = false;
      r.detail = "reflection failure at " + div_str(rt.cls);
      return r;
    }
  }
  r.detail = "240 roots, reflections fix K and square to the identity";
  return r;
}

PropertyResult check_conics() {
  PropertyResult r{"conic classes", true, ""};
  const auto& conics = enumerate_conic_classes();
  if (conics.size() != 2160) {
    r.pass = false;
    r.detail = "wrong count";
    return r;
  }
  DivClass k = canonical_class();
  for (const auto& b : conics)
    if (intersect(b, b) != 0 || intersect(b, k) != -2) {
      r.pass = false;
      r.detail = "bad conic class " + div_str(b);
      return r;
    }
  r.detail = "2160 classes with B*B = 0 and B*K = -2";
  return r;
}

PropertyResult check_reconstruction(const std::vector<Sample>& suite) {
  PropertyResult r{"reconstruction", true, ""};
  std::size_t good = 0;
  for (const auto& s : suite) {
    Decomposition d = decompose(s.cls);
    bool ok = normalized_class(d) == s.cls * d.mu;
    for (const auto& c : d.coefficients) ok = ok && c >= 0 && c < 1;
    Rat tail = 0;
    for (int i = 1; i < 8; ++i) tail += d.a_sorted[static_cast<std::size_t>(i)];
    ok = ok && tail == d.s_A;
    ok = ok && std::is_sorted(d.a_sorted.rbegin(), d.a_sorted.rend());
    DivClass boundary = canonical_class() + d.mu * s.cls;
    ok = ok && is_nef(d.face_certificate).nef &&
         intersect(d.face_certificate, boundary) == 0;
    if (d.kind == ContractionKind::ConicBundle) {
      ok = ok && d.a > 0 && intersect(d.fiber_class, d.fiber_class) == 0 &&
           intersect(d.fiber_class, canonical_class()) == -2 &&
           d.subtype != BundleSubtype::None;
    } else {
      ok = ok && d.a == 0;
      for (std::size_t i = 0; ok && i < d.exceptionals.size(); ++i)
        for (std::size_t j = i + 1; j < d.exceptionals.size(); ++j)
          ok = ok && intersect(d.exceptionals[i].cls, d.exceptionals[j].cls) == 0;
    }
    if (ok) ++good;
    else if (r.pass) {
      r.pass = false;
      r.detail = "failed at " + s.name;
    }
  }
  if (r.pass) r.detail = frac_line(good, suite.size()) + " rebuilt exactly with bounds";
  return r;
}

PropertyResult check_walls() {
  PropertyResult r{"branch continuity", true, ""};
  DivClass uniform = zero_class();
  for (int i = 1; i <= 8; ++i) uniform = uniform + e_class(i);
  DivClass f1_dir = zero_class();
  for (int i = 1; i <= 7; ++i) f1_dir = f1_dir + e_class(i);
  DivClass f1_base = -canonical_class() + rat_of(1, 2) * (h_class() - e_class(8));
  struct Case {
    DivClass base, dir;
    Rat t;
  } cases[] = {
      {-canonical_class(), uniform, rat_of(4, 7)},
      {-canonical_class(), uniform, rat_of(1, 7)},
      {f1_base, f1_dir, rat_of(2, 3)},
      {f1_base, f1_dir, rat_of(1, 6)},
  };
  for (const auto& c : cases) {
    std::string why;
    if (!wall_join_ok(c.base, c.dir, c.t, &why)) {
      r.pass = false;
      r.detail = why;
      return r;
    }
  }
  r.detail = "4 wall crossings join exactly";
  return r;
}

PropertyResult check_mu_bisection(const std::vector<Sample>& suite) {
  PropertyResult r{"mu bisection", true, ""};
  const Rat scales[] = {rat_of(1, 3), rat_of(2), rat_of(7, 5)};
  std::size_t idx[] = {0, suite.size() / 2, suite.size() - 1};
  for (int k = 0; k < 3; ++k) {
    const Sample& s = suite[idx[k]];
    Rat t = scales[k];
    DivClass scaled = t * s.cls;
    Rat lp = compute_mu(scaled);
    Rat oracle = mu_bisection_oracle(scaled);
    if (lp != oracle || lp != compute_mu(s.cls) / t) {
      r.pass = false;
      r.detail = "mismatch at " + s.name + " scale " + rat_str(t) + ": lp " +
                 rat_str(lp) + " vs bisection " + rat_str(oracle);
      return r;
    }
  }
  r.detail = "3 scaled classes agree with the bisection oracle";
  return r;
}

PropertyResult check_oracle(const SelftestConfig& cfg, const std::vector<Sample>& suite) {
  PropertyResult r{"oracle equivalence", true, ""};
  std::size_t good = 0, literal_gaps = 0;
  for (const auto& s : suite) {
    Decomposition d = decompose(s.cls);
    AlphaReport rep = compare_alpha(d, cfg.extended_oracle);
    Rat claimed = rep.closed.value;
    if (cfg.inject_perturb_formula) claimed += rat_of(1, 1000);
    bool ok = claimed == rep.oracle.value && rep.lemma_ok;
    if (!rep.closed.literal_agrees) ++literal_gaps;
    if (ok) ++good;
    else if (r.pass) {
      r.pass = false;
      r.detail = "disagreement at " + s.name + ": closed " + rat_str(claimed) +
                 " vs oracle " + rat_str(rep.oracle.value);
    }
  }
  if (r.pass) {
    r.detail = frac_line(good, suite.size()) + " closed == oracle";
    if (literal_gaps > 0) {
      std::ostringstream os;
      os << r.detail << " (" << literal_gaps
         << " ruled-surface printed-expression gaps, reported not designated)";
      r.detail = os.str();
    }
  }
  return r;
}

PropertyResult check_invariance(const SelftestConfig& cfg, const std::vector<Sample>& suite) {
  PropertyResult r{"invariance", true, ""};
  std::mt19937_64 rng(cfg.seed * 7919 + 13);
  const Rat scales[] = {rat_of(1, 3), rat_of(2), rat_of(7, 5)};
  int step = std::max(1, cfg.per_stratum);
  int n = 0;
  for (std::size_t i = 0; i < suite.size(); i += static_cast<std::size_t>(step), ++n) {
    const Sample& s = suite[i];
    Decomposition d = decompose(s.cls);
    AlphaClosed c = alpha_c_closed_form(d);
    Verdict v = verdict(s.cls, VerdictOptions{false, false});

    Rat t = scales[n % 3];
    DivClass scaled = t * s.cls;
    Decomposition ds = decompose(scaled);
    Verdict vs = verdict(scaled, VerdictOptions{false, false});
    bool ok = ds.mu == d.mu / t && ds.a_sorted == d.a_sorted && ds.s_A == d.s_A &&
              ds.a == d.a && alpha_c_closed_form(ds).value == c.value &&
              vs.nu_a == v.nu_a / t && vs.nu_mu_a == v.nu_mu_a &&
              vs.outcome == v.outcome &&
              vs.nef.test_divisor == v.nef.test_divisor;

    DivClass moved = random_weyl_image(s.cls, rng, 10);
    Decomposition dw = decompose(moved);
    Verdict vw = verdict(moved, VerdictOptions{false, false});
    ok = ok && dw.mu == d.mu && dw.a_sorted == d.a_sorted && dw.s_A == d.s_A &&
         dw.a == d.a && alpha_c_closed_form(dw).value == c.value &&
         vw.nu_a == v.nu_a && vw.outcome == v.outcome;

    if (!ok) {
      r.pass = false;
      r.detail = "invariance broken at " + s.name;
      return r;
    }
  }
  std::ostringstream os;
  os << n << " instances invariant under scaling and reflection words";
  r.detail = os.str();
  return r;
}

PropertyResult check_verdicts(const std::vector<Sample>& suite) {
  PropertyResult r{"verdict consistency", true, ""};
  std::size_t stable = 0;
  for (const auto& s : suite) {
    Verdict v = verdict(s.cls, VerdictOptions{false, false});
    bool ok = (v.outcome == Outcome::KStable) == v.nef.holds && !v.trace.empty();
    if (v.outcome == Outcome::KStable) {
      ++stable;
      ok = ok && v.z_check && v.z_check->holds && v.dervan_condition_i;
    }
    if (!ok) {
      r.pass = false;
      r.detail = "inconsistent verdict at " + s.name;
      return r;
    }
  }
  std::ostringstream os;
  os << stable << "/" << suite.size()
     << " stable; every stable instance passes the z-class and slope checks";
  r.detail = os.str();
  return r;
}

}  // namespace

SelftestReport run_selftest(const SelftestConfig& cfg) {
  SelftestReport rep;
  auto suite = sample_suite(cfg.seed, std::max(1, cfg.per_stratum));
  rep.properties.push_back(check_curves(cfg));
  rep.properties.push_back(check_roots());
  rep.properties.push_back(check_conics());
  rep.properties.push_back(check_reconstruction(suite));
  rep.properties.push_back(check_walls());
  rep.properties.push_back(check_mu_bisection(suite));
  rep.properties.push_back(check_oracle(cfg, suite));
  rep.properties.push_back(check_invariance(cfg, suite));
  rep.properties.push_back(check_verdicts(suite));
  rep.all_pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                             [](const PropertyResult& p) { return p.pass; });
  return rep;
}

Rat mu_bisection_oracle(const DivClass& a) {
  DivClass k = canonical_class();
  auto member = [&](const Rat& t) { return is_pseff(k + t * a).pseff; };
  Rat hi = 1;
  while (!member(hi)) hi *= 2;
  Rat lo = 0;
  const Rat width = Rat(1, 200000000);
  while (hi - lo >= width) {
    Rat mid = (lo + hi) / 2;
    if (member(mid)) hi = mid;
    else lo = mid;
  }
  // Simplest admissible rational strictly above the infeasible endpoint.
  for (long den = 1; den <= 10000; ++den) {
    Rat lo_d = lo * den, hi_d = hi * den;
    mpz_class nlo, nhi;
    mpz_cdiv_q(nlo.get_mpz_t(), lo_d.get_num_mpz_t(), lo_d.get_den_mpz_t());
    mpz_fdiv_q(nhi.get_mpz_t(), hi_d.get_num_mpz_t(), hi_d.get_den_mpz_t());
    for (mpz_class n = nlo; n <= nhi; ++n) {
      Rat cand(n, den);
      cand.canonicalize();
      if (cand > lo && cand <= hi) return cand;
    }
  }
  return hi;  // unreachable for the denominators this toolkit produces
}

bool wall_join_ok(const DivClass& base, const DivClass& dir, const Rat& t_wall,
                  std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = why;
    return false;
  };
  Decomposition d = decompose(base + t_wall * dir);
  AlphaClosed c = alpha_c_closed_form(d);
  if (c.s == 4) {
    Rat high = Rat(1) / (2 + c.a1 + c.a);
    if (c.branch != AlphaBranch::Mid) return fail("expected the middle branch at s = 4");
    if (c.value != high)
      return fail("join failure at s = 4: " + rat_str(c.value) + " vs " + rat_str(high));
  } else if (c.s == 1) {
    Rat m1 = Rat(2) / (2 + 2 * c.a1 + c.s - c.a2 - c.a3 + 2 * c.a);
    Rat m2 = Rat(4) / (3 + 4 * c.a1 + 2 * c.s - c.a2 - c.a3 - c.a4 + 4 * c.a);
    Rat m3 = Rat(3) / (2 + 3 * c.a1 + c.s + 3 * c.a);
    Rat mid = std::max({m1, m2, m3});
    if (c.branch != AlphaBranch::Low) return fail("expected the low branch at s = 1");
    if (c.value != mid)
      return fail("join failure at s = 1: " + rat_str(c.value) + " vs " + rat_str(mid));
  } else {
    return fail("family does not sit on a wall at t = " + rat_str(t_wall) +
                " (s = " + rat_str(c.s) + ")");
  }
  // The neighborhoods on either side must land in the adjacent branches.
  Rat eps = rat_of(1, 1000);
  AlphaClosed left = alpha_c_closed_form(decompose(base + (t_wall - eps) * dir));
  AlphaClosed right = alpha_c_closed_form(decompose(base + (t_wall + eps) * dir));
  AlphaBranch lo_side = c.s == 4 ? AlphaBranch::Mid : AlphaBranch::Low;
  AlphaBranch hi_side = c.s == 4 ? AlphaBranch::High : AlphaBranch::Mid;
  bool sides_ok = (left.branch == lo_side && right.branch == hi_side) ||
                  (left.branch == hi_side && right.branch == lo_side);
  if (!sides_ok) return fail("branches adjacent to the wall are wrong");
  return true;
}

}  // namespace dp1
