#include "dp1/coneops.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>

namespace dp1 {

namespace {

const Rat& rat_zero() {
  static const Rat z(0);
  return z;
}

// Canonical index of a curve class within enumerate_curves(), or -1.
long curve_index(const DivClass& x) {
  const auto& curves = enumerate_curves();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].cls == x) return static_cast<long>(i);
  }
  return -1;
}

// Zero set of a nef class among the 240 curves, canonical order.
std::vector<CurveClass> zero_set(const DivClass& N) {
  std::vector<CurveClass> out;
  for (const auto& c : enumerate_curves()) {
    if (intersect(N, c.cls) == rat_zero()) out.push_back(c);
  }
  return out;
}

bool same_curve_set(const std::vector<CurveClass>& a, const std::vector<CurveClass>& b) {
  if (a.size() != b.size()) return false;
  // Both lists are produced in canonical order, so compare positionally.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].cls != b[i].cls) return false;
  }
  return true;
}

// Checks a proposed certificate: nef, vanishes on D, zero set equals face.
bool certificate_ok(const DivClass& N, const DivClass& D, const std::vector<CurveClass>& face) {
  if (!is_nef(N).nef) return false;
  if (intersect(N, D) != rat_zero()) return false;
  return same_curve_set(zero_set(N), face);
}

// Support of a cone representation: curves with strictly positive coefficient.
std::vector<CurveClass> rep_support(const std::vector<Rat>& coeffs) {
  const auto& curves = enumerate_curves();
  std::vector<CurveClass> out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (coeffs[i] > rat_zero()) out.push_back(curves[i]);
  }
  return out;
}

FaceResult face_from_rep(const DivClass& D, const std::vector<Rat>& coeffs);

}  // namespace

const std::vector<DivClass>& curve_cone_generators() {
  static const std::vector<DivClass> gens = [] {
    std::vector<DivClass> v;
    v.reserve(enumerate_curves().size());
    for (const auto& c : enumerate_curves()) v.push_back(c.cls);
    return v;
  }();
  return gens;
}

AmpleCheck is_ample(const DivClass& A) {
  AmpleCheck out;
  out.ample = true;
  bool found = false;
  for (const auto& c : enumerate_curves()) {
    Rat p = intersect(A, c.cls);
    if (p <= rat_zero() && (!found || p < out.pairing)) {
      found = true;
      out.pairing = p;
      out.witness = c;
    }
  }
  out.ample = !found;
  return out;
}

NefCheck is_nef(const DivClass& D) {
  NefCheck out;
  bool found = false;
  for (const auto& c : enumerate_curves()) {
    Rat p = intersect(D, c.cls);
    if (p < rat_zero() && (!found || p < out.pairing)) {
      found = true;
      out.pairing = p;
      out.witness = c;
    }
  }
  out.nef = !found;
  return out;
}

PseffCheck is_pseff(const DivClass& D) {
  ConeMembership m = cone_member(D, curve_cone_generators());
  PseffCheck out;
  out.pseff = m.inside;
  out.coefficients = std::move(m.coefficients);
  out.functional = std::move(m.functional);
  return out;
}

MuResult compute_mu_rep(const DivClass& A) {
  AmpleCheck amp = is_ample(A);
  if (!amp.ample) throw NotAmple(*amp.witness, amp.pairing);

  ConeProgram prog;
  prog.generators = curve_cone_generators();
  prog.target = canonical_class();
  prog.objective = LpObjective::MinimizeScalar;
  prog.direction = -A;
  LpOutcome out = solve(prog);
  if (out.status != LpStatus::Optimal) {
    throw std::logic_error("mu program must be feasible and bounded for ample input");
  }
  // K itself is never pseudo-effective, so the minimizer is positive.
  if (!(out.scalar > rat_zero())) {
    throw std::logic_error("mu must be strictly positive");
  }
  return MuResult{std::move(out.scalar), std::move(out.coefficients)};
}

Rat compute_mu(const DivClass& A) { return compute_mu_rep(A).mu; }

namespace {

// Shared by minimal_face and decompose: takes D together with a known cone
// representation, so no extra membership LP runs.
FaceResult face_from_rep(const DivClass& D, const std::vector<Rat>& coeffs) {
  FaceResult out;
  if (D == zero_class()) {
    out.certificate = -canonical_class();
    out.certified = true;
    return out;
  }

  std::vector<CurveClass> support = rep_support(coeffs);

  // Disjoint support: the face is the support itself, certified by
  // N = -K + sum of the support curves.
  bool disjoint = true;
  for (std::size_t i = 0; i < support.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      if (intersect(support[i].cls, support[j].cls) != rat_zero()) {
        disjoint = false;
        break;
      }
    }
  }
  if (disjoint) {
    DivClass N = -canonical_class();
    for (const auto& c : support) N = N + c.cls;
    if (certificate_ok(N, D, support)) {
      out.curves = std::move(support);
      out.certificate = std::move(N);
      out.certified = true;
      return out;
    }
  } else {
    // Intersecting support: conic-bundle wall. The fiber class certifies the
    // face, which consists of all components of the reducible fibers.
    DivClass B;
    bool have_b = false;
    for (std::size_t i = 0; i < support.size() && !have_b; ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        Rat p = intersect(support[i].cls, support[j].cls);
        if (p == Rat(1)) {
          B = support[i].cls + support[j].cls;
          have_b = true;
          break;
        }
      }
    }
    if (have_b && intersect(B, B) == rat_zero() &&
        intersect(B, canonical_class()) == Rat(-2) && is_nef(B).nef &&
        intersect(B, D) == rat_zero()) {
      std::vector<CurveClass> face = zero_set(B);
      if (face.size() == 14) {
        out.curves = std::move(face);
        out.certificate = std::move(B);
        out.certified = true;
        return out;
      }
    }
  }

  // Certificate failed; fall back to the assumption-free per-curve LPs.
  out.curves = minimal_face_lp(D);
  // Still try to certify the result so downstream pruning can use it.
  bool pair_found = false;
  DivClass N;
  for (std::size_t i = 0; i < out.curves.size() && !pair_found; ++i) {
    for (std::size_t j = i + 1; j < out.curves.size(); ++j) {
      if (intersect(out.curves[i].cls, out.curves[j].cls) == Rat(1)) {
        N = out.curves[i].cls + out.curves[j].cls;
        pair_found = true;
        break;
      }
    }
  }
  if (!pair_found) {
    N = -canonical_class();
    for (const auto& c : out.curves) N = N + c.cls;
  }
  if (certificate_ok(N, D, out.curves)) {
    out.certificate = std::move(N);
    out.certified = true;
  } else {
    out.certificate = zero_class();
    out.certified = false;
  }
  return out;
}

}  // namespace

FaceResult minimal_face(const DivClass& D) {
  if (D == zero_class()) return face_from_rep(D, {});
  PseffCheck ps = is_pseff(D);
  if (!ps.pseff) throw NotPseff(ps.functional);
  return face_from_rep(D, ps.coefficients);
}

std::vector<CurveClass> minimal_face_lp(const DivClass& D) {
  if (D == zero_class()) return {};
  ConeSolver solver(curve_cone_generators(), D);
  if (!solver.feasible()) throw NotPseff(solver.separating_functional());
  std::vector<CurveClass> out;
  const auto& curves = enumerate_curves();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    LpOutcome r = solver.maximize_coefficient(i);
    if (r.status == LpStatus::Unbounded || r.value > rat_zero()) out.push_back(curves[i]);
  }
  return out;
}

Skeleton classify_contraction(const std::vector<CurveClass>& face) {
  Skeleton sk;
  if (face.empty()) return sk;

  // Partner map: each face curve may meet at most one other face curve, with
  // pairing exactly 1.
  const std::size_t n = face.size();
  std::vector<long> partner(n, -1);
  bool any_pair = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Rat p = intersect(face[i].cls, face[j].cls);
      if (p == rat_zero()) continue;
      if (p != Rat(1)) {
        throw MalformedFace("face curves " + curve_name(face[i]) + " and " +
                            curve_name(face[j]) + " pair to " + rat_str(p));
      }
      if (partner[i] != -1) {
        throw MalformedFace("face curve " + curve_name(face[i]) +
                            " meets two other face curves");
      }
      partner[i] = static_cast<long>(j);
      any_pair = true;
    }
  }

  if (!any_pair) {
    if (n > 8) throw MalformedFace("more than eight disjoint face curves");
    sk.kind = ContractionKind::Birational;
    sk.exceptionals = face;
    return sk;
  }

  sk.kind = ContractionKind::ConicBundle;
  DivClass B;
  bool have_b = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (partner[i] == -1) {
      sk.singles.push_back(face[i]);
      continue;
    }
    if (static_cast<std::size_t>(partner[i]) < i) continue;  // seen as (j, i)
    const CurveClass& mate = face[static_cast<std::size_t>(partner[i])];
    DivClass sum = face[i].cls + mate.cls;
    if (!have_b) {
      B = sum;
      have_b = true;
    } else if (sum != B) {
      throw MalformedFace("fiber sums disagree: " + div_str(sum) + " vs " + div_str(B));
    }
    if (curve_index(face[i].cls) < curve_index(mate.cls)) {
      sk.fiber_pairs.emplace_back(face[i], mate);
    } else {
      sk.fiber_pairs.emplace_back(mate, face[i]);
    }
  }
  std::sort(sk.fiber_pairs.begin(), sk.fiber_pairs.end(),
            [](const auto& x, const auto& y) {
              return curve_index(x.first.cls) < curve_index(y.first.cls);
            });
  if (intersect(B, B) != rat_zero() || intersect(B, canonical_class()) != Rat(-2)) {
    throw MalformedFace("fiber sum " + div_str(B) + " is not a conic class");
  }
  for (const auto& s : sk.singles) {
    if (intersect(B, s.cls) != rat_zero()) {
      throw MalformedFace("unpaired face curve " + curve_name(s) +
                          " is not a fiber component of " + div_str(B));
    }
  }
  sk.fiber_class = B;

  sk.transversal.reserve(sk.fiber_pairs.size() + sk.singles.size());
  for (const auto& pr : sk.fiber_pairs) sk.transversal.push_back(pr.first);
  for (const auto& s : sk.singles) sk.transversal.push_back(s);
  std::sort(sk.transversal.begin(), sk.transversal.end(),
            [](const CurveClass& a, const CurveClass& b) {
              return curve_index(a.cls) < curve_index(b.cls);
            });
  if (sk.transversal.size() > 7) {
    throw MalformedFace("conic-bundle face selects more than seven fibers");
  }
  for (std::size_t i = 0; i < sk.transversal.size(); ++i) {
    for (std::size_t j = i + 1; j < sk.transversal.size(); ++j) {
      if (intersect(sk.transversal[i].cls, sk.transversal[j].cls) != rat_zero()) {
        throw MalformedFace("selected fiber representatives are not disjoint");
      }
    }
  }

  // F1 exactly when some (-1)-curve misses every selected representative;
  // otherwise the second contraction lands on P1xP1.
  sk.subtype = BundleSubtype::P1xP1;
  for (const auto& c : enumerate_curves()) {
    bool disjoint_from_all = true;
    for (const auto& e : sk.transversal) {
      if (intersect(c.cls, e.cls) != rat_zero()) {
        disjoint_from_all = false;
        break;
      }
    }
    if (disjoint_from_all) {
      sk.subtype = BundleSubtype::F1;
      break;
    }
  }
  return sk;
}

namespace {

BundleSubtype subtype_of(const std::vector<CurveClass>& transversal) {
  for (const auto& c : enumerate_curves()) {
    bool disjoint_from_all = true;
    for (const auto& e : transversal) {
      if (intersect(c.cls, e.cls) != rat_zero()) {
        disjoint_from_all = false;
        break;
      }
    }
    if (disjoint_from_all) return BundleSubtype::F1;
  }
  return BundleSubtype::P1xP1;
}

}  // namespace

Decomposition decompose(const DivClass& A) {
  MuResult mu = compute_mu_rep(A);
  DivClass D = canonical_class() + mu.mu * A;

  Decomposition d;
  d.mu = mu.mu;
  d.a = Rat(0);
  d.s_A = Rat(0);
  d.fiber_class = zero_class();
  for (auto& x : d.a_sorted) x = Rat(0);

  if (D == zero_class()) {
    d.face_certificate = -canonical_class();
    return d;
  }

  FaceResult face = face_from_rep(D, mu.coefficients);
  Skeleton sk = classify_contraction(face.curves);
  d.kind = sk.kind;
  d.face = face.curves;
  d.face_certificate = face.certificate;

  DivClass recon = zero_class();
  if (sk.kind == ContractionKind::Birational) {
    d.exceptionals = sk.exceptionals;
    for (const auto& e : d.exceptionals) {
      // D * E_j = -a_j since the E_j are disjoint (-1)-classes.
      Rat aj = -intersect(D, e.cls);
      if (!(aj > rat_zero())) {
        throw MalformedFace("face curve " + curve_name(e) + " carries coefficient " +
                            rat_str(aj));
      }
      d.coefficients.push_back(aj);
      recon = recon + aj * e.cls;
    }
    if (recon != D) throw MalformedFace("exceptional curves do not span the boundary class");
  } else {
    d.subtype = sk.subtype;
    d.fiber_class = sk.fiber_class;
    // Pick the component of each fiber that actually appears: D pairs -a_i
    // with the chosen component and +a_i with the one it replaces.
    std::vector<CurveClass> chosen;
    std::vector<Rat> coeff;
    for (const auto& pr : sk.fiber_pairs) {
      Rat u = intersect(D, pr.first.cls);
      if (u < rat_zero()) {
        chosen.push_back(pr.first);
        coeff.push_back(-u);
      } else if (u > rat_zero()) {
        if (intersect(D, pr.second.cls) != -u) {
          throw MalformedFace("fiber pairings of " + div_str(D) + " are inconsistent");
        }
        chosen.push_back(pr.second);
        coeff.push_back(u);
      } else {
        chosen.push_back(pr.first);
        coeff.push_back(Rat(0));
      }
    }
    for (const auto& s : sk.singles) {
      Rat u = intersect(D, s.cls);
      if (u > rat_zero()) {
        throw MalformedFace("unpaired face curve " + curve_name(s) + " pairs positively");
      }
      chosen.push_back(s);
      coeff.push_back(-u);
    }
    if (chosen.size() != 7) {
      throw MalformedFace("conic-bundle decomposition needs exactly seven fibers");
    }

    // Canonical order on the final representatives.
    std::vector<std::size_t> order(chosen.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return curve_index(chosen[x].cls) < curve_index(chosen[y].cls);
    });
    for (std::size_t k : order) {
      d.exceptionals.push_back(chosen[k]);
      d.coefficients.push_back(coeff[k]);
      recon = recon + coeff[k] * chosen[k].cls;
    }

    DivClass residual = D - recon;
    // B * (-K) = 2, so the fiber coefficient reads off against -K.
    d.a = intersect(residual, -canonical_class()) / Rat(2);
    if (!(d.a > rat_zero())) {
      throw MalformedFace("conic-bundle fiber coefficient must be positive");
    }
    if (residual != d.a * sk.fiber_class) {
      throw MalformedFace("residual is not a multiple of the fiber class");
    }
    d.subtype = subtype_of(d.exceptionals);
  }

  for (const auto& c : d.coefficients) {
    if (c < rat_zero() || !(c < Rat(1))) {
      throw MalformedFace("exceptional coefficient " + rat_str(c) + " is outside [0,1)");
    }
  }

  // Sort descending; ties keep canonical curve order.
  std::vector<std::size_t> order(d.coefficients.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (d.coefficients[x] != d.coefficients[y]) return d.coefficients[y] < d.coefficients[x];
    return curve_index(d.exceptionals[x].cls) < curve_index(d.exceptionals[y].cls);
  });
  for (std::size_t k = 0; k < order.size() && k < 8; ++k) {
    d.a_sorted[k] = d.coefficients[order[k]];
  }
  for (std::size_t k = 1; k < 8; ++k) d.s_A = d.s_A + d.a_sorted[k];
  return d;
}

DivClass normalized_class(const Decomposition& d) {
  DivClass out = d.a * d.fiber_class - canonical_class();
  for (std::size_t i = 0; i < d.exceptionals.size(); ++i) {
    out = out + d.coefficients[i] * d.exceptionals[i].cls;
  }
  return out;
}

}  // namespace dp1
