#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dp1/exactlp.hpp"
#include "dp1/piclattice.hpp"
#include "dp1/rational.hpp"

namespace dp1 {

struct NotAmple : std::runtime_error {
  NotAmple(CurveClass w, Rat p)
      : std::runtime_error("class is not ample against " + curve_name(w)),
        witness(std::move(w)),
        pairing(std::move(p)) {}
  CurveClass witness;
  Rat pairing;
};

struct NotPseff : std::runtime_error {
  explicit NotPseff(DivClass f)
      : std::runtime_error("class is not pseudo-effective"), functional(std::move(f)) {}
  DivClass functional;
};

struct MalformedFace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The 240 curve classes in canonical order, cached.
const std::vector<DivClass>& curve_cone_generators();

// witness: the curve with the most negative pairing (ties broken by canonical
// order) when the predicate fails.
struct AmpleCheck {
  bool ample = false;
  std::optional<CurveClass> witness;
  Rat pairing;
};

struct NefCheck {
  bool nef = false;
  std::optional<CurveClass> witness;
  Rat pairing;
};

struct PseffCheck {
  bool pseff = false;
  std::vector<Rat> coefficients;
  DivClass functional;
};

AmpleCheck is_ample(const DivClass& A);
NefCheck is_nef(const DivClass& D);
PseffCheck is_pseff(const DivClass& D);

struct MuResult {
  Rat mu;
  // Cone coefficients of K + mu*A over the 240 curves.
  std::vector<Rat> coefficients;
};

// Smallest lambda with K + lambda*A pseudo-effective; one LP. Throws NotAmple.
MuResult compute_mu_rep(const DivClass& A);
Rat compute_mu(const DivClass& A);

struct FaceResult {
  // Curves spanning the minimal face containing D, in canonical order.
  std::vector<CurveClass> curves;
  // Nef class N with N*D = 0 whose zero set among the 240 is exactly the
  // face; the supporting-hyperplane certificate.
  DivClass certificate;
  // False only if the certificate could not be built (then curves came from
  // the per-curve LP path and certificate is the zero class).
  bool certified = false;
};

// Minimal face via a certified support computation; falls back to the
// per-curve LPs whenever a certificate check fails. Throws NotPseff.
FaceResult minimal_face(const DivClass& D);

// Reference path: one max-coefficient LP per curve. Slow but assumption-free.
std::vector<CurveClass> minimal_face_lp(const DivClass& D);

enum class ContractionKind { Birational, ConicBundle };
enum class BundleSubtype { None, F1, P1xP1 };

struct Skeleton {
  ContractionKind kind = ContractionKind::Birational;
  BundleSubtype subtype = BundleSubtype::None;
  // Birational: the face curves themselves (pairwise disjoint, r <= 8).
  std::vector<CurveClass> exceptionals;
  // ConicBundle: the common fiber class and the face structure.
  DivClass fiber_class;
  std::vector<std::pair<CurveClass, CurveClass>> fiber_pairs;  // canonical-first
  std::vector<CurveClass> singles;
  // Default transversal: canonical-first member of each pair plus singles.
  std::vector<CurveClass> transversal;
};

// Shape of the contraction determined by a face. Throws MalformedFace when
// the curves fit neither the disjoint nor the conic-bundle pattern.
Skeleton classify_contraction(const std::vector<CurveClass>& face);

struct Decomposition {
  Rat mu;
  ContractionKind kind = ContractionKind::Birational;
  BundleSubtype subtype = BundleSubtype::None;
  // K + mu*A = a*B + sum a_i E_i; exceptionals in canonical order with
  // coefficients aligned. Birational: a = 0 and fiber_class = 0.
  std::vector<CurveClass> exceptionals;
  std::vector<Rat> coefficients;
  DivClass fiber_class;
  Rat a;
  // Coefficients sorted descending, padded with zeros to length 8.
  std::array<Rat, 8> a_sorted;
  Rat s_A;
  std::vector<CurveClass> face;
  DivClass face_certificate;
};

// Full decomposition pipeline: mu, face, classification, coefficient solve.
// Throws NotAmple; MalformedFace on structural violations.
Decomposition decompose(const DivClass& A);

// The normalized polarization mu*A, rebuilt from the decomposition data as
// a*B + sum a_i E_i - K.
DivClass normalized_class(const Decomposition& d);

}  // namespace dp1
