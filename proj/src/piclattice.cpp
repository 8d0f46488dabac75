#include "dp1/piclattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace dp1 {

DivClass DivClass::operator+(const DivClass& o) const {
  DivClass r;
  for (int i = 0; i < 9; ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
  return r;
}

DivClass DivClass::operator-(const DivClass& o) const {
  DivClass r;
  for (int i = 0; i < 9; ++i) r.coeffs[i] = coeffs[i] - o.coeffs[i];
  return r;
}

DivClass DivClass::operator-() const {
  DivClass r;
  for (int i = 0; i < 9; ++i) r.coeffs[i] = -coeffs[i];
  return r;
}

DivClass DivClass::operator*(const Rat& t) const {
  DivClass r;
  for (int i = 0; i < 9; ++i) r.coeffs[i] = coeffs[i] * t;
  return r;
}

bool DivClass::operator==(const DivClass& o) const {
  for (int i = 0; i < 9; ++i)
    if (coeffs[i] != o.coeffs[i]) return false;
  return true;
}

DivClass operator*(const Rat& t, const DivClass& x) { return x * t; }

bool div_less(const DivClass& a, const DivClass& b) {
  for (int i = 0; i < 9; ++i) {
    int c = cmp(a.coeffs[i], b.coeffs[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

DivClass zero_class() { return DivClass{}; }

DivClass h_class() {
  DivClass r;
  r.coeffs[0] = 1;
  return r;
}

DivClass e_class(int i) {
  if (i < 1 || i > 8) throw std::out_of_range("e_class: index out of range");
  DivClass r;
  r.coeffs[i] = 1;
  return r;
}

DivClass canonical_class() {
  DivClass r;
  r.coeffs[0] = -3;
  for (int i = 1; i <= 8; ++i) r.coeffs[i] = 1;
  return r;
}

Rat intersect(const DivClass& a, const DivClass& b) {
  Rat s = a.coeffs[0] * b.coeffs[0];
  for (int i = 1; i <= 8; ++i) s -= a.coeffs[i] * b.coeffs[i];
  return s;
}

bool is_integral(const DivClass& x) {
  for (int i = 0; i < 9; ++i)
    if (x.coeffs[i].get_den() != 1) return false;
  return true;
}

std::string div_str(const DivClass& x) {
  std::string out;
  auto append = [&out](const Rat& c, const std::string& sym) {
    if (c == 0) return;
    std::string mag = rat_str(abs(c));
    if (out.empty()) {
      out += (c < 0) ? "-" : "";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    if (mag != "1") out += mag;
    out += sym;
  };
  append(x.coeffs[0], "h");
  for (int i = 1; i <= 8; ++i) append(x.coeffs[i], "e" + std::to_string(i));
  return out.empty() ? "0" : out;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= 8; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

CurveClass make_curve(CurveKind kind, const std::vector<int>& indices) {
  auto check_range = [&indices]() {
    for (int v : indices)
      if (v < 1 || v > 8) throw std::out_of_range("make_curve: index out of range");
  };
  auto check_strictly_increasing = [&indices]() {
    for (std::size_t i = 1; i < indices.size(); ++i)
      if (indices[i - 1] >= indices[i])
        throw std::invalid_argument("make_curve: indices must be strictly increasing");
  };
  check_range();

  DivClass minus_k = -canonical_class();
  DivClass cls;
  switch (kind) {
    case CurveKind::Exceptional:
      if (indices.size() != 1) throw std::invalid_argument("make_curve: wants 1 index");
      cls = e_class(indices[0]);
      break;
    case CurveKind::Line:
      if (indices.size() != 2) throw std::invalid_argument("make_curve: wants 2 indices");
      check_strictly_increasing();
      cls = h_class() - e_class(indices[0]) - e_class(indices[1]);
      break;
    case CurveKind::Conic5: {
      if (indices.size() != 5) throw std::invalid_argument("make_curve: wants 5 indices");
      check_strictly_increasing();
      cls = h_class() * Rat(2);
      for (int v : indices) cls = cls - e_class(v);
      break;
    }
    case CurveKind::KPlus:
      if (indices.size() != 2 || indices[0] == indices[1])
        throw std::invalid_argument("make_curve: wants 2 distinct indices");
      cls = minus_k + e_class(indices[0]) - e_class(indices[1]);
      break;
    case CurveKind::TwoKConic: {
      if (indices.size() != 5) throw std::invalid_argument("make_curve: wants 5 indices");
      check_strictly_increasing();
      DivClass conic = h_class() * Rat(2);
      for (int v : indices) conic = conic - e_class(v);
      cls = minus_k * Rat(2) - conic;
      break;
    }
    case CurveKind::TwoKLine:
      if (indices.size() != 2) throw std::invalid_argument("make_curve: wants 2 indices");
      check_strictly_increasing();
      cls = minus_k * Rat(2) - (h_class() - e_class(indices[0]) - e_class(indices[1]));
      break;
    case CurveKind::TwoKExc:
      if (indices.size() != 1) throw std::invalid_argument("make_curve: wants 1 index");
      cls = minus_k * Rat(2) - e_class(indices[0]);
      break;
    default:
      throw std::invalid_argument("make_curve: bad kind");
  }

  if (intersect(cls, cls) != -1 || intersect(cls, canonical_class()) != -1)
    throw std::logic_error("make_curve: class fails the (-1)-curve identities");
  return CurveClass{cls, kind, indices};
}

const std::vector<CurveClass>& enumerate_curves() {
  static const std::vector<CurveClass> curves = [] {
    std::vector<CurveClass> out;
    out.reserve(240);
    for (int i = 1; i <= 8; ++i) out.push_back(make_curve(CurveKind::Exceptional, {i}));
    for (const auto& s : subsets_of_size(2)) out.push_back(make_curve(CurveKind::Line, s));
    for (const auto& s : subsets_of_size(5)) out.push_back(make_curve(CurveKind::Conic5, s));
    for (int i = 1; i <= 8; ++i)
      for (int j = 1; j <= 8; ++j)
        if (i != j) out.push_back(make_curve(CurveKind::KPlus, {i, j}));
    for (const auto& s : subsets_of_size(5)) out.push_back(make_curve(CurveKind::TwoKConic, s));
    for (const auto& s : subsets_of_size(2)) out.push_back(make_curve(CurveKind::TwoKLine, s));
    for (int i = 1; i <= 8; ++i) out.push_back(make_curve(CurveKind::TwoKExc, {i}));
    return out;
  }();
  return curves;
}

std::string curve_name(const CurveClass& c) {
  auto idx = [&c](int k) { return std::to_string(c.indices[k]); };
  switch (c.kind) {
    case CurveKind::Exceptional:
      return "e" + idx(0);
    case CurveKind::Line:
      return "h-e" + idx(0) + "-e" + idx(1);
    case CurveKind::Conic5: {
      std::string s = "2h";
      for (int v : c.indices) s += "-e" + std::to_string(v);
      return s;
    }
    case CurveKind::KPlus:
      return "-K+e" + idx(0) + "-e" + idx(1);
    case CurveKind::TwoKConic: {
      std::string s = "-2K-(2h";
      for (int v : c.indices) s += "-e" + std::to_string(v);
      return s + ")";
    }
    case CurveKind::TwoKLine:
      return "-2K-(h-e" + idx(0) + "-e" + idx(1) + ")";
    case CurveKind::TwoKExc:
      return "-2K-e" + idx(0);
  }
  return "?";
}

std::vector<DivClass> search_integral_classes(long max_h_abs, long norm, long k_pairing) {
  std::vector<DivClass> out;
  // x = b*h + sum b_i e_i, x*x = b^2 - sum b_i^2 = norm, x*K = -3b - sum b_i = k_pairing.
  for (long b = -max_h_abs; b <= max_h_abs; ++b) {
    long q_total = b * b - norm;  // required sum of b_i^2
    if (q_total < 0) continue;
    long s_total = -3 * b - k_pairing;  // required sum of b_i
    std::array<long, 8> v{};
    auto rec = [&](auto&& self, int pos, long q_rem, long s_rem) -> void {
      long slots = 8 - pos;
      if (slots == 0) {
        if (q_rem == 0 && s_rem == 0) {
          DivClass x;
          x.coeffs[0] = static_cast<long>(b);
          for (int i = 0; i < 8; ++i) x.coeffs[i + 1] = v[i];
          out.push_back(x);
        }
        return;
      }
      // Cauchy-Schwarz: s_rem^2 <= slots * q_rem.
      if (s_rem * s_rem > slots * q_rem) return;
      long lim = 0;
      while ((lim + 1) * (lim + 1) <= q_rem) ++lim;
      for (long c = -lim; c <= lim; ++c) {
        v[pos] = c;
        self(self, pos + 1, q_rem - c * c, s_rem - c);
      }
    };
    rec(rec, 0, q_total, s_total);
  }
  std::sort(out.begin(), out.end(), div_less);
  return out;
}

const std::vector<Root>& enumerate_roots() {
  static const std::vector<Root> roots = [] {
    // |b| <= 3: 9b^2 = (sum b_i)^2 <= 8 sum b_i^2 = 8(b^2 + 2) forces b^2 <= 16,
    // and b = +-4 leaves no slack; 3 is the sharp bound.
    std::vector<DivClass> found = search_integral_classes(3, -2, 0);
    std::vector<Root> out;
    out.reserve(found.size());
    for (const auto& x : found) out.push_back(Root{x});
    return out;
  }();
  return roots;
}

DivClass reflect(const DivClass& x, const Root& r) {
  return x + r.cls * intersect(x, r.cls);
}

bool is_minus_one_class(const DivClass& x) {
  return is_integral(x) && intersect(x, x) == -1 && intersect(x, canonical_class()) == -1;
}

const std::vector<DivClass>& enumerate_conic_classes() {
  static const std::vector<DivClass> conics = [] {
    // B*B = 0, B*K = -2. Writing B = -2K + y with y in the K-orthogonal E8
    // sublattice, y*y = -4; the h coefficient of y is bounded by |c| <= 5
    // (9c^2 <= 8(c^2+4)), so |h-coeff of B| <= 11.
    return search_integral_classes(11, 0, -2);
  }();
  return conics;
}

}  // namespace dp1
