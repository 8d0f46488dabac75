#include "doctest.h"
#include "dp1/piclattice.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

using namespace dp1;

namespace {

DivClass minus_k() { return -canonical_class(); }

DivClass random_class(std::mt19937_64& rng) {
  DivClass x;
  for (int i = 0; i < 9; ++i) {
    long num = static_cast<long>(rng() % 13) - 6;
    long den = 1 + static_cast<long>(rng() % 4);
    x.coeffs[i] = rat_of(num, den);
  }
  return x;
}

std::set<std::vector<std::string>> class_set(const std::vector<DivClass>& v) {
  std::set<std::vector<std::string>> out;
  for (const auto& x : v) {
    std::vector<std::string> key;
    for (const auto& c : x.coeffs) key.push_back(rat_str(c));
    out.insert(key);
  }
  return out;
}

}  // namespace

TEST_SUITE("piclattice") {

TEST_CASE("intersection form is the diagonal (1,-1,...,-1) pairing") {
  CHECK(intersect(h_class(), h_class()) == 1);
  CHECK(intersect(e_class(1), e_class(2)) == 0);
  CHECK(intersect(e_class(1), e_class(1)) == -1);
  CHECK(intersect(h_class(), e_class(3)) == 0);
  DivClass k = canonical_class();
  CHECK(intersect(k, k) == 1);
  CHECK(intersect(minus_k(), minus_k()) == 1);
  for (int i = 1; i <= 8; ++i) CHECK(intersect(minus_k(), e_class(i)) == 1);
  CHECK(intersect(minus_k(), h_class() - e_class(1) - e_class(2)) == 1);
}

TEST_CASE("intersection is symmetric and bilinear") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    DivClass x = random_class(rng), y = random_class(rng), z = random_class(rng);
    Rat s = rat_of(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
    CHECK(intersect(x, y) == intersect(y, x));
    CHECK(intersect(x + z * s, y) == intersect(x, y) + s * intersect(z, y));
  }
}

TEST_CASE("curve enumeration: 240 distinct classes in seven families") {
  const auto& curves = enumerate_curves();
  REQUIRE(curves.size() == 240);

  std::map<CurveKind, int> family_count;
  for (const auto& c : curves) ++family_count[c.kind];
  CHECK(family_count[CurveKind::Exceptional] == 8);
  CHECK(family_count[CurveKind::Line] == 28);
  CHECK(family_count[CurveKind::Conic5] == 56);
  CHECK(family_count[CurveKind::KPlus] == 56);
  CHECK(family_count[CurveKind::TwoKConic] == 56);
  CHECK(family_count[CurveKind::TwoKLine] == 28);
  CHECK(family_count[CurveKind::TwoKExc] == 8);

  std::vector<DivClass> classes;
  for (const auto& c : curves) classes.push_back(c.cls);
  CHECK(class_set(classes).size() == 240);

  DivClass k = canonical_class();
  for (const auto& c : curves) {
    CHECK(intersect(c.cls, c.cls) == -1);
    CHECK(intersect(c.cls, k) == -1);
    CHECK(is_integral(c.cls));
    // kind/indices reconstruct the class exactly
    CHECK(make_curve(c.kind, c.indices).cls == c.cls);
  }

  // canonical order endpoints
  CHECK(curves.front().cls == e_class(1));
  CHECK(curves.back().cls == minus_k() * Rat(2) - e_class(8));
  CHECK(curve_name(curves.front()) == "e1");
  CHECK(curve_name(curves.back()) == "-2K-e8");
}

TEST_CASE("curve list equals the exhaustive search characterization") {
  auto brute = search_integral_classes(6, -1, -1);
  REQUIRE(brute.size() == 240);
  std::vector<DivClass> classes;
  for (const auto& c : enumerate_curves()) classes.push_back(c.cls);
  CHECK(class_set(brute) == class_set(classes));
}

TEST_CASE("root enumeration: 240 classes with r*r=-2, r*K=0") {
  const auto& roots = enumerate_roots();
  REQUIRE(roots.size() == 240);
  DivClass k = canonical_class();
  for (const auto& r : roots) {
    CHECK(intersect(r.cls, r.cls) == -2);
    CHECK(intersect(r.cls, k) == 0);
    CHECK(is_integral(r.cls));
  }
  std::vector<DivClass> classes;
  for (const auto& r : roots) classes.push_back(r.cls);
  auto set = class_set(classes);
  CHECK(set.size() == 240);

  auto member = [&set](const DivClass& x) {
    std::vector<std::string> key;
    for (const auto& c : x.coeffs) key.push_back(rat_str(c));
    return set.count(key) == 1;
  };
  CHECK(member(e_class(1) - e_class(2)));
  CHECK(member(h_class() - e_class(1) - e_class(2) - e_class(3)));
  DivClass six = h_class() * Rat(2);
  for (int i = 1; i <= 6; ++i) six = six - e_class(i);
  CHECK(member(six));
  CHECK(member(-six));
  // the family beyond the pairwise-difference/line/conic shapes
  DivClass deep = h_class() * Rat(3) - e_class(1);
  for (int i = 1; i <= 8; ++i) deep = deep - e_class(i);
  CHECK(intersect(deep, deep) == -2);
  CHECK(member(deep));
  CHECK(member(-deep));
}

TEST_CASE("roots are closed under negation and reflection") {
  const auto& roots = enumerate_roots();
  std::vector<DivClass> classes;
  for (const auto& r : roots) classes.push_back(r.cls);
  auto set = class_set(classes);
  auto member = [&set](const DivClass& x) {
    std::vector<std::string> key;
    for (const auto& c : x.coeffs) key.push_back(rat_str(c));
    return set.count(key) == 1;
  };
  for (const auto& r : roots) CHECK(member(-r.cls));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Root& r = roots[rng() % roots.size()];
    const Root& s = roots[rng() % roots.size()];
    CHECK(member(reflect(s.cls, r)));
  }
}

TEST_CASE("reflection: examples, involution, isometry, fixes K") {
  Root r{e_class(1) - e_class(2)};
  CHECK(reflect(e_class(1), r) == e_class(2));
  CHECK(reflect(e_class(2), r) == e_class(1));
  CHECK(reflect(e_class(3), r) == e_class(3));

  DivClass k = canonical_class();
  for (const auto& root : enumerate_roots()) CHECK(reflect(k, root) == k);

  std::mt19937_64 rng(17);
  const auto& roots = enumerate_roots();
  for (int trial = 0; trial < 30; ++trial) {
    const Root& root = roots[rng() % roots.size()];
    DivClass x = random_class(rng), y = random_class(rng);
    CHECK(reflect(reflect(x, root), root) == x);
    CHECK(intersect(reflect(x, root), reflect(y, root)) == intersect(x, y));
  }
}

TEST_CASE("reflections permute the curve classes") {
  const auto& curves = enumerate_curves();
  std::vector<DivClass> classes;
  for (const auto& c : curves) classes.push_back(c.cls);
  auto base = class_set(classes);
  std::mt19937_64 rng(23);
  const auto& roots = enumerate_roots();
  for (int trial = 0; trial < 5; ++trial) {
    const Root& root = roots[rng() % roots.size()];
    std::vector<DivClass> image;
    for (const auto& c : curves) image.push_back(reflect(c.cls, root));
    CHECK(class_set(image) == base);
  }
}

TEST_CASE("minus-one predicate agrees with list membership") {
  CHECK(is_minus_one_class(e_class(1)));
  CHECK_FALSE(is_minus_one_class(h_class()));
  CHECK_FALSE(is_minus_one_class(e_class(1) * Rat(1, 2)));

  DivClass z = h_class() * Rat(6) - e_class(1) * Rat(3);
  for (int j = 2; j <= 8; ++j) z = z - e_class(j) * Rat(2);
  CHECK(is_minus_one_class(z));
  CHECK(z == minus_k() * Rat(2) - e_class(1));

  for (const auto& c : enumerate_curves()) CHECK(is_minus_one_class(c.cls));
  // a handful of integer classes off the list
  CHECK_FALSE(is_minus_one_class(canonical_class()));
  CHECK_FALSE(is_minus_one_class(e_class(1) + e_class(2)));
  CHECK_FALSE(is_minus_one_class(h_class() - e_class(1)));
}

TEST_CASE("named classes from the curve families") {
  // lines through the first point, a conic, the deep classes used in traces
  CHECK(make_curve(CurveKind::Line, {1, 4}).cls == h_class() - e_class(1) - e_class(4));
  DivClass q = h_class() * Rat(2) - e_class(1) - e_class(5) - e_class(6) - e_class(7) - e_class(8);
  CHECK(make_curve(CurveKind::Conic5, {1, 5, 6, 7, 8}).cls == q);
  DivClass c3 = minus_k() + e_class(3) - e_class(1);
  CHECK(make_curve(CurveKind::KPlus, {3, 1}).cls == c3);
  CHECK(curve_name(make_curve(CurveKind::TwoKExc, {1})) == "-2K-e1");
}

TEST_CASE("conic fiber classes: 2160 with B*B=0, B*K=-2, one reflection orbit") {
  const auto& conics = enumerate_conic_classes();
  REQUIRE(conics.size() == 2160);
  DivClass k = canonical_class();
  for (const auto& b : conics) {
    CHECK(intersect(b, b) == 0);
    CHECK(intersect(b, k) == -2);
  }
  auto set = class_set(conics);
  CHECK(set.size() == 2160);
  auto member = [&set](const DivClass& x) {
    std::vector<std::string> key;
    for (const auto& c : x.coeffs) key.push_back(rat_str(c));
    return set.count(key) == 1;
  };
  for (int i = 1; i <= 8; ++i) CHECK(member(h_class() - e_class(i)));
  CHECK(member(h_class() * Rat(2) - e_class(1) - e_class(2) - e_class(3) - e_class(4)));

  // reflection-orbit closure of h-e1 reaches the whole set
  std::set<std::vector<std::string>> seen;
  std::vector<DivClass> frontier{h_class() - e_class(1)};
  auto key_of = [](const DivClass& x) {
    std::vector<std::string> key;
    for (const auto& c : x.coeffs) key.push_back(rat_str(c));
    return key;
  };
  seen.insert(key_of(frontier[0]));
  const auto& roots = enumerate_roots();
  while (!frontier.empty()) {
    DivClass cur = frontier.back();
    frontier.pop_back();
    for (const auto& r : roots) {
      DivClass img = reflect(cur, r);
      auto key = key_of(img);
      if (seen.insert(key).second) frontier.push_back(img);
    }
  }
  CHECK(seen == set);
}

TEST_CASE("plain-text rendering of classes") {
  CHECK(div_str(zero_class()) == "0");
  CHECK(div_str(canonical_class()) == "-3h + e1 + e2 + e3 + e4 + e5 + e6 + e7 + e8");
  DivClass x = h_class() * Rat(3);
  x.coeffs[1] = rat_of(-1, 2);
  CHECK(div_str(x) == "3h - 1/2e1");
}

}
