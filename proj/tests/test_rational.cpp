#include "doctest.h"
#include "dp1/rational.hpp"

#include <stdexcept>

using namespace dp1;

TEST_SUITE("rational") {

TEST_CASE("parse accepts integers and fractions in lowest or raised terms") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-3") == Rat(-3));
  CHECK(parse_rat("+2/4") == Rat(1, 2));
  CHECK(parse_rat("  7/5 ") == Rat(7, 5));
  CHECK(parse_rat("-6/4") == rat_of(-3, 2));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("/2"), std::invalid_argument);
}

TEST_CASE("serialization is lowest terms") {
  CHECK(rat_str(Rat(4, 8)) == "1/2");
  CHECK(rat_str(Rat(-10, 5)) == "-2");
  CHECK(rat_str(Rat(0)) == "0");
  CHECK(rat_str(parse_rat("110/119")) == "110/119");
}

TEST_CASE("round trip through text") {
  for (long n = -7; n <= 7; ++n)
    for (long d = 1; d <= 9; ++d) {
      Rat x = rat_of(n, d);
      CHECK(parse_rat(rat_str(x)) == x);
    }
}

TEST_CASE("decimal approximation is deterministic and labeled precision") {
  CHECK(rat_approx(Rat(1, 2)) == "0.5");
  CHECK(rat_approx(Rat(0)) == "0");
  CHECK(rat_approx(Rat(-1, 3), 5) == "-0.33333");
  CHECK(rat_approx(Rat(2, 3), 5) == "0.66667");
  CHECK(rat_approx(Rat(1, 3)) == "0.333333333333");
  CHECK(rat_approx(Rat(20, 9), 12) == "2.22222222222");
  CHECK(rat_approx(Rat(1000), 4) == "1000");
  CHECK(rat_approx(Rat(9999, 10), 3) == "1000");
  CHECK(rat_approx(Rat(1, 100000), 3) == "1e-5");
  CHECK(rat_approx(Rat(1, 10000), 3) == "0.0001");
}

}
