#include <doctest.h>

#include "hyplyap/error.hpp"
#include "hyplyap/params.hpp"

using namespace hyplyap;

TEST_CASE("parse_real accepts decimals and reduced rationals") {
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real(" -3 ") == -3.0);
  CHECK(parse_real("1e-3") == 1e-3);
  CHECK(parse_real("5/12") == 5.0 / 12.0);
  CHECK(parse_real("10/24") == 5.0 / 12.0);
  CHECK(parse_real("-1/3") == -1.0 / 3.0);
  CHECK(parse_real("1/-3") == -1.0 / 3.0);
  CHECK_THROWS_AS(parse_real("1/0"), Error);
  CHECK_THROWS_AS(parse_real("abc"), Error);
  CHECK_THROWS_AS(parse_real(""), Error);
  CHECK(parse_real_list("0, 1/3,2/3") == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0});
}

TEST_CASE("reduce_mod1 lands in [0, 1)") {
  CHECK(reduce_mod1(1.25) == doctest::Approx(0.25));
  CHECK(reduce_mod1(-0.25) == doctest::Approx(0.75));
  CHECK(reduce_mod1(-1e-18) < 1.0);
  CHECK(reduce_mod1(3.0) == 0.0);
  CHECK(circle_distance(0.95, 0.05) == doctest::Approx(0.1));
}

TEST_CASE("HGParams validation") {
  const HGParams p = HGParams::make({1.3, -0.4}, {0.5, 2.0});
  CHECK(p.n == 2);
  CHECK(p.alpha[0] == doctest::Approx(0.3));
  CHECK(p.alpha[1] == doctest::Approx(0.6));
  CHECK(p.beta[1] == 0.0);
  CHECK_THROWS_AS(HGParams::make({}, {}), Error);
  CHECK_THROWS_AS(HGParams::make({0.1}, {0.2, 0.3}), Error);
  CHECK_THROWS_AS(HGParams::make({0.1, 1.1}, {0.2, 0.3}), Error);
  CHECK_THROWS_AS(HGParams::make({0.1}, {0.1}), Error);
  try {
    HGParams::make({0.1}, {0.1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParams);
  }
}
