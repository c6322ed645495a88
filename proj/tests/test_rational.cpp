#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "primtop/errors.hpp"
#include "primtop/rational.hpp"

using namespace primtop;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_ratio("1/3") == Ratio(1, 3));
  CHECK(parse_ratio("-2/4") == Ratio(-1, 2));
  CHECK(parse_ratio("7") == Ratio(7));
  CHECK(ratio_str(Ratio(2, 4)) == "1/2");
  CHECK(ratio_str(Ratio(0)) == "0");
  CHECK_THROWS_AS(parse_ratio("1/0"), parse_error);
  CHECK_THROWS_AS(parse_ratio("x"), parse_error);
  CHECK_THROWS_AS(parse_ratio(""), parse_error);
}

TEST_CASE("angles normalize to [0,1)") {
  CHECK(RationalAngle::parse("5/4") == RationalAngle::parse("1/4"));
  CHECK(RationalAngle(Ratio(-1, 4)) == RationalAngle::parse("3/4"));
  CHECK((RationalAngle::parse("3/4") + RationalAngle::parse("1/2")) == RationalAngle::parse("1/4"));
  CHECK((RationalAngle::parse("1/4") - RationalAngle::parse("1/2")) == RationalAngle::parse("3/4"));
  CHECK(RationalAngle::parse("1/6").scaled(3) == RationalAngle::parse("1/2"));
  CHECK(angular_distance(RationalAngle::parse("1/8"), RationalAngle::parse("7/8")) == Ratio(1, 4));
  CHECK(angular_distance(RationalAngle(), RationalAngle::parse("1/2")) == Ratio(1, 2));
}

TEST_CASE("chord comparison at special angles") {
  // chord(0) = 0, chord(1/6) = 1, chord(1/2) = 2 exactly
  CHECK(chord_dist_lt(Ratio(0), Ratio(1, 1000000)));
  CHECK_FALSE(chord_dist_lt(Ratio(1, 2), Ratio(2)));
  CHECK(chord_dist_lt(Ratio(1, 2), Ratio(3)));
  CHECK_FALSE(chord_dist_lt(Ratio(1, 6), Ratio(1)));
  CHECK(chord_dist_lt(Ratio(1, 6), Ratio(1001, 1000)));
  CHECK_FALSE(chord_dist_lt(Ratio(1, 4), Ratio(0)));
}

TEST_CASE("chord comparison agrees with floating point away from ties") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int it = 0; it < 4000; ++it) {
    long long q = 1 + static_cast<long long>(rng() % 24);
    long long p = static_cast<long long>(rng() % (q + 1));
    Ratio d(p, 2 * q);  // in [0, 1/2]
    long long eq = 1 + static_cast<long long>(rng() % 40);
    long long ep = static_cast<long long>(rng() % (2 * eq + 1));
    Ratio eps(ep, eq);
    double chord = 2.0 * std::sin(M_PI * d.convert_to<double>());
    double e = eps.convert_to<double>();
    if (std::abs(chord - e) < 1e-9) continue;  // too close to decide in double
    if (eps <= 0) continue;
    ++checked;
    CHECK(chord_dist_lt(d, eps) == (chord < e));
  }
  CHECK(checked > 3000);
}

TEST_CASE("chord threshold values used by the convergence tests") {
  // 2 sin(pi/64) < 1/10 but 2 sin(pi/32) > 1/10
  CHECK(chord_dist_lt(Ratio(1, 64), Ratio(1, 10)));
  CHECK_FALSE(chord_dist_lt(Ratio(1, 32), Ratio(1, 10)));
  // |i - (-i)| = 2
  CHECK_FALSE(chord_lt(RationalAngle::parse("1/4"), RationalAngle::parse("3/4"), Ratio(2)));
}
