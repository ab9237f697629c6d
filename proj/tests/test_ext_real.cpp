#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "meanlab/errors.hpp"
#include "meanlab/ext_real.hpp"

using namespace meanlab;

TEST_CASE("default state is finite zero") {
    ExtReal x;
    CHECK(x.is_finite());
    CHECK(x.value() == 0.0);
}

TEST_CASE("finite payload round-trips") {
    ExtReal x(3.5);
    CHECK(x.is_finite());
    CHECK_FALSE(x.is_inf());
    CHECK(x.value() == 3.5);
}

TEST_CASE("IEEE specials are rejected at the boundary") {
    CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::quiet_NaN()), Error);
    CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::infinity()), Error);
    CHECK_THROWS_AS(ExtReal(-std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("infinite state") {
    ExtReal i = ExtReal::inf();
    CHECK(i.is_inf());
    CHECK_FALSE(i.is_finite());
    CHECK_THROWS_AS(i.value(), Error);
    CHECK(to_string(i) == "inf");
}

TEST_CASE("addition absorbs +inf") {
    CHECK(ext_add(ExtReal(1.0), ExtReal(2.0)).value() == 3.0);
    CHECK(ext_add(ExtReal::inf(), ExtReal(2.0)).is_inf());
    CHECK(ext_add(ExtReal(2.0), ExtReal::inf()).is_inf());
    CHECK(ext_add(ExtReal::inf(), ExtReal::inf()).is_inf());
}

TEST_CASE("subtraction conventions") {
    CHECK(ext_sub(ExtReal(5.0), ExtReal(2.0)).value() == 3.0);
    CHECK(ext_sub(ExtReal::inf(), ExtReal(2.0)).is_inf());
    // (+inf) - (+inf) = +inf by convention, never NaN.
    CHECK(ext_sub(ExtReal::inf(), ExtReal::inf()).is_inf());
    CHECK_THROWS_AS(ext_sub(ExtReal(1.0), ExtReal::inf()), FiniteMinusInf);
}

TEST_CASE("scaling conventions") {
    CHECK(ext_scale(2.0, ExtReal(3.0)).value() == 6.0);
    CHECK(ext_scale(0.0, ExtReal(3.0)).value() == 0.0);
    // 0 * (+inf) = +inf keeps weighted domain intersections closed.
    CHECK(ext_scale(0.0, ExtReal::inf()).is_inf());
    CHECK(ext_scale(2.0, ExtReal::inf()).is_inf());
    CHECK_THROWS_AS(ext_scale(-1.0, ExtReal(1.0)), NegativeScale);
    CHECK_THROWS_AS(ext_scale(std::numeric_limits<double>::quiet_NaN(), ExtReal(1.0)), Error);
}

TEST_CASE("ordering puts +inf above every finite value") {
    CHECK(ExtReal(1.0) < ExtReal(2.0));
    CHECK(ExtReal(1.0) < ExtReal::inf());
    CHECK_FALSE(ExtReal::inf() < ExtReal::inf());
    CHECK(ExtReal::inf() <= ExtReal::inf());
    CHECK(ExtReal::inf() == ExtReal::inf());
    CHECK(ExtReal::inf() > ExtReal(1e300));
    CHECK(ExtReal(2.0) != ExtReal::inf());
    CHECK(ExtReal(2.0) == ExtReal(2.0));
}
