#include <doctest.h>

#include "oscint/errors.hpp"
#include "oscint/rat.hpp"

using oscint::Rat;

TEST_CASE("rationals normalize") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(0, 7).den() == 1);
}

TEST_CASE("rational arithmetic") {
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(2, 3) / Rat(4, 3) == Rat(1, 2));
    CHECK(-Rat(5, 7) == Rat(-5, 7));
    CHECK_THROWS_AS(Rat(1) / Rat(0), oscint::DomainError);
}

TEST_CASE("rational ordering") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(-1, 3));
    CHECK(Rat(7, 10) > Rat(2, 3));
    CHECK(Rat(1, 2) <= Rat(1, 2));
}

TEST_CASE("rational parse and format") {
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(Rat::parse("-3/6") == Rat(-1, 2));
    CHECK(Rat::parse("0.7") == Rat(7, 10));
    CHECK(Rat::parse("1.25") == Rat(5, 4));
    CHECK(Rat::parse("-0.5") == Rat(-1, 2));
    CHECK(Rat(22, 7).str() == "22/7");
    CHECK(Rat(-4).str() == "-4");
    CHECK(Rat::parse(Rat(-13, 9).str()) == Rat(-13, 9));
    CHECK_THROWS_AS(Rat::parse("abc"), oscint::ParseError);
    CHECK_THROWS_AS(Rat::parse(""), oscint::ParseError);
}

TEST_CASE("floor and fractional part") {
    CHECK(Rat(7, 3).floor() == 2);
    CHECK(Rat(-7, 3).floor() == -3);
    CHECK(Rat(6, 3).floor() == 2);
    CHECK(Rat(7, 3).frac() == Rat(1, 3));
    CHECK(Rat(-7, 3).frac() == Rat(2, 3));
    CHECK(Rat(4).frac() == Rat(0));
}

TEST_CASE("overflow is an error, not a wrap") {
    Rat big(std::int64_t(1) << 40);
    CHECK_THROWS_AS(big * big * big, oscint::OverflowError);
    Rat tiny(1, std::int64_t(1) << 40);
    CHECK_THROWS_AS(tiny * tiny * tiny, oscint::OverflowError);
}

TEST_CASE("gaussian rational literals") {
    auto [re1, im1] = oscint::parse_gaussian("2/3-1/3i");
    CHECK(re1 == Rat(2, 3));
    CHECK(im1 == Rat(-1, 3));
    auto [re2, im2] = oscint::parse_gaussian("-i");
    CHECK(re2 == Rat(0));
    CHECK(im2 == Rat(-1));
    auto [re3, im3] = oscint::parse_gaussian("1");
    CHECK(re3 == Rat(1));
    CHECK(im3 == Rat(0));
    auto [re4, im4] = oscint::parse_gaussian("0.5i");
    CHECK(re4 == Rat(0));
    CHECK(im4 == Rat(1, 2));
}
