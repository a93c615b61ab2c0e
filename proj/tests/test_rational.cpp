#include "carcass/errors.hpp"
#include "carcass/rational.hpp"

#include <doctest.h>

#include <random>

using namespace carcass;

TEST_CASE("parsing accepts p/q and bare integers")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("+2/6") == Rational(1, 3));
    CHECK(parse_rational("0/5") == Rational(0));
}

TEST_CASE("parsing rejects malformed input")
{
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
}

TEST_CASE("values are kept canonical")
{
    const Rational r = parse_rational("6/4");
    CHECK(numerator(r) == 3);
    CHECK(denominator(r) == 2);
    CHECK(fraction_string(r) == "3/2");
    CHECK(fraction_string(Rational(-2, 4)) == "-1/2");
    CHECK(fraction_string(Rational(5)) == "5/1");
}

TEST_CASE("parse round-trips through fraction_string")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<long> d(-100000, 100000);
        long num = d(rng);
        long den = std::abs(d(rng)) + 1;
        const Rational r(num, den);
        CHECK(parse_rational(fraction_string(r)) == r);
    }
}

TEST_CASE("rational_pow and rot helpers")
{
    CHECK(rational_pow(Rational(2, 3), 0) == 1);
    CHECK(rational_pow(Rational(2, 3), 5) == Rational(32, 243));
    CHECK(rot(Rational(1, 3)) == Rational(2, 3));
    CHECK(rot_pow(Rational(1, 3), 4) == Rational(1, 3));
    CHECK(rot_pow(Rational(1, 3), 3) == Rational(2, 3));
}

TEST_CASE("dyadic detection")
{
    CHECK(is_dyadic(Rational(3, 8)));
    CHECK(is_dyadic(Rational(0)));
    CHECK(is_dyadic(Rational(5)));
    CHECK(!is_dyadic(Rational(1, 3)));
    CHECK(!is_dyadic(Rational(5, 6)));
}

TEST_CASE("binomial coefficients are exact")
{
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}
