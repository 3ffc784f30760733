#include "architect/digits.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arch;

TEST_CASE("bit-pair encoding") {
    for (int d = -1; d <= 1; ++d) CHECK(decode(encode(static_cast<SignedDigit>(d))) == d);
    CHECK(decode({true, true}) == 0);
    CHECK(encode(1).plus);
    CHECK(encode(-1).minus);
}

TEST_CASE("values and prefixes") {
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(4) == 16);
    const DigitVector v = parse_digits("+0-");
    CHECK(value_of(v) == Rational(3, 8));
    CHECK(value_of(v, 1) == Rational(1, 2));
    CHECK(value_of(v, 10) == Rational(3, 8));  // zero-extended
    CHECK(scaled_value(v, 3) == 3);
    CHECK(prefix_error_bound(5) == Rational(1, 32));
    CHECK(to_string(v) == "+0-");
    CHECK_THROWS_AS(parse_digits("+x"), std::invalid_argument);
}

TEST_CASE("rational expansion") {
    const DigitVector third = rational_to_digit_stream(Rational(1, 3), 8);
    CHECK(to_string(third) == "0+0+0+0+");
    CHECK(to_string(rational_to_digit_stream(Rational(-1, 4), 3)) == "0-0");
    CHECK_THROWS_AS(rational_to_digit_stream(Rational(1), 4), std::domain_error);
    CHECK_THROWS_AS(rational_to_digit_stream(Rational(-3, 2), 4), std::domain_error);

    std::mt19937_64 g(7);
    for (int t = 0; t < 200; ++t) {
        const Rational r(static_cast<long>(g() % 2001) - 1000, 1001);
        DigitSource src(r);
        const DigitVector ref = rational_to_digit_stream(r, 40);
        for (std::size_t j = 0; j < 40; ++j) REQUIRE(src.at(j) == ref[j]);
        CHECK(testsupport::absq(value_of(ref) - r) <= prefix_error_bound(40));
    }
}

TEST_CASE("on-the-fly conversion matches the value") {
    std::mt19937_64 g(11);
    for (int t = 0; t < 500; ++t) {
        const DigitVector v = testsupport::random_digits(g, 1 + g() % 30);
        const TwosComplement tc = otf_convert(v);
        CHECK(tc.value() == value_of(v));
    }
    CHECK(otf_convert(parse_digits("0+")).str() == "0.01");
    CHECK(otf_convert(parse_digits("-")).str() == "1.1");
}
