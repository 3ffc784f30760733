#include "architect/online.hpp"
#include "architect/arch_ops.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arch;
using namespace testsupport;

TEST_CASE("selection functions") {
    CHECK(sel_mul(Rational(1, 2)) == 1);
    CHECK(sel_mul(Rational(1, 2) - pow2(-20)) == 0);
    CHECK(sel_mul(Rational(-1, 2)) == 0);
    CHECK(sel_mul(Rational(-1, 2) - pow2(-20)) == -1);
    CHECK(sel_div(Rational(1, 4)) == 1);
    CHECK(sel_div(Rational(-1, 4)) == 0);
    CHECK(sel_div(Rational(-3, 8)) == -1);
}

TEST_CASE("parallel adder identity") {
    std::mt19937_64 g(3);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 1 + g() % 24;
        const DigitVector x = random_digits(g, n), y = random_digits(g, n);
        CarryPair cin;
        cin.h = g() & 1;
        cin.t = g() & 1;
        const AddRow r = parallel_add(x, y, cin);
        REQUIRE(r.z.size() == n);
        CHECK(value_of(x) + value_of(y) + pow2(-static_cast<long>(n)) * cin.value() ==
              r.carry_out.value() + value_of(r.z));
    }
    CHECK(CarryPair{}.value() == 0);
}

TEST_CASE("serial adder sums exactly") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 1 + g() % 30;
        const DigitVector x = random_half(g, n), y = random_half(g, n);
        const DigitVector z = run_serial_add(x, y, n);
        CHECK(value_of(z) == value_of(x) + value_of(y));
    }
}

TEST_CASE("serial adder rejects sums outside (-1, 1)") {
    const DigitVector ones(12, 1);
    CHECK_THROWS_AS(run_serial_add(ones, ones, 12), std::logic_error);
}

TEST_CASE("multiplier and divider delays") {
    MulState m;
    for (int j = 0; j < kDelayMul; ++j) CHECK_FALSE(mul_step(m, 1, 1).has_value());
    CHECK(mul_step(m, 0, 0).has_value());

    DivState d;
    for (int j = 0; j < kDelayDiv; ++j) CHECK_FALSE(div_step(d, 0, j == 0 ? 1 : 0).has_value());
    CHECK(div_step(d, 0, 0).has_value());
}

TEST_CASE("divider needs a divisor sign") {
    DivState d;
    auto feed = [&] { return div_step(d, 0, 0); };
    for (int j = 0; j < kDelayDiv; ++j) feed();
    CHECK_THROWS_AS(feed(), std::domain_error);
}

TEST_CASE("classical mul/div prefixes") {
    std::mt19937_64 g(9);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + g() % 24;
        const DigitVector x = random_digits(g, n), y = random_digits(g, n);
        const DigitVector z = run_mul(x, y, n + 4);
        for (std::size_t q = 1; q <= z.size(); ++q)
            REQUIRE(absq(value_of(z, q) - value_of(x) * value_of(y)) <= prefix_error_bound(q));
        const DigitVector dy = random_divisor(g, n), dx = random_dividend(g, n, dy);
        const DigitVector w = run_div(dx, dy, n + 4);
        for (std::size_t q = 1; q <= w.size(); ++q)
            REQUIRE(absq(value_of(w, q) - value_of(dx) / value_of(dy)) <= prefix_error_bound(q));
    }
}

TEST_CASE("divider with quotient close to 1") {
    // the residual passes 1 at j = 6 while the divisor prefix is still 0.945
    const DigitVector x = parse_digits("++++0+0----0+--0-00-----0++000+--+-+-0++0-+0-0-+00-+0+000-0--++-");
    const DigitVector y = parse_digits("+++++--+0---0--0++-00-0-+--+-000++0++0+0-+-0-0+---0+0-+00-+00-+-");
    const DigitVector z = run_div(x, y, 64);
    for (std::size_t q = 1; q <= 64; ++q)
        REQUIRE(absq(value_of(z, q) - value_of(x) / value_of(y)) <= prefix_error_bound(q));
    CHECK(run_arch_div(x, y, 64, {4, 1u << 16}) == z);
}
