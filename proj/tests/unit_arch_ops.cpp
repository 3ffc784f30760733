#include "architect/arch_ops.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arch;
using namespace testsupport;

TEST_CASE("exact threshold comparison") {
    CHECK(compare_sd(0, parse_digits("+"), 2) == 0);   // 1/2 vs 2/4
    CHECK(compare_sd(0, parse_digits("+"), 1) == 1);
    CHECK(compare_sd(1, parse_digits("--"), 1) == 0);  // 1 - 3/4 = 1/4
    CHECK(compare_sd(0, parse_digits("0000+"), 0) == 1);
    CHECK(compare_sd(-1, {}, -4) == 0);
}

TEST_CASE("chunked operators agree with classical ones") {
    std::mt19937_64 g(21);
    for (int U : {2, 3, 4, 8, 16}) {
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = 1 + g() % 40;
            const DigitVector x = random_digits(g, n), y = random_digits(g, n);
            REQUIRE(run_arch_mul(x, y, n + 3, {U, 1u << 20}) == run_mul(x, y, n + 3));
            const DigitVector dy = random_divisor(g, n), dx = random_dividend(g, n, dy);
            REQUIRE(run_arch_div(dx, dy, n + 3, {U, 1u << 20}) == run_div(dx, dy, n + 3));
        }
    }
}

TEST_CASE("sweep counts") {
    ArchMul m({4, 1u << 16});
    for (long j = 0; j < 20; ++j) {
        const ArchResult r = m.unit.step(1, 0);
        CHECK(r.cycles == j / 4 + 1);
        CHECK(r.z.has_value() == (j >= kDelayMul));
    }
    ArchDiv d({4, 1u << 16});
    for (long j = 0; j < 20; ++j) {
        const ArchResult r = d.unit.step(0, j == 0 ? 1 : 0);
        CHECK(r.cycles == 2 * (j / 4) + 1);
        CHECK(r.z.has_value() == (j >= kDelayDiv));
    }
}

TEST_CASE("residual stays bounded") {
    std::mt19937_64 g(4);
    ArchMul m({4, 1u << 16});
    for (int j = 0; j < 40; ++j) {
        m.unit.step(static_cast<SignedDigit>(int(g() % 3) - 1), static_cast<SignedDigit>(int(g() % 3) - 1));
        CHECK(absq(m.unit.residual()) < 1);
    }
}

TEST_CASE("operator stores run out") {
    const DigitVector x(64, 1);
    CHECK_THROWS_AS(run_arch_mul(x, x, 60, {2, 20}), MemoryExhausted);
}
