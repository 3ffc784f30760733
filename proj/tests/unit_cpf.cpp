#include "architect/cpf_store.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace arch;

TEST_CASE("pairing function") {
    CHECK(cpf(0, 0) == 0);
    CHECK(cpf(1, 0) == 1);
    CHECK(cpf(0, 1) == 2);
    CHECK(cpf(2, 0) == 3);
    for (std::uint64_t a = 0; a < 5000; ++a) {
        auto [k, c] = cpf_inverse(a);
        REQUIRE(cpf(k, c) == a);
    }
    CHECK(cpf_hat(0, 10, 4, 4) == cpf(0, 1));
    CHECK_THROWS_AS(cpf_hat(0, 3, 4, 4), std::invalid_argument);
}

TEST_CASE("store read/write and exhaustion") {
    CpfStore s("t", {4, 10});
    s.write(1, 1, {1, 0, -1, 1});
    CHECK(s.read(1, 1) == DigitVector{1, 0, -1, 1});
    CHECK(s.read(0, 0) == DigitVector{0, 0, 0, 0});
    CHECK(s.peak_words() == cpf(1, 1) + 1);
    CHECK_THROWS_AS(s.write(4, 0, {0, 0, 0, 0}), MemoryExhausted);  // address 10 = D
    try {
        s.read(0, 4);
        FAIL("expected exhaustion");
    } catch (const MemoryExhausted& e) {
        CHECK(e.store == "t");
        CHECK(e.address == cpf(0, 4));
    }
    CHECK_THROWS_AS(s.write(0, 0, {1}), std::invalid_argument);
}

TEST_CASE("digit access with elision offset") {
    CpfStore s("x", {4, 100});
    for (std::uint64_t i = 6; i < 20; ++i) s.write_digit(2, i, static_cast<SignedDigit>(i % 3 - 1), 6);
    for (std::uint64_t i = 6; i < 20; ++i) CHECK(s.read_digit(2, i, 6) == static_cast<SignedDigit>(i % 3 - 1));
    // chunk 0 now starts at digit 6
    CHECK(s.read(2, 0)[0] == static_cast<SignedDigit>(6 % 3 - 1));
}

TEST_CASE("three-digit reads touch at most one word per bank") {
    for (int U : {2, 3, 4, 8}) {
        CpfStore s("b", {U, 4096});
        for (std::uint64_t i = 0; i < 40; ++i) s.write_digit(3, i, static_cast<SignedDigit>((i * 7) % 3 - 1));
        for (std::uint64_t i = 0; i < 40; ++i) {
            auto r = s.alternating_bank_read3(3, i, 40);
            CHECK(r.words_bank0 <= 1);
            CHECK(r.words_bank1 <= 1);
            for (int o = -1; o <= 1; ++o) {
                const long p = static_cast<long>(i) + o;
                const SignedDigit want = (p < 0 || p >= 40) ? 0 : static_cast<SignedDigit>((p * 7) % 3 - 1);
                CHECK(r.d[o + 1] == want);
            }
        }
    }
}

TEST_CASE("csv dump") {
    CpfStore s("m", {2, 16});
    s.write(0, 1, {1, -1});
    std::ostringstream os;
    s.dump_csv(os);
    CHECK(os.str().rfind("store,address,k,c,word\n", 0) == 0);
    CHECK(os.str().find("m,2,0,1,") != std::string::npos);
}
