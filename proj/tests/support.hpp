// Shared random generators and exact oracles for the test binaries.
#pragma once

#include "architect/digits.hpp"

#include <array>
#include <random>

namespace testsupport {

using arch::DigitVector;
using arch::Rational;

inline DigitVector random_digits(std::mt19937_64& g, std::size_t n) {
    DigitVector v(n);
    for (auto& d : v) d = static_cast<arch::SignedDigit>(static_cast<int>(g() % 3) - 1);
    return v;
}

// |value| < 1/2: leading digit 0
inline DigitVector random_half(std::mt19937_64& g, std::size_t n) {
    DigitVector v = random_digits(g, n);
    if (!v.empty()) v[0] = 0;
    return v;
}

// redundant digits with magnitude in [1/2, 1), random sign
inline DigitVector random_divisor(std::mt19937_64& g, std::size_t n) {
    while (true) {
        DigitVector v = random_digits(g, n);
        v[0] = 1;
        if (arch::value_of(v) < Rational(1, 2)) continue;
        if (g() & 1)
            for (auto& d : v) d = static_cast<arch::SignedDigit>(-d);
        return v;
    }
}

// |value| < |y|
inline DigitVector random_dividend(std::mt19937_64& g, std::size_t n, const DigitVector& y) {
    const Rational ay = abs(arch::value_of(y));
    while (true) {
        DigitVector v = random_digits(g, n);
        if (abs(arch::value_of(v)) < ay) return v;
    }
}

inline Rational absq(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

// exact 2x2 solve by Cramer's rule
inline std::array<Rational, 2> solve2(const std::array<std::array<Rational, 2>, 2>& A, const std::array<Rational, 2>& b) {
    const Rational det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    return {Rational((b[0] * A[1][1] - A[0][1] * b[1]) / det), Rational((A[0][0] * b[1] - b[0] * A[1][0]) / det)};
}

}  // namespace testsupport
