// Radix-2 signed digits, MSD first. Digit i weighs 2^-(i+1); no integer part.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace arch {

using Rational = mpq_class;
using Integer = mpz_class;
using SignedDigit = std::int8_t;
using DigitVector = std::vector<SignedDigit>;

// bit-pair form used only at trace / serialization boundaries
struct DigitPair {
    bool plus = false;
    bool minus = false;
};

DigitPair encode(SignedDigit d);
SignedDigit decode(DigitPair p);  // (1,1) normalizes to 0

Rational pow2(long e);

// value * 2^len of the first len digits
Integer scaled_value(const DigitVector& v, std::size_t len);
Rational value_of(const DigitVector& v);
Rational value_of(const DigitVector& v, std::size_t len);

// non-redundant expansion of |r|, negated when r < 0; throws std::domain_error for |r| >= 1
DigitVector rational_to_digit_stream(const Rational& r, std::size_t count);

Rational prefix_error_bound(std::size_t q);

// two's complement result of on-the-fly conversion; bits[0] is the sign bit,
// bits[i] (i >= 1) weighs 2^-i
struct TwosComplement {
    std::vector<bool> bits{false};
    Rational value() const;
    std::string str() const;  // e.g. "0.01", "1.11"
};

TwosComplement otf_convert(const DigitVector& v);

std::string to_string(const DigitVector& v);        // "+0-"
DigitVector parse_digits(const std::string& s);     // throws std::invalid_argument

// Lazily expanded constant operand (non-redundant digits).
class DigitSource {
public:
    DigitSource() = default;
    explicit DigitSource(const Rational& r);
    SignedDigit at(std::size_t j);
    const Rational& value() const { return r_; }

private:
    Rational r_;
    Integer rem_, den_;
    SignedDigit sign_ = 0;
    DigitVector cache_;
};

}  // namespace arch
