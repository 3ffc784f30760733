// Classical fixed-precision online operators, one input digit per step.
#pragma once

#include "architect/digits.hpp"

#include <functional>
#include <optional>

namespace arch {

inline constexpr int kDelayParallelAdd = 0;
inline constexpr int kDelaySerialAdd = 2;
inline constexpr int kDelayMul = 3;
inline constexpr int kDelayDiv = 4;

SignedDigit sel_mul(const Rational& v);
SignedDigit sel_div(const Rational& v);

// Carry pair crossing a digit-position boundary: h from the first full adder
// level, t from the second. Value h + t - 1 in {-1,0,1}. A zero tail gives (0,1).
struct CarryPair {
    bool h = false;
    bool t = true;
    int value() const { return int(h) + int(t) - 1; }
    bool operator==(const CarryPair&) const = default;
};

// Two full-adder levels per position:
//   x+ + !x- + y+           = 2h_i + g_i
//   g_i + !y-_i + h_{i+1}   = 2t_i + s_i
//   z_i = s_i + t_{i+1} - 1
// so x + y + 2^-P * carry_in = carry_out + z. Output digit i reads positions i..i+2.
struct AddRow {
    DigitVector z;
    CarryPair carry_out;
};
AddRow parallel_add(const DigitVector& x, const DigitVector& y, CarryPair carry_in = {});

// x, y scaled by d in {-1,0,1}
DigitVector scale_digits(const DigitVector& v, SignedDigit d);

struct SerialAdderState {
    long j = 0;
    bool h0 = false;      // carry of position 0, held until t_0 is known
    bool g_prev = false;  // g_{j-1}
    bool ym_prev = false; // y-_{j-1}
    bool s_prev = false;  // s_{j-2}
    int r = 0;            // folded integer digit (weight 2^-j relative to output j-2)
};

// Emits z_{j-2} once j >= 2. The integer carry-out is folded into the leading
// output digits, so the sum must lie in (-1, 1). Throws std::logic_error otherwise.
std::optional<SignedDigit> serial_add_step(SerialAdderState& s, SignedDigit xd, SignedDigit yd);

struct StepTrace {
    long j;
    SignedDigit xd, yd;
    Rational v;
    std::optional<SignedDigit> z;
};
using TraceHook = std::function<void(const StepTrace&)>;

struct MulState {
    DigitVector x, y;
    Rational xv, yv, w;
    long j = 0;
    TraceHook trace;
};

std::optional<SignedDigit> mul_step(MulState& s, SignedDigit xd, SignedDigit yd);

struct DivState {
    DigitVector y, z;
    Rational yv, zv, w;
    long j = 0;
    int ysign = 0;  // sign of the divisor, from its first nonzero digit
    TraceHook trace;
};

// divisor magnitude must be in [1/2, 1) and |dividend| < |divisor|
std::optional<SignedDigit> div_step(DivState& s, SignedDigit xd, SignedDigit yd);

// Convenience drivers: feed both operands (zero-extended) for q + delay steps.
DigitVector run_mul(const DigitVector& x, const DigitVector& y, std::size_t q);
DigitVector run_div(const DigitVector& x, const DigitVector& y, std::size_t q);
DigitVector run_serial_add(const DigitVector& x, const DigitVector& y, std::size_t q);

}  // namespace arch
