#include "architect/online.hpp"

#include <cstdlib>
#include <stdexcept>

namespace arch {

namespace {

const Rational kHalf(1, 2);
const Rational kQuarter(1, 4);

struct Bits {
    bool hi, lo;
};

inline Bits level1(SignedDigit x, SignedDigit y) {
    int s = int(x > 0) + int(!(x < 0)) + int(y > 0);
    return {s >= 2, (s & 1) != 0};
}

inline Bits level2(bool g, bool yminus, bool h_next) {
    int s = int(g) + int(!yminus) + int(h_next);
    return {s >= 2, (s & 1) != 0};
}

void add_digit(Rational& acc, SignedDigit d, long pos) {
    if (d == 0) return;
    Rational t = pow2(-(pos + 1));
    if (d > 0) acc += t;
    else acc -= t;
}

}  // namespace

SignedDigit sel_mul(const Rational& v) {
    if (v >= kHalf) return 1;
    if (v >= -kHalf) return 0;
    return -1;
}

SignedDigit sel_div(const Rational& v) {
    if (v >= kQuarter) return 1;
    if (v >= -kQuarter) return 0;
    return -1;
}

DigitVector scale_digits(const DigitVector& v, SignedDigit d) {
    DigitVector out(v.size(), 0);
    if (d == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<SignedDigit>(v[i] * d);
    return out;
}

AddRow parallel_add(const DigitVector& x, const DigitVector& y, CarryPair carry_in) {
    const std::size_t P = x.size();
    if (y.size() != P) throw std::invalid_argument("parallel_add: width mismatch");
    std::vector<bool> h(P + 1), g(P), t(P + 1), s(P);
    for (std::size_t i = 0; i < P; ++i) {
        Bits b = level1(x[i], y[i]);
        h[i] = b.hi;
        g[i] = b.lo;
    }
    h[P] = carry_in.h;
    t[P] = carry_in.t;
    for (std::size_t i = 0; i < P; ++i) {
        Bits b = level2(g[i], y[i] < 0, h[i + 1]);
        t[i] = b.hi;
        s[i] = b.lo;
    }
    AddRow row;
    row.z.resize(P);
    for (std::size_t i = 0; i < P; ++i)
        row.z[i] = static_cast<SignedDigit>(int(s[i]) + int(t[i + 1]) - 1);
    if (P == 0) row.carry_out = carry_in;
    else row.carry_out = {h[0], t[0]};
    return row;
}

std::optional<SignedDigit> serial_add_step(SerialAdderState& st, SignedDigit xd, SignedDigit yd) {
    Bits l1 = level1(xd, yd);
    std::optional<SignedDigit> out;
    if (st.j == 0) st.h0 = l1.hi;
    if (st.j >= 1) {
        Bits l2 = level2(st.g_prev, st.ym_prev, l1.hi);
        if (st.j == 1) {
            st.r = int(st.h0) + int(l2.hi) - 1;
        } else {
            int raw = int(st.s_prev) + int(l2.hi) - 1;
            int comb = 2 * st.r + raw;
            if (comb >= -1 && comb <= 1) {
                out = static_cast<SignedDigit>(comb);
                st.r = 0;
            } else if (comb == 2 || comb == -2) {
                out = static_cast<SignedDigit>(comb / 2);
            } else {
                throw std::logic_error("serial adder: sum outside (-1, 1)");
            }
        }
        st.s_prev = l2.lo;
    }
    st.g_prev = l1.lo;
    st.ym_prev = yd < 0;
    ++st.j;
    return out;
}

// Line order follows the recurrence: y_j joins y before v is formed, x_j joins x after.
std::optional<SignedDigit> mul_step(MulState& s, SignedDigit xd, SignedDigit yd) {
    const long j = s.j;
    s.y.push_back(yd);
    add_digit(s.yv, yd, j);
    Rational v = 2 * s.w + (s.xv * yd + s.yv * xd) / 8;
    SignedDigit z = j >= kDelayMul ? sel_mul(v) : 0;  // warm-up digits are ignored
    s.w = v - z;
    s.x.push_back(xd);
    add_digit(s.xv, xd, j);
    if (abs(s.w) >= 1) throw std::logic_error("mul residual out of bounds");
    ++s.j;
    std::optional<SignedDigit> out;
    if (j >= kDelayMul) out = z;
    if (s.trace) s.trace({j, xd, yd, v, out});
    return out;
}

std::optional<SignedDigit> div_step(DivState& s, SignedDigit xd, SignedDigit yd) {
    const long j = s.j;
    s.y.push_back(yd);
    add_digit(s.yv, yd, j);
    if (s.ysign == 0 && yd != 0) s.ysign = yd;
    Rational v = 2 * s.w + (Rational(xd) - s.zv * yd) / 16;
    SignedDigit z = 0;
    if (j >= kDelayDiv) {
        if (s.ysign == 0) throw std::domain_error("divisor outside [1/2, 1)");
        z = static_cast<SignedDigit>(sel_div(v) * s.ysign);
    }
    s.w = v - z * s.yv;
    std::optional<SignedDigit> out;
    if (j >= kDelayDiv) {
        add_digit(s.zv, z, static_cast<long>(s.z.size()));
        s.z.push_back(z);
        out = z;
    }
    // while the divisor prefix is still short, w can overshoot 1 slightly
    // (x near y); the chunked divider allows the same integer head
    if (abs(s.w) >= 2) throw std::logic_error("div residual out of bounds");
    ++s.j;
    if (s.trace) s.trace({j, xd, yd, v, out});
    return out;
}

namespace {
inline SignedDigit at(const DigitVector& v, std::size_t j) {
    return j < v.size() ? v[j] : 0;
}
}  // namespace

DigitVector run_mul(const DigitVector& x, const DigitVector& y, std::size_t q) {
    MulState s;
    DigitVector z;
    for (std::size_t j = 0; z.size() < q; ++j)
        if (auto d = mul_step(s, at(x, j), at(y, j))) z.push_back(*d);
    return z;
}

DigitVector run_div(const DigitVector& x, const DigitVector& y, std::size_t q) {
    DivState s;
    DigitVector z;
    for (std::size_t j = 0; z.size() < q; ++j)
        if (auto d = div_step(s, at(x, j), at(y, j))) z.push_back(*d);
    return z;
}

DigitVector run_serial_add(const DigitVector& x, const DigitVector& y, std::size_t q) {
    SerialAdderState s;
    DigitVector z;
    for (std::size_t j = 0; z.size() < q; ++j)
        if (auto d = serial_add_step(s, at(x, j), at(y, j))) z.push_back(*d);
    return z;
}

}  // namespace arch
