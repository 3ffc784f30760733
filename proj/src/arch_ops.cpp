#include "architect/arch_ops.hpp"

#include <algorithm>
#include <cstdlib>

namespace arch {

int compare_sd(long head, const DigitVector& frac, long t4) {
    auto d = [&](std::size_t m) -> long { return m < frac.size() ? frac[m] : 0; };
    long acc = 4 * head - t4 + 2 * d(0) + d(1);
    for (std::size_t m = 2; acc == 0 && m < frac.size(); ++m) acc = 2 * acc + d(m);
    return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

namespace {

// 2w shifted left one digit: position i takes w_{i+1}; the word's last slot takes
// the first digit of the next chunk, held over from the previous sweep step.
DigitVector shift_word(const DigitVector& w, SignedDigit next_first) {
    DigitVector s(w.size());
    for (std::size_t u = 0; u + 1 < w.size(); ++u) s[u] = w[u + 1];
    s.back() = next_first;
    return s;
}

Rational read_fraction(const CpfStore& st, std::uint64_t row, long chunks) {
    DigitVector all;
    for (long c = 0; c < chunks; ++c) {
        DigitVector w = st.read(row, static_cast<std::uint64_t>(c));
        all.insert(all.end(), w.begin(), w.end());
    }
    return value_of(all);
}

}  // namespace

ArchResult ArchMulUnit::step(SignedDigit xd, SignedDigit yd) {
    const long j = j_;
    const long U = st_.x->config().U;
    st_.y->write_digit(row_, static_cast<std::uint64_t>(j), yd);

    const long top = j / U;
    DigitVector V(static_cast<std::size_t>((top + 1) * U), 0);
    CarryPair c1, c2;
    SignedDigit next_first = 0, w0 = 0;
    for (long c = top; c >= 0; --c) {
        const auto cc = static_cast<std::uint64_t>(c);
        DigitVector xw = st_.x->read(row_, cc);
        DigitVector yw = st_.y->read(row_, cc);
        DigitVector ww = st_.w->read(row_, cc);
        DigitVector S = shift_word(ww, next_first);
        next_first = ww[0];
        if (c == 0) w0 = ww[0];
        AddRow r1 = parallel_add(scale_digits(xw, yd), scale_digits(yw, xd), c1);
        c1 = r1.carry_out;
        AddRow r2 = parallel_add(S, r1.z, c2);
        c2 = r2.carry_out;
        st_.v->write(row_, cc, r2.z);
        if (c > 0) st_.w->write(row_, cc, r2.z);
        std::copy(r2.z.begin(), r2.z.end(), V.begin() + c * U);
    }
    const long vint = 2L * head_ + w0 + c1.value() + c2.value();

    SignedDigit z = 0;
    if (j >= kDelayMul) {
        if (compare_sd(vint, V, 16) >= 0) z = 1;
        else if (compare_sd(vint, V, -16) < 0) z = -1;
    }
    head_ = static_cast<int>(vint - 8L * z);
    st_.w->write(row_, 0, DigitVector(V.begin(), V.begin() + U));
    st_.x->write_digit(row_, static_cast<std::uint64_t>(j), xd);
    if (std::abs(head_) > 8) throw std::logic_error("arch mul residual out of bounds");
    ++j_;

    ArchResult res;
    if (j >= kDelayMul) res.z = z;
    res.cycles = static_cast<int>(top + 1);
    if (trace) trace({j, static_cast<int>(top + 1), static_cast<int>(vint), V, res.z, res.cycles});
    return res;
}

Rational ArchMulUnit::residual() const {
    const long U = st_.x->config().U;
    return (Rational(head_) + read_fraction(*st_.w, row_, std::max(j_ - 1, 0L) / U + 1)) / 8;
}

ArchResult ArchDivUnit::step(SignedDigit xd, SignedDigit yd) {
    const long j = j_;
    const long U = st_.y->config().U;
    st_.y->write_digit(row_, static_cast<std::uint64_t>(j), yd);
    if (ysign_ == 0 && yd != 0) ysign_ = yd;

    // x_j * 2^-4 sits at position 3
    const long top = std::max(j, 3L) / U;
    const long xchunk = 3 / U, xslot = 3 % U;
    DigitVector V(static_cast<std::size_t>((top + 1) * U), 0);
    CarryPair c1, c2;
    SignedDigit next_first = 0, w0 = 0;
    for (long c = top; c >= 0; --c) {
        const auto cc = static_cast<std::uint64_t>(c);
        DigitVector ww = st_.w->read(row_, cc);
        DigitVector zw = st_.z->read(row_, cc);
        DigitVector S = shift_word(ww, next_first);
        next_first = ww[0];
        if (c == 0) w0 = ww[0];
        DigitVector B(static_cast<std::size_t>(U), 0);
        if (c == xchunk) B[static_cast<std::size_t>(xslot)] = xd;
        AddRow r1 = parallel_add(scale_digits(zw, static_cast<SignedDigit>(-yd)), B, c1);
        c1 = r1.carry_out;
        AddRow r2 = parallel_add(S, r1.z, c2);
        c2 = r2.carry_out;
        st_.v->write(row_, cc, r2.z);
        std::copy(r2.z.begin(), r2.z.end(), V.begin() + c * U);
    }
    const long vint = 2L * head_ + w0 + c1.value() + c2.value();

    SignedDigit z = 0;
    if (j >= kDelayDiv) {
        if (ysign_ == 0) throw std::domain_error("divisor outside [1/2, 1)");
        int s = 0;
        if (compare_sd(vint, V, 1) >= 0) s = 1;
        else if (compare_sd(vint, V, -1) < 0) s = -1;
        z = static_cast<SignedDigit>(s * ysign_);
    }

    // second sweep: w = v - z*y
    CarryPair c3;
    for (long c = top; c >= 0; --c) {
        const auto cc = static_cast<std::uint64_t>(c);
        DigitVector yw = st_.y->read(row_, cc);
        DigitVector vw(V.begin() + c * U, V.begin() + (c + 1) * U);
        AddRow r = parallel_add(vw, scale_digits(yw, static_cast<SignedDigit>(-z)), c3);
        c3 = r.carry_out;
        st_.w->write(row_, cc, r.z);
    }
    head_ = static_cast<int>(vint + c3.value());
    if (j >= kDelayDiv) st_.z->write_digit(row_, static_cast<std::uint64_t>(j), z);
    if (std::abs(head_) > 1) throw std::logic_error("arch div residual out of bounds");
    ++j_;

    ArchResult res;
    if (j >= kDelayDiv) res.z = z;
    res.cycles = static_cast<int>(2 * (j / U) + 1);
    if (trace) trace({j, static_cast<int>(top + 1), static_cast<int>(vint), V, res.z, res.cycles});
    return res;
}

Rational ArchDivUnit::residual() const {
    const long U = st_.y->config().U;
    return Rational(head_) + read_fraction(*st_.w, row_, std::max(j_ - 1, 3L) / U + 1);
}

ArchMul::ArchMul(StoreConfig cfg, std::uint64_t row)
    : x("mul.x", cfg), y("mul.y", cfg), w("mul.w", cfg), v("mul.v", cfg), unit({&x, &y, &w, &v}, row) {}

ArchDiv::ArchDiv(StoreConfig cfg, std::uint64_t row)
    : y("div.y", cfg), w("div.w", cfg), z("div.z", cfg), v("div.v", cfg), unit({&y, &w, &z, &v}, row) {}

namespace {
inline SignedDigit at(const DigitVector& v, std::size_t j) {
    return j < v.size() ? v[j] : 0;
}
}  // namespace

DigitVector run_arch_mul(const DigitVector& x, const DigitVector& y, std::size_t q, StoreConfig cfg,
                         long* cycles) {
    ArchMul m(cfg);
    DigitVector z;
    long cyc = 0;
    for (std::size_t j = 0; z.size() < q; ++j) {
        ArchResult r = m.unit.step(at(x, j), at(y, j));
        cyc += r.cycles;
        if (r.z) z.push_back(*r.z);
    }
    if (cycles) *cycles = cyc;
    return z;
}

DigitVector run_arch_div(const DigitVector& x, const DigitVector& y, std::size_t q, StoreConfig cfg,
                         long* cycles) {
    ArchDiv d(cfg);
    DigitVector z;
    long cyc = 0;
    for (std::size_t j = 0; z.size() < q; ++j) {
        ArchResult r = d.unit.step(at(x, j), at(y, j));
        cyc += r.cycles;
        if (r.z) z.push_back(*r.z);
    }
    if (cycles) *cycles = cyc;
    return z;
}

}  // namespace arch
