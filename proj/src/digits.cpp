#include "architect/digits.hpp"

#include <stdexcept>

namespace arch {

DigitPair encode(SignedDigit d) {
    return {d > 0, d < 0};
}

SignedDigit decode(DigitPair p) {
    return static_cast<SignedDigit>(int(p.plus) - int(p.minus));
}

Rational pow2(long e) {
    Integer one = 1;
    Rational r;
    if (e >= 0) {
        mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        r = Rational(one);
    } else {
        Integer den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        r = Rational(one, den);
    }
    return r;
}

Integer scaled_value(const DigitVector& v, std::size_t len) {
    Integer n = 0;
    for (std::size_t i = 0; i < len; ++i) {
        n *= 2;
        if (i < v.size()) n += v[i];
    }
    return n;
}

Rational value_of(const DigitVector& v, std::size_t len) {
    Rational r(scaled_value(v, len));
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(len));
    return r;
}

Rational value_of(const DigitVector& v) {
    return value_of(v, v.size());
}

DigitVector rational_to_digit_stream(const Rational& r, std::size_t count) {
    DigitSource src(r);
    DigitVector out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = src.at(j);
    return out;
}

Rational prefix_error_bound(std::size_t q) {
    return pow2(-static_cast<long>(q));
}

DigitSource::DigitSource(const Rational& r) : r_(r) {
    if (abs(r) >= 1) throw std::domain_error("operand outside (-1, 1)");
    sign_ = static_cast<SignedDigit>(sgn(r) < 0 ? -1 : 1);
    rem_ = abs(r.get_num());
    den_ = r.get_den();
}

SignedDigit DigitSource::at(std::size_t j) {
    while (cache_.size() <= j) {
        rem_ *= 2;
        if (rem_ >= den_) {
            rem_ -= den_;
            cache_.push_back(sign_);
        } else {
            cache_.push_back(0);
        }
    }
    return cache_[j];
}

// Q holds the conversion so far, QM = Q - ulp. Each digit appends one bit to
// both; at most one of them is reloaded from the other (no carry pass).
TwosComplement otf_convert(const DigitVector& v) {
    std::vector<bool> q{false}, qm{true};
    for (SignedDigit d : v) {
        if (d > 0) {
            qm = q;
            q.push_back(true);
            qm.push_back(false);
        } else if (d == 0) {
            q.push_back(false);
            qm.push_back(true);
        } else {
            q = qm;
            q.push_back(true);
            qm.push_back(false);
        }
    }
    TwosComplement t;
    t.bits = std::move(q);
    return t;
}

Rational TwosComplement::value() const {
    Integer n = bits[0] ? -1 : 0;
    for (std::size_t i = 1; i < bits.size(); ++i) n = 2 * n + (bits[i] ? 1 : 0);
    Rational r(n);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(bits.size() - 1));
    return r;
}

std::string TwosComplement::str() const {
    std::string s(1, bits[0] ? '1' : '0');
    s += '.';
    for (std::size_t i = 1; i < bits.size(); ++i) s += bits[i] ? '1' : '0';
    return s;
}

std::string to_string(const DigitVector& v) {
    std::string s;
    s.reserve(v.size());
    for (SignedDigit d : v) s += d > 0 ? '+' : (d < 0 ? '-' : '0');
    return s;
}

DigitVector parse_digits(const std::string& s) {
    DigitVector v;
    v.reserve(s.size());
    for (char ch : s) {
        if (ch == '+' || ch == '1') v.push_back(1);
        else if (ch == '-') v.push_back(-1);
        else if (ch == '0') v.push_back(0);
        else throw std::invalid_argument("bad digit character");
    }
    return v;
}

}  // namespace arch
