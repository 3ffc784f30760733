#include "architect/cpf_store.hpp"

#include <cmath>
#include <ostream>

namespace arch {

std::uint64_t cpf(std::uint64_t k, std::uint64_t c) {
    const std::uint64_t s = k + c;
    return s * (s + 1) / 2 + c;
}

std::uint64_t cpf_hat(std::uint64_t k, std::uint64_t i, std::uint64_t psi, std::uint64_t U) {
    if (i < psi) throw std::invalid_argument("cpf_hat: digit index below elision pointer");
    return cpf(k, (i - psi) / U);
}

std::pair<std::uint64_t, std::uint64_t> cpf_inverse(std::uint64_t a) {
    auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * double(a) + 1.0) - 1.0) / 2.0);
    // fix up float rounding
    while (w * (w + 1) / 2 > a) --w;
    while ((w + 1) * (w + 2) / 2 <= a) ++w;
    const std::uint64_t c = a - w * (w + 1) / 2;
    return {w - c, c};
}

MemoryExhausted::MemoryExhausted(std::string s, std::uint64_t a, std::uint64_t d)
    : std::runtime_error("memory exhausted in store '" + s + "' at address " + std::to_string(a) +
                         " (depth " + std::to_string(d) + ")"),
      store(std::move(s)),
      address(a),
      depth(d) {}

CpfStore::CpfStore(std::string name, StoreConfig cfg) : name_(std::move(name)), cfg_(cfg) {
    if (cfg_.U < 1 || cfg_.D < 1) throw std::invalid_argument("store needs U >= 1 and D >= 1");
}

std::uint64_t CpfStore::checked_address(std::uint64_t k, std::uint64_t c) const {
    const std::uint64_t a = cpf(k, c);
    if (a >= cfg_.D) throw MemoryExhausted(name_, a, cfg_.D);
    return a;
}

DigitVector CpfStore::read(std::uint64_t k, std::uint64_t c) const {
    const std::uint64_t a = checked_address(k, c);
    const auto U = static_cast<std::size_t>(cfg_.U);
    DigitVector w(U, 0);
    if (a < touched_.size() && touched_[a])
        for (std::size_t u = 0; u < U; ++u) w[u] = mem_[a * U + u];
    return w;
}

void CpfStore::write(std::uint64_t k, std::uint64_t c, const DigitVector& word) {
    const std::uint64_t a = checked_address(k, c);
    const auto U = static_cast<std::size_t>(cfg_.U);
    if (word.size() != U) throw std::invalid_argument("word width mismatch");
    if (a >= touched_.size()) {
        touched_.resize(a + 1, false);
        mem_.resize((a + 1) * U, 0);
    }
    touched_[a] = true;
    for (std::size_t u = 0; u < U; ++u) mem_[a * U + u] = word[u];
    if (a + 1 > peak_) peak_ = a + 1;
    ++written_;
}

SignedDigit CpfStore::read_digit(std::uint64_t k, std::uint64_t i, std::uint64_t psi) const {
    const std::uint64_t a = cpf_hat(k, i, psi, cfg_.U);
    if (a >= cfg_.D) throw MemoryExhausted(name_, a, cfg_.D);
    if (a >= touched_.size() || !touched_[a]) return 0;
    return mem_[a * cfg_.U + (i - psi) % cfg_.U];
}

void CpfStore::write_digit(std::uint64_t k, std::uint64_t i, SignedDigit d, std::uint64_t psi) {
    const std::uint64_t c = (i - psi) / cfg_.U;
    if (i < psi) throw std::invalid_argument("write below elision pointer");
    DigitVector w = read(k, c);
    w[(i - psi) % cfg_.U] = d;
    write(k, c, w);
}

CpfStore::Read3 CpfStore::alternating_bank_read3(std::uint64_t k, std::uint64_t i,
                                                 std::uint64_t precision) const {
    if (cfg_.U < 2) throw std::invalid_argument("three-digit reads need U >= 2");
    Read3 r;
    const auto U = static_cast<std::uint64_t>(cfg_.U);
    std::uint64_t fetched[2] = {~0ull, ~0ull};
    DigitVector words[2];
    for (int o = -1; o <= 1; ++o) {
        if (o < 0 && i == 0) continue;
        const std::uint64_t pos = i + o;
        if (pos >= precision) continue;
        const std::uint64_t c = pos / U;
        // banks alternate by chunk parity; consecutive cpf addresses of one row
        // can share parity, so address parity would not separate them
        const int bank = int(c & 1);
        if (fetched[bank] != c) {
            if (fetched[bank] != ~0ull) throw std::logic_error("bank conflict in three-digit read");
            fetched[bank] = c;
            words[bank] = read(k, c);
            (bank ? r.words_bank1 : r.words_bank0)++;
        }
        r.d[o + 1] = words[bank][pos % U];
    }
    return r;
}

void CpfStore::dump_csv(std::ostream& os, bool header) const {
    if (header) os << "store,address,k,c,word\n";
    const auto U = static_cast<std::size_t>(cfg_.U);
    for (std::uint64_t a = 0; a < touched_.size(); ++a) {
        if (!touched_[a]) continue;
        auto [k, c] = cpf_inverse(a);
        DigitVector w(mem_.begin() + a * U, mem_.begin() + (a + 1) * U);
        os << name_ << ',' << a << ',' << k << ',' << c << ',' << to_string(w) << '\n';
    }
}

}  // namespace arch
