// Word memory of width U and depth D, addressed by Cantor pairing of
// (approximant row, chunk).
#pragma once

#include "architect/digits.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace arch {

std::uint64_t cpf(std::uint64_t k, std::uint64_t c);

// elision-aware chunk index: chat = floor((i - psi) / U)
std::uint64_t cpf_hat(std::uint64_t k, std::uint64_t i, std::uint64_t psi, std::uint64_t U);

// inverse of cpf: address -> (k, c)
std::pair<std::uint64_t, std::uint64_t> cpf_inverse(std::uint64_t a);

struct StoreConfig {
    int U = 8;
    std::uint64_t D = 1024;
};

class MemoryExhausted : public std::runtime_error {
public:
    MemoryExhausted(std::string store, std::uint64_t address, std::uint64_t depth);
    std::string store;
    std::uint64_t address;
    std::uint64_t depth;
};

class CpfStore {
public:
    CpfStore() = default;
    CpfStore(std::string name, StoreConfig cfg);

    const std::string& name() const { return name_; }
    const StoreConfig& config() const { return cfg_; }

    DigitVector read(std::uint64_t k, std::uint64_t c) const;
    void write(std::uint64_t k, std::uint64_t c, const DigitVector& word);

    // per-digit access; psi shifts the chunk origin (elision)
    SignedDigit read_digit(std::uint64_t k, std::uint64_t i, std::uint64_t psi = 0) const;
    void write_digit(std::uint64_t k, std::uint64_t i, SignedDigit d, std::uint64_t psi = 0);

    // digits i-1, i, i+1 of row k; positions outside [0, precision) read as 0.
    // Words alternate banks by chunk parity, so at most one word per bank is touched.
    struct Read3 {
        std::array<SignedDigit, 3> d{};
        int words_bank0 = 0;
        int words_bank1 = 0;
    };
    Read3 alternating_bank_read3(std::uint64_t k, std::uint64_t i, std::uint64_t precision) const;

    std::uint64_t peak_words() const { return peak_; }  // max address touched + 1
    std::uint64_t words_written() const { return written_; }

    // address,k,c,word
    void dump_csv(std::ostream& os, bool header = true) const;

private:
    std::uint64_t checked_address(std::uint64_t k, std::uint64_t c) const;

    std::string name_;
    StoreConfig cfg_;
    std::vector<SignedDigit> mem_;   // grown on demand, zero-initialized
    std::vector<bool> touched_;
    std::uint64_t peak_ = 0;
    std::uint64_t written_ = 0;
};

}  // namespace arch
