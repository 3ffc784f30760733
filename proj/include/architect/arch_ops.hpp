// Chunked arbitrary-precision online multiplier and divider. Digit vectors live
// in CpfStores as U-digit words at (row, chunk); each input digit triggers a
// sweep over chunks from the least significant in use up to chunk 0, with the
// chunk adders' carries chained toward the MSD.
#pragma once

#include "architect/cpf_store.hpp"
#include "architect/online.hpp"

#include <optional>

namespace arch {

struct ArchResult {
    std::optional<SignedDigit> z;
    int cycles = 0;  // chunk sweep steps spent on this input digit
};

// Per-digit trace record (--trace)
struct ArchTrace {
    long j;
    int chunks;
    int head;          // integer part of the accumulated residual before selection
    DigitVector v;     // fractional part of v, all chunks
    std::optional<SignedDigit> z;
    int cycles;
};
using ArchTraceHook = std::function<void(const ArchTrace&)>;

// The residual is held as 8w so that v' = 2w' + x*y_j + y*x_j is chunk aligned;
// selection compares v' with +-4.
class ArchMulUnit {
public:
    struct Stores {
        CpfStore* x;
        CpfStore* y;
        CpfStore* w;
        CpfStore* v;
    };
    ArchMulUnit(Stores s, std::uint64_t row) : st_(s), row_(row) {}

    ArchResult step(SignedDigit xd, SignedDigit yd);
    long j() const { return j_; }
    Rational residual() const;  // w (unscaled), for tests
    ArchTraceHook trace;

private:
    Stores st_;
    std::uint64_t row_;
    long j_ = 0;
    int head_ = 0;
};

// Quotient digits are stored shifted by four positions (z_{j-4} lands at index j),
// so z*y_j*2^-4 lines up with the residual words.
class ArchDivUnit {
public:
    struct Stores {
        CpfStore* y;
        CpfStore* w;
        CpfStore* z;
        CpfStore* v;
    };
    ArchDivUnit(Stores s, std::uint64_t row) : st_(s), row_(row) {}

    ArchResult step(SignedDigit xd, SignedDigit yd);
    long j() const { return j_; }
    Rational residual() const;
    ArchTraceHook trace;

private:
    Stores st_;
    std::uint64_t row_;
    long j_ = 0;
    int head_ = 0;
    int ysign_ = 0;
};

// sign of (head + value(frac) - t4/4), exact
int compare_sd(long head, const DigitVector& frac, long t4);

// Standalone owners of the stores for one operator, handy for tests and the CLI.
struct ArchMul {
    CpfStore x, y, w, v;
    ArchMulUnit unit;
    explicit ArchMul(StoreConfig cfg, std::uint64_t row = 0);
};

struct ArchDiv {
    CpfStore y, w, z, v;
    ArchDivUnit unit;
    explicit ArchDiv(StoreConfig cfg, std::uint64_t row = 0);
};

DigitVector run_arch_mul(const DigitVector& x, const DigitVector& y, std::size_t q, StoreConfig cfg,
                         long* cycles = nullptr);
DigitVector run_arch_div(const DigitVector& x, const DigitVector& y, std::size_t q, StoreConfig cfg,
                         long* cycles = nullptr);

}  // namespace arch
