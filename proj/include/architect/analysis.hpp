// Closed-form result shape, memory capacity and compute-time model.
#pragma once

#include "architect/digits.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace arch {

enum class DatapathKind { AddersOnly, HasMultiplier, HasDivider };

std::string to_string(DatapathKind k);

struct DatapathProfile {
    int delta = 2;   // total online delay along the slowest path
    int beta = 1;    // serial adders on that path
    DatapathKind kind = DatapathKind::AddersOnly;
    int U = 8;
    bool parallel_adders = false;

    // 2 with a divider, 1 with a multiplier, 0 for adders only
    int alpha() const;
};

long k_res(long K, long P, long delta);
long p_of_k(long k, long K, long P, long delta, long K_res);

struct Capacity {
    long P_max = 0;
    long K_max = 0;
};
Capacity capacity(long U, std::uint64_t D);

// cycles to produce p digits of one approximant: sum over i < p of 1 + alpha*floor(i/U)
long long generation_cost(long p, int alpha, int U);

struct ComputeTime {
    long long T = 0, T1 = 0, T2 = 0, T3 = 0;
};
ComputeTime compute_time(const DatapathProfile& prof, long K, long P);

// largest word address the (K, P) staircase puts in a state store whose rows hold
// approximant k at row k - 1 (chunks ceil(p(k)/U))
std::uint64_t staircase_peak_address(long K, long P, long delta, long U);

using Matrix2 = std::array<std::array<Rational, 2>, 2>;
double condition_number_2x2(const Matrix2& A);

}  // namespace arch
