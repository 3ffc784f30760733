// Zig-zag digit schedule over (approximant k, digit i) in groups of delta digits.
#pragma once

#include "architect/digits.hpp"

#include <string>
#include <utility>
#include <vector>

namespace arch {

enum class Mode { DigitGeneration, Accumulation };

struct ScheduleState {
    Mode mode = Mode::DigitGeneration;
    long k = 1;
    long i = 0;
    long gamma = 0;
    std::vector<long> psi;  // psi[k]; missing entries are 0
    int delta = 3;
    int alpha = 1;          // 0 = adders only, never stalls
    int U = 8;
    bool literal_snap = false;  // i <- i + k*delta + 1 on the snap; misfires, kept for comparison

    long psi_of(long kk) const;
    void set_psi(long kk, long v);
};

struct Action {
    enum Type { Generate, Stall } type = Generate;
    long k = 0;
    long i = 0;
    bool operator==(const Action&) const = default;
};

// the action the state performs this cycle
Action current_action(const ScheduleState& s);

// performs current_action(s) and moves to the next state
std::pair<ScheduleState, Action> schedule_step(const ScheduleState& s, bool elision_enabled);

// psi = delta * floor(max(0, M - delta) / delta), M = common identical-digit prefix length
long update_elision_pointer(const DigitVector& prev, const DigitVector& prev2, int delta);
long common_prefix(const DigitVector& a, const DigitVector& b);

// independent generator of the elision-free visit order: sweep n visits
// approximants 1..n+1, approximant k at group n-k+1
std::vector<std::pair<long, long>> zigzag_pattern(int delta, std::size_t count);

std::string to_string(Action::Type t);

}  // namespace arch
