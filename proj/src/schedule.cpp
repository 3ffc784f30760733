#include "architect/schedule.hpp"

#include <algorithm>

namespace arch {

long ScheduleState::psi_of(long kk) const {
    return kk >= 0 && kk < static_cast<long>(psi.size()) ? psi[kk] : 0;
}

void ScheduleState::set_psi(long kk, long v) {
    if (kk >= static_cast<long>(psi.size())) psi.resize(kk + 1, 0);
    psi[kk] = v;
}

Action current_action(const ScheduleState& s) {
    if (s.mode == Mode::Accumulation) return {Action::Stall, s.k, s.i};
    return {Action::Generate, s.k, s.i};
}

namespace {

void advance(ScheduleState& s, bool elision) {
    const long d = s.delta;
    if (s.i % d != d - 1) {
        ++s.i;
        return;
    }
    // the boxed elision test: the next approximant's group would lie wholly in
    // elided digits, so it is skipped this sweep
    const bool fully_elided = elision && s.i - s.psi_of(s.k + 1) <= d - 1;
    if (s.i >= d && !fully_elided) {
        s.i = s.i - 2 * d + 1;
        ++s.k;
        return;
    }
    // back to approximant 1's next fresh group
    s.i = s.literal_snap ? s.i + s.k * d + 1 : s.i + (s.k - 1) * d + 1;
    s.k = 1;
}

}  // namespace

std::pair<ScheduleState, Action> schedule_step(const ScheduleState& s, bool elision) {
    ScheduleState n = s;
    Action a = current_action(s);
    if (s.mode == Mode::DigitGeneration) {
        const long stalls = s.alpha > 0 ? static_cast<long>(s.alpha) * (s.i / s.U) : 0;
        if (stalls > 0) {
            n.mode = Mode::Accumulation;
            n.gamma = stalls - 1;  // gamma <- alpha*floor(i/U) - 1
        } else {
            advance(n, elision);
        }
    } else if (s.gamma > 0) {
        --n.gamma;
    } else {
        n.mode = Mode::DigitGeneration;
        advance(n, elision);
    }
    return {n, a};
}

long common_prefix(const DigitVector& a, const DigitVector& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t m = 0;
    while (m < n && a[m] == b[m]) ++m;
    return static_cast<long>(m);
}

long update_elision_pointer(const DigitVector& prev, const DigitVector& prev2, int delta) {
    const long M = common_prefix(prev, prev2);
    return delta * (std::max(0L, M - delta) / delta);
}

std::vector<std::pair<long, long>> zigzag_pattern(int delta, std::size_t count) {
    std::vector<std::pair<long, long>> out;
    for (long n = 0; out.size() < count; ++n) {
        for (long k = 1; k <= n + 1 && out.size() < count; ++k) {
            const long g = n - k + 1;
            for (long i = g * delta; i < (g + 1) * delta && out.size() < count; ++i) out.push_back({k, i});
        }
    }
    return out;
}

std::string to_string(Action::Type t) {
    return t == Action::Generate ? "generate" : "stall";
}

}  // namespace arch
