#include "architect/schedule.hpp"

#include <doctest.h>

using namespace arch;

namespace {

std::vector<std::pair<long, long>> generations(ScheduleState s, std::size_t n, bool elision,
                                               long* stalls = nullptr) {
    std::vector<std::pair<long, long>> out;
    while (out.size() < n) {
        auto [next, a] = schedule_step(s, elision);
        if (a.type == Action::Generate)
            out.push_back({a.k, a.i});
        else if (stalls)
            ++*stalls;
        s = next;
    }
    return out;
}

}  // namespace

TEST_CASE("zig-zag generator") {
    const auto p = zigzag_pattern(2, 12);
    const std::vector<std::pair<long, long>> want{{1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1},
                                                  {1, 4}, {1, 5}, {2, 2}, {2, 3}, {3, 0}, {3, 1}};
    CHECK(p == want);
}

TEST_CASE("fsm follows the zig-zag for any delta") {
    for (int d = 1; d <= 6; ++d) {
        ScheduleState s;
        s.delta = d;
        s.alpha = 0;
        CHECK(generations(s, 200, false) == zigzag_pattern(d, 200));
    }
}

TEST_CASE("stalls do not change the visit order") {
    ScheduleState s;
    s.delta = 3;
    s.alpha = 2;
    s.U = 4;
    long stalls = 0;
    const auto g = generations(s, 60, false, &stalls);
    CHECK(g == zigzag_pattern(3, 60));
    long want = 0;
    for (auto& [k, i] : g) want += 2 * (i / 4);
    CHECK(stalls == want - 2 * (g.back().second / 4));  // the last digit's stalls come after it
}

TEST_CASE("literal snap differs") {
    ScheduleState s;
    s.delta = 3;
    s.alpha = 0;
    s.literal_snap = true;
    const auto g = generations(s, 12, false);
    // the printed update already misfires on the first snap: (1,2) -> (1, 2 + 3 + 1)
    CHECK(g[3] == std::pair<long, long>{1, 6});
}

TEST_CASE("fully elided group is skipped") {
    ScheduleState s;
    s.delta = 3;
    s.alpha = 0;
    s.set_psi(3, 3);
    const auto g = generations(s, 24, true);
    const std::vector<std::pair<long, long>> want{
        {1, 0},  {1, 1},  {1, 2},  {1, 3}, {1, 4}, {1, 5}, {2, 0}, {2, 1}, {2, 2}, {1, 6},  {1, 7},  {1, 8},
        {2, 3},  {2, 4},  {2, 5},  {1, 9}, {1, 10}, {1, 11}, {2, 6}, {2, 7}, {2, 8}, {3, 3}, {3, 4}, {3, 5}};
    CHECK(g == want);
}

TEST_CASE("elision pointer") {
    DigitVector a(10, 1), b(10, 1);
    CHECK(update_elision_pointer(a, b, 3) == 6);
    b[3] = 0;
    CHECK(update_elision_pointer(a, b, 3) == 0);  // M = delta
    CHECK(common_prefix(a, b) == 3);
    b[3] = 1;
    b[8] = -1;
    CHECK(update_elision_pointer(a, b, 3) == 3);  // M = 8
}
