#include "architect/analysis.hpp"

#include "architect/cpf_store.hpp"

#include <cmath>
#include <stdexcept>

namespace arch {

std::string to_string(DatapathKind k) {
    switch (k) {
        case DatapathKind::AddersOnly: return "adders";
        case DatapathKind::HasMultiplier: return "multiplier";
        case DatapathKind::HasDivider: return "divider";
    }
    return "?";
}

int DatapathProfile::alpha() const {
    switch (kind) {
        case DatapathKind::HasDivider: return 2;
        case DatapathKind::HasMultiplier: return 1;
        default: return 0;
    }
}

static long ceil_div(long a, long b) {
    return (a + b - 1) / b;
}

long k_res(long K, long P, long delta) {
    if (K < 1 || P < 1 || delta < 1) throw std::invalid_argument("k_res: K, P, delta must be >= 1");
    return P > delta ? ceil_div(P, delta) + K - 1 : K;
}

long p_of_k(long k, long K, long P, long delta, long Kr) {
    if (k < K) return delta * (ceil_div(P, delta) + K - k);
    if (k == K) return P;
    return delta * (Kr - k);
}

// The printed closed form floor(3/2 (sqrt(1 + 8D/9) - 1)) is the largest n with
// n(n+3)/2 <= D; solve that in integers to dodge float rounding.
Capacity capacity(long U, std::uint64_t D) {
    if (U < 1 || D < 1) throw std::invalid_argument("capacity: U, D must be >= 1");
    auto f = [](std::uint64_t n) { return n * (n + 3) / 2; };
    std::uint64_t n = static_cast<std::uint64_t>(1.5 * (std::sqrt(1.0 + 8.0 * double(D) / 9.0) - 1.0));
    while (n > 0 && f(n) > D) --n;
    while (f(n + 1) <= D) ++n;
    Capacity c;
    c.P_max = U * static_cast<long>(1 + n);
    const long m = c.P_max / U;
    // D >= (m + 1) * P_max / (2U), i.e. 2D >= (m + 1) * m
    c.K_max = (2 * D >= std::uint64_t(m + 1) * std::uint64_t(m)) ? m + 1 : m;
    return c;
}

long long generation_cost(long p, int alpha, int U) {
    if (p <= 0) return 0;
    const long long n = ceil_div(p, U);
    const long long pp = p;
    switch (alpha) {
        case 2: return pp * (2 * n - 1) - static_cast<long long>(U) * n * (n - 1);
        case 1: return n * pp - static_cast<long long>(U) * n * (n - 1) / 2;
        default: return pp;
    }
}

// T1 = delta*K_res and T3 = beta*(K_res^2 - K_res + 2K - 2) as printed. T2 sums the
// generation cost over approximants 0..N, N being the last approximant that gets
// digits, with p(0) = p(1) + delta (initial-guess digits read). For P > delta,
// N = K_res - 1 and this is the printed sum minus delta; for P <= delta the printed
// sum stops one approximant short, so it is extended to K and the -delta dropped.
ComputeTime compute_time(const DatapathProfile& prof, long K, long P) {
    const long d = prof.delta;
    const long Kr = k_res(K, P, d);
    const long N = P > d ? Kr - 1 : K;
    ComputeTime t;
    t.T1 = static_cast<long long>(d) * Kr;
    const long p1 = p_of_k(1, K, P, d, Kr);
    long long t2 = generation_cost(p1 + d, prof.alpha(), prof.U);
    for (long k = 1; k <= N; ++k) t2 += generation_cost(p_of_k(k, K, P, d, Kr), prof.alpha(), prof.U);
    t2 -= static_cast<long long>(d) * (Kr - N);
    t.T2 = t2;
    t.T3 = prof.parallel_adders
               ? 0
               : static_cast<long long>(prof.beta) * (static_cast<long long>(Kr) * Kr - Kr + 2LL * K - 2);
    t.T = t.T1 + t.T2 + t.T3;
    return t;
}

std::uint64_t staircase_peak_address(long K, long P, long delta, long U) {
    const long Kr = k_res(K, P, delta);
    std::uint64_t peak = 0;
    for (long k = 1; k <= Kr; ++k) {
        const long p = p_of_k(k, K, P, delta, Kr);
        if (p <= 0) continue;
        const auto a = cpf(static_cast<std::uint64_t>(k - 1), static_cast<std::uint64_t>(ceil_div(p, U) - 1));
        if (a > peak) peak = a;
    }
    return peak;
}

// kappa_2 = sigma_max / sigma_min = lambda_max(A^T A) / |det A|
double condition_number_2x2(const Matrix2& A) {
    const Rational det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det == 0) throw std::domain_error("singular matrix");
    Rational fro = 0;
    for (auto& row : A)
        for (auto& e : row) fro += e * e;
    const double tr = fro.get_d();
    const double dt = Rational(abs(det)).get_d();
    const double lmax = 0.5 * (tr + std::sqrt(tr * tr - 4.0 * dt * dt));
    return lmax / dt;
}

}  // namespace arch
