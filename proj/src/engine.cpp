#include "architect/engine.hpp"

#include <stdexcept>

namespace arch {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::TargetReached: return "target_reached";
        case StopReason::Converged: return "converged";
        case StopReason::MemoryExhausted: return "memory_exhausted";
        case StopReason::CycleLimit: return "cycle_limit";
    }
    return "?";
}

namespace {

class NullUnit : public ApproxUnit {
public:
    explicit NullUnit(int d) : d_(d) {}
    std::optional<std::vector<SignedDigit>> step(const std::vector<SignedDigit>&) override {
        if (j_++ < d_) return std::nullopt;
        return std::vector<SignedDigit>{0};
    }

private:
    int d_;
    long j_ = 0;
};

}  // namespace

std::unique_ptr<ApproxUnit> NullDatapath::make_unit(long) {
    return std::make_unique<NullUnit>(d_);
}

Engine::Engine(Datapath& dp, EngineOptions opt)
    : dp_(dp), opt_(std::move(opt)), delta_(dp.delta()), ncomp_(dp.components()) {
    for (int c = 0; c < ncomp_; ++c) state_.emplace_back("x" + std::to_string(c), opt_.store);
    s_.delta = delta_;
    DatapathProfile prof;
    prof.kind = dp_.kind();
    s_.alpha = prof.alpha();
    s_.U = opt_.store.U;
    s_.literal_snap = opt_.literal_snap;
    if (!opt_.fixed_psi.empty()) s_.psi = opt_.fixed_psi;
    r_.approx.resize(2);
    units_.resize(2);
    cache_.resize(2);
}

SignedDigit Engine::input_digit(long k, int comp, long j) {
    if (k == 0) return dp_.initial_digit(comp, j);
    const DigitVector& d = r_.approx[k].digits[comp];
    if (j >= static_cast<long>(d.size()))
        throw std::logic_error("schedule dependency violated: (" + std::to_string(k) + "," + std::to_string(j) +
                               ") not yet available");
    return d[j];
}

std::vector<SignedDigit> Engine::inputs_for(long k, long j) {
    if (k == 1) {
        // initial-guess digits cost like generated ones when first read
        if (static_cast<long>(init_read_.size()) <= j) init_read_.resize(j + 1, 0);
        if (!init_read_[j]) {
            init_read_[j] = 1;
            const long long c = 1 + static_cast<long long>(s_.alpha) * (j / s_.U);
            if (opt_.trace) r_.trace.push_back({r_.cycles, 0, j, "read_initial"});
            r_.initial_reads += c;
            r_.cycles += c;
        }
    }
    std::vector<SignedDigit> in(ncomp_);
    for (int c = 0; c < ncomp_; ++c) in[c] = input_digit(k - 1, c, j);
    return in;
}

void Engine::start(long k) {
    ApproxRecord& A = r_.approx[k];
    A.started = true;
    A.psi = (opt_.elision && k > 1) ? s_.psi_of(k) : 0;
    if (opt_.elision) ++r_.psi_entries;
    A.digits.assign(ncomp_, DigitVector{});
    if (opt_.trace) r_.trace.push_back({r_.cycles, k, A.psi, "warmup"});
    r_.warmup += delta_;
    r_.cycles += delta_;
    units_[k] = dp_.make_unit(k);
    if (A.psi > 0)
        for (int c = 0; c < ncomp_; ++c) {
            const DigitVector& prev = r_.approx[k - 1].digits[c];
            A.digits[c].assign(prev.begin(), prev.begin() + A.psi);
        }
    // bring the operators up to input psi + delta - 1; past the warm-up this must
    // reproduce the predecessor's digits, which is what makes skipping them safe
    for (long j = 0; j < A.psi + delta_; ++j) {
        auto out = units_[k]->step(inputs_for(k, j));
        if (j < delta_) continue;
        if (!out) throw std::logic_error("datapath produced no digit after its delay");
        for (int c = 0; c < ncomp_; ++c)
            if ((*out)[c] != A.digits[c][j - delta_]) throw std::logic_error("elided digit mismatch on replay");
    }
}

void Engine::generate(long k, long i) {
    if (static_cast<long>(r_.approx.size()) <= k + 1) {
        r_.approx.resize(k + 2);
        units_.resize(k + 2);
        cache_.resize(k + 2);
    }
    ApproxRecord& A = r_.approx[k];
    if (!A.started) start(k);
    if (static_cast<long>(A.digits[0].size()) != i)
        throw std::logic_error("digit generated out of order at (" + std::to_string(k) + "," + std::to_string(i) + ")");
    auto out = units_[k]->step(inputs_for(k, i + delta_));
    if (!out) throw std::logic_error("datapath produced no digit after its delay");
    for (int c = 0; c < ncomp_; ++c) {
        state_[c].write_digit(static_cast<std::uint64_t>(k - 1), static_cast<std::uint64_t>(i), (*out)[c],
                              static_cast<std::uint64_t>(A.psi));
        A.digits[c].push_back((*out)[c]);
    }
    ++A.generated;
    if (opt_.trace) r_.trace.push_back({r_.cycles, k, i, "generate"});
    ++r_.generate;
    ++r_.cycles;
}

Rational Engine::prefix_value(long k, int comp) {
    if (static_cast<long>(cache_[k].size()) < ncomp_) cache_[k].resize(ncomp_);
    ValueCache& vc = cache_[k][comp];
    const DigitVector& d = r_.approx[k].digits[comp];
    while (vc.len < d.size()) {
        vc.num = 2 * vc.num + d[vc.len];
        ++vc.len;
    }
    Rational v(vc.num);
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(vc.len));
    return v;
}

bool Engine::check_convergence() {
    bool any = false;
    for (long k = 1; k < static_cast<long>(r_.approx.size()); ++k) {
        const ApproxRecord& A = r_.approx[k];
        if (!A.started || A.digits[0].empty()) continue;
        std::vector<Rational> vals(ncomp_);
        for (int c = 0; c < ncomp_; ++c) vals[c] = prefix_value(k, c);
        auto res = dp_.residual(vals);
        if (!res) return false;
        any = true;
        if (!r_.best_residual || *res <= *r_.best_residual) {
            r_.best_residual = *res;
            r_.best_k = k;
        }
    }
    return any && opt_.eta && *r_.best_residual < *opt_.eta;
}

EngineResult Engine::run() {
    bool stop_pending = false;
    const bool recompute_psi = opt_.elision && opt_.fixed_psi.empty();
    while (true) {
        if (opt_.max_cycles > 0 && r_.cycles >= opt_.max_cycles) {
            r_.stop = StopReason::CycleLimit;
            break;
        }
        const Action a = current_action(s_);
        if (a.type == Action::Generate) {
            try {
                generate(a.k, a.i);
            } catch (const MemoryExhausted& e) {
                r_.stop = StopReason::MemoryExhausted;
                r_.exhausted_store = e.store;
                break;
            }
            const bool next_started =
                a.k + 1 < static_cast<long>(r_.approx.size()) && r_.approx[a.k + 1].started;
            if (recompute_psi && a.i % delta_ == delta_ - 1 && !next_started) {
                long M = -1;
                for (int c = 0; c < ncomp_; ++c) {
                    const DigitVector& cur = r_.approx[a.k].digits[c];
                    DigitVector prev;
                    if (a.k == 1)
                        for (std::size_t j = 0; j < cur.size(); ++j)
                            prev.push_back(dp_.initial_digit(c, static_cast<long>(j)));
                    const long m = common_prefix(cur, a.k == 1 ? prev : r_.approx[a.k - 1].digits[c]);
                    M = M < 0 ? m : std::min(M, m);
                }
                s_.set_psi(a.k + 1, delta_ * (std::max(0L, M - delta_) / delta_));
            }
            if (opt_.target && a.k == opt_.target->first &&
                static_cast<long>(r_.approx[a.k].digits[0].size()) >= opt_.target->second)
                stop_pending = true;
        } else {
            if (opt_.trace) r_.trace.push_back({r_.cycles, a.k, a.i, "stall"});
            ++r_.stall;
            ++r_.cycles;
        }
        auto [n, act] = schedule_step(s_, opt_.elision);
        (void)act;
        const bool back_to_gen = n.mode == Mode::DigitGeneration;
        if (stop_pending && back_to_gen) {
            r_.stop = StopReason::TargetReached;
            s_ = n;
            break;
        }
        // every group end is a switch, including the first sweep's snap onto (1, delta)
        const bool moved = back_to_gen && a.i % delta_ == delta_ - 1;
        if (moved) {
            if (n.k == 1) {
                ++r_.sweeps;
                if (opt_.eta && check_convergence()) {
                    r_.stop = StopReason::Converged;
                    s_ = n;
                    break;
                }
            }
            if (!opt_.parallel_adders) {
                // serial adders reload their registers on every group switch
                const long long c = 2LL * dp_.beta();
                if (opt_.trace) r_.trace.push_back({r_.cycles, n.k, n.i, "refill"});
                r_.refill += c;
                r_.cycles += c;
            }
        }
        s_ = n;
    }
    if (r_.stop != StopReason::Converged) check_convergence();
    for (auto& st : state_) r_.state_peak_words += st.peak_words();
    r_.peak_words = r_.state_peak_words;
    for (const CpfStore* st : dp_.operator_stores()) r_.peak_words += st->peak_words();
    return r_;
}

}  // namespace arch
