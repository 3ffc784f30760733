// Cycle-counting simulator: drives a datapath's per-approximant operator
// instances through the digit schedule and keeps every approximant's digits.
#pragma once

#include "architect/analysis.hpp"
#include "architect/cpf_store.hpp"
#include "architect/schedule.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace arch {

// Operator instances of one approximant: consumes input digit j of every
// state component, returns the output digits once j >= delta.
class ApproxUnit {
public:
    virtual ~ApproxUnit() = default;
    virtual std::optional<std::vector<SignedDigit>> step(const std::vector<SignedDigit>& in) = 0;
};

class Datapath {
public:
    virtual ~Datapath() = default;
    virtual int components() const = 0;
    virtual int delta() const = 0;
    virtual int beta() const = 0;
    virtual DatapathKind kind() const = 0;
    // approximant k >= 1 keeps its operator words at row k - 1
    virtual std::unique_ptr<ApproxUnit> make_unit(long k) = 0;
    virtual SignedDigit initial_digit(int comp, long j) = 0;
    virtual std::vector<const CpfStore*> operator_stores() const { return {}; }
    // exact convergence measure of an approximant given its (scaled) component prefixes
    virtual std::optional<Rational> residual(const std::vector<Rational>&) const { return std::nullopt; }
};

struct EngineOptions {
    bool elision = false;
    bool parallel_adders = false;
    StoreConfig store{8, 1024};
    // stop as soon as approximant K holds P digits
    std::optional<std::pair<long, long>> target;
    // stop at the first sweep end where some approximant's residual is < eta
    std::optional<Rational> eta;
    long long max_cycles = 0;  // 0 = unlimited
    bool trace = false;
    bool literal_snap = false;
    // fixture hook: preset pointers, never recomputed
    std::vector<long> fixed_psi;
};

struct TraceRow {
    long long t;
    long k;
    long i;
    std::string action;
};

struct ApproxRecord {
    std::vector<DigitVector> digits;  // logical digits per component (elided ones copied in)
    long psi = 0;
    bool started = false;
    long generated = 0;  // digits actually computed
};

enum class StopReason { TargetReached, Converged, MemoryExhausted, CycleLimit };
std::string to_string(StopReason r);

struct EngineResult {
    StopReason stop = StopReason::CycleLimit;
    long long cycles = 0;
    long long warmup = 0, generate = 0, stall = 0, initial_reads = 0, refill = 0;
    std::vector<ApproxRecord> approx;  // index 0 unused (initial guess)
    long best_k = 0;                   // approximant with the smallest residual
    std::optional<Rational> best_residual;
    std::uint64_t peak_words = 0;      // summed over all stores
    std::uint64_t state_peak_words = 0;
    std::uint64_t psi_entries = 0;
    std::string exhausted_store;
    std::vector<TraceRow> trace;
    long sweeps = 0;
};

class Engine {
public:
    Engine(Datapath& dp, EngineOptions opt);
    EngineResult run();

private:
    void start(long k);
    void generate(long k, long i);
    SignedDigit input_digit(long k, int comp, long j);
    std::vector<SignedDigit> inputs_for(long k, long j);
    bool check_convergence();
    Rational prefix_value(long k, int comp);

    Datapath& dp_;
    EngineOptions opt_;
    int delta_, ncomp_;
    std::vector<std::unique_ptr<ApproxUnit>> units_;
    std::vector<CpfStore> state_;
    std::vector<char> init_read_;  // initial-guess digit already paid for
    EngineResult r_;
    ScheduleState s_;
    struct ValueCache {
        Integer num;
        std::size_t len = 0;
    };
    std::vector<std::vector<ValueCache>> cache_;
};

// Datapath with no arithmetic, for schedule and cost studies at any delta:
// every output digit is 0.
class NullDatapath : public Datapath {
public:
    NullDatapath(int delta, int beta, DatapathKind kind) : d_(delta), b_(beta), kind_(kind) {}
    int components() const override { return 1; }
    int delta() const override { return d_; }
    int beta() const override { return b_; }
    DatapathKind kind() const override { return kind_; }
    std::unique_ptr<ApproxUnit> make_unit(long k) override;
    SignedDigit initial_digit(int, long) override { return 0; }

private:
    int d_, b_;
    DatapathKind kind_;
};

}  // namespace arch
