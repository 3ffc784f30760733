#include "architect/solvers.hpp"

#include "architect/schedule.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace arch {

namespace {

Rational abs_q(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

// 2^s * r without touching the numerator's sign
Rational shift(const Rational& r, long s) {
    return r * pow2(s);
}

std::deque<CpfStore> make_stores(const std::vector<std::string>& names, StoreConfig cfg) {
    std::deque<CpfStore> d;
    for (auto& n : names) d.emplace_back(n, cfg);
    return d;
}

}  // namespace

JacobiProblem make_jacobi_am(int m, const Rational& b0, const Rational& b1) {
    JacobiProblem p;
    const Rational off = 1 - pow2(-m);
    p.A = {{{Rational(1), off}, {off, Rational(1)}}};
    p.b = {b0, b1};
    return p;
}

JacobiProblem make_toy_iteration() {
    JacobiProblem p;
    const Rational sixth(1, 6), quarter(1, 4);
    p.A = {{{Rational(1), sixth}, {sixth, Rational(1)}}};
    p.b = {quarter, quarter};
    return p;
}

JacobiSetup jacobi_setup(const JacobiProblem& p) {
    for (int i = 0; i < 2; ++i)
        if (abs_q(p.A[i][i]) <= abs_q(p.A[i][1 - i]))
            throw NotDiagonallyDominant("row " + std::to_string(i) + " is not strictly diagonally dominant");
    JacobiSetup su;
    Rational C = 0, mu = 0;
    for (int i = 0; i < 2; ++i) {
        su.m[i] = -p.A[i][1 - i] / p.A[i][i];
        su.c[i] = p.b[i] / p.A[i][i];
        C = std::max(C, abs_q(su.c[i]));
        mu = std::max(mu, abs_q(su.m[i]));
    }
    // every iterate stays within 1/2 once C' <= (1 - mu)/2 and |y0| <= 1/2
    const Rational half(1, 2);
    long s = 0;
    auto ok = [&](long s) {
        if (shift(C, -s) / (1 - mu) > half) return false;
        for (auto& x : p.x0)
            if (abs_q(shift(x, -s)) > half) return false;
        return true;
    };
    while (!ok(s)) ++s;
    su.s = s;
    for (int i = 0; i < 2; ++i) {
        su.c[i] = shift(su.c[i], -s);
        su.y0[i] = shift(p.x0[i], -s);
    }
    return su;
}

Rational jacobi_residual(const JacobiProblem& p, long s, const std::vector<Rational>& y) {
    Rational worst = 0;
    for (int i = 0; i < 2; ++i) {
        Rational r = -p.b[i];
        for (int j = 0; j < 2; ++j) r += p.A[i][j] * shift(y[j], s);
        worst = std::max(worst, abs_q(r));
    }
    return worst;
}

NewtonSetup newton_setup(const NewtonProblem& p) {
    if (p.a <= 0) throw InvalidProblem("a must be positive");
    NewtonSetup su;
    const Rational quarter(1, 4);
    auto ystar2 = [&](long s) -> Rational { return Rational(3) / (p.a * pow2(2 * s)); };
    long s = 0;
    while (ystar2(s) >= 1) ++s;
    while (ystar2(s) < quarter) --s;
    su.s = s;
    const Rational y2 = ystar2(s);
    su.c = y2 / 2;
    if (p.x0) {
        su.y0 = shift(*p.x0, -s);
        if (su.y0 < Rational(1, 2) || su.y0 >= 1)
            throw InvalidProblem("scaled initial guess " + su.y0.get_str() + " outside [1/2, 1)");
        const Rational y1 = su.y0 / 2 + su.c / su.y0;
        if (y1 >= 1) throw InvalidProblem("first iterate " + y1.get_str() + " leaves [1/2, 1)");
    } else {
        // 1 - 2^-t at or above the root keeps every iterate in [y*, 1)
        long t = 1;
        while ((1 - pow2(-t)) * (1 - pow2(-t)) < y2) ++t;
        su.y0 = 1 - pow2(-t);
    }
    return su;
}

Rational newton_residual(const NewtonProblem& p, long s, const Rational& y) {
    return abs_q(p.a * pow2(2 * s) * y * y - 3);
}

// ---------------------------------------------------------------- datapaths

namespace {

class JacobiUnit : public ApproxUnit {
public:
    JacobiUnit(std::deque<CpfStore>& st, std::uint64_t row, const JacobiSetup& su)
        : mul_{ArchMulUnit({&st[0], &st[1], &st[2], &st[3]}, row),
               ArchMulUnit({&st[4], &st[5], &st[6], &st[7]}, row)},
          m_{DigitSource(su.m[0]), DigitSource(su.m[1])},
          c_{DigitSource(su.c[0]), DigitSource(su.c[1])} {}

    std::optional<std::vector<SignedDigit>> step(const std::vector<SignedDigit>& in) override {
        std::vector<SignedDigit> out(2);
        bool have = false;
        for (int i = 0; i < 2; ++i) {
            const ArchResult p = mul_[i].step(m_[i].at(j_), in[1 - i]);
            if (!p.z) continue;
            auto z = serial_add_step(add_[i], *p.z, c_[i].at(j_ - kDelayMul));
            if (z) {
                out[i] = *z;
                have = true;
            }
        }
        ++j_;
        if (!have) return std::nullopt;
        return out;
    }

private:
    std::array<ArchMulUnit, 2> mul_;
    std::array<DigitSource, 2> m_, c_;
    std::array<SerialAdderState, 2> add_{};
    long j_ = 0;
};

class NewtonUnit : public ApproxUnit {
public:
    NewtonUnit(std::deque<CpfStore>& st, std::uint64_t row, const NewtonSetup& su)
        : mul_({&st[0], &st[1], &st[2], &st[3]}, row), div_({&st[4], &st[5], &st[6], &st[7]}, row), c_(su.c) {}

    std::optional<std::vector<SignedDigit>> step(const std::vector<SignedDigit>& in) override {
        const SignedDigit half = j_ == 0 ? 1 : 0;
        const ArchResult p = mul_.step(half, in[0]);
        const ArchResult q = div_.step(c_.at(j_), in[0]);
        ++j_;
        // the product runs one digit ahead of the quotient; hold it back a step
        std::optional<SignedDigit> aligned = fifo_;
        fifo_ = p.z;
        if (!q.z) return std::nullopt;
        auto z = serial_add_step(add_, *aligned, *q.z);
        if (!z) return std::nullopt;
        return std::vector<SignedDigit>{*z};
    }

private:
    ArchMulUnit mul_;
    ArchDivUnit div_;
    DigitSource c_;
    SerialAdderState add_{};
    std::optional<SignedDigit> fifo_;
    long j_ = 0;
};

class AddersUnit : public ApproxUnit {
public:
    explicit AddersUnit(const Rational& c) : c_(c) {}
    std::optional<std::vector<SignedDigit>> step(const std::vector<SignedDigit>& in) override {
        auto z = serial_add_step(add_, c_.at(j_++), static_cast<SignedDigit>(-in[0]));
        if (!z) return std::nullopt;
        return std::vector<SignedDigit>{*z};
    }

private:
    DigitSource c_;
    SerialAdderState add_{};
    long j_ = 0;
};

}  // namespace

JacobiDatapath::JacobiDatapath(const JacobiSetup& su, StoreConfig cfg)
    : setup(su),
      stores_(make_stores({"mul0.x", "mul0.y", "mul0.w", "mul0.v", "mul1.x", "mul1.y", "mul1.w", "mul1.v"}, cfg)),
      y0_{DigitSource(su.y0[0]), DigitSource(su.y0[1])} {}

std::unique_ptr<ApproxUnit> JacobiDatapath::make_unit(long k) {
    return std::make_unique<JacobiUnit>(stores_, static_cast<std::uint64_t>(k - 1), setup);
}

std::vector<const CpfStore*> JacobiDatapath::operator_stores() const {
    std::vector<const CpfStore*> v;
    for (auto& s : stores_) v.push_back(&s);
    return v;
}

std::optional<Rational> JacobiDatapath::residual(const std::vector<Rational>& y) const {
    if (!problem) return std::nullopt;
    return jacobi_residual(*problem, setup.s, y);
}

NewtonDatapath::NewtonDatapath(const NewtonSetup& su, StoreConfig cfg)
    : setup(su),
      stores_(make_stores({"mul.x", "mul.y", "mul.w", "mul.v", "div.y", "div.w", "div.z", "div.v"}, cfg)),
      y0_(su.y0) {}

std::unique_ptr<ApproxUnit> NewtonDatapath::make_unit(long k) {
    return std::make_unique<NewtonUnit>(stores_, static_cast<std::uint64_t>(k - 1), setup);
}

std::vector<const CpfStore*> NewtonDatapath::operator_stores() const {
    std::vector<const CpfStore*> v;
    for (auto& s : stores_) v.push_back(&s);
    return v;
}

std::optional<Rational> NewtonDatapath::residual(const std::vector<Rational>& y) const {
    if (!problem) return std::nullopt;
    return newton_residual(*problem, setup.s, y[0]);
}

std::unique_ptr<ApproxUnit> AddersDatapath::make_unit(long) {
    return std::make_unique<AddersUnit>(c_);
}

// ---------------------------------------------------------------- solves

namespace {

EngineOptions engine_options(const SolveOptions& o, const Rational& eta) {
    EngineOptions e;
    e.elision = o.elision;
    e.parallel_adders = o.parallel_adders;
    e.store = o.store;
    e.max_cycles = o.max_cycles;
    e.trace = o.trace;
    if (o.target)
        e.target = o.target;
    else
        e.eta = eta;
    return e;
}

template <class F>
SolveReport timed(const SolveOptions& o, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport r = f();
    if (o.wall_clock)
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<Rational> best_values(const EngineResult& run) {
    std::vector<Rational> v;
    if (run.best_k <= 0) return v;
    for (auto& d : run.approx[run.best_k].digits) v.push_back(value_of(d));
    return v;
}

}  // namespace

SolveReport jacobi_solve(const JacobiProblem& p, const SolveOptions& o) {
    return timed(o, [&] {
        JacobiDatapath dp(jacobi_setup(p), o.store);
        dp.problem = p;
        SolveReport r;
        r.method = "jacobi";
        r.scale = dp.setup.s;
        r.run = Engine(dp, engine_options(o, p.eta)).run();
        r.converged = r.run.stop == StopReason::Converged;
        r.residual = r.run.best_residual;
        for (auto& y : best_values(r.run)) r.solution.push_back(shift(y, r.scale));
        return r;
    });
}

SolveReport newton_solve(const NewtonProblem& p, const SolveOptions& o) {
    return timed(o, [&] {
        NewtonDatapath dp(newton_setup(p), o.store);
        dp.problem = p;
        SolveReport r;
        r.method = "newton";
        r.scale = dp.setup.s;
        r.run = Engine(dp, engine_options(o, p.eta)).run();
        r.converged = r.run.stop == StopReason::Converged;
        r.residual = r.run.best_residual;
        for (auto& y : best_values(r.run)) r.solution.push_back(shift(y, r.scale));
        return r;
    });
}

// ---------------------------------------------------------------- fixed-point reference

namespace {

Integer floor_fixed(const Rational& r, int P) {
    Rational t = r * pow2(P);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Rational unfixed(const Integer& v, int P) {
    return Rational(v) * pow2(-P);
}

}  // namespace

LsdReport lsd_fixed_solve(const JacobiProblem& p, const LsdFixedConfig& cfg, long max_iters) {
    const JacobiSetup su = jacobi_setup(p);
    const int P = cfg.P;
    const Integer one = Integer(1) << P;
    std::array<Integer, 2> M{floor_fixed(su.m[0], P), floor_fixed(su.m[1], P)};
    std::array<Integer, 2> C{floor_fixed(su.c[0], P), floor_fixed(su.c[1], P)};
    std::array<Integer, 2> Y{floor_fixed(su.y0[0], P), floor_fixed(su.y0[1], P)};
    LsdReport r;
    r.scale = su.s;
    std::set<std::pair<std::string, std::string>> seen;
    auto measure = [&] {
        std::vector<Rational> y{unfixed(Y[0], P), unfixed(Y[1], P)};
        r.residual = jacobi_residual(p, su.s, y);
        r.solution = {shift(y[0], su.s), shift(y[1], su.s)};
        return r.residual < p.eta;
    };
    for (r.iterations = 0; r.iterations < max_iters;) {
        if (!seen.insert({Y[0].get_str(), Y[1].get_str()}).second) {
            r.cycled = true;
            break;
        }
        std::array<Integer, 2> N;
        for (int i = 0; i < 2; ++i) N[i] = C[i] + floor_div(M[i] * Y[1 - i], one);
        Y = N;
        ++r.iterations;
        if (measure()) {
            r.converged = true;
            return r;
        }
    }
    measure();
    return r;
}

LsdReport lsd_fixed_solve(const NewtonProblem& p, const LsdFixedConfig& cfg, long max_iters) {
    const NewtonSetup su = newton_setup(p);
    const int P = cfg.P;
    const Integer C = floor_fixed(su.c, P);
    Integer Y = floor_fixed(su.y0, P);
    LsdReport r;
    r.scale = su.s;
    std::set<std::string> seen;
    auto measure = [&] {
        const Rational y = unfixed(Y, P);
        r.residual = newton_residual(p, su.s, y);
        r.solution = {shift(y, su.s)};
        return r.residual < p.eta;
    };
    for (r.iterations = 0; r.iterations < max_iters;) {
        if (!seen.insert(Y.get_str()).second) {
            r.cycled = true;
            break;
        }
        if (Y <= 0) break;  // divide by zero: the word length cannot hold the iterate
        // y/2 + c/y, each term truncated to P bits
        Y = floor_div(Y, 2) + floor_div(C << P, Y);
        ++r.iterations;
        if (measure()) {
            r.converged = true;
            return r;
        }
    }
    measure();
    return r;
}

// ---------------------------------------------------------------- output

std::string decimal_string(const Rational& r, int digits) {
    Rational a = abs_q(r);
    Integer ip;
    mpz_fdiv_q(ip.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    Rational frac = a - ip;
    std::string s = (r < 0 ? "-" : "") + ip.get_str() + ".";
    for (int i = 0; i < digits; ++i) {
        frac *= 10;
        Integer d;
        mpz_fdiv_q(d.get_mpz_t(), frac.get_num_mpz_t(), frac.get_den_mpz_t());
        s += d.get_str();
        frac -= d;
    }
    return s;
}

namespace {

nlohmann::ordered_json rat(const Rational& r) {
    return {{"exact", r.get_str()}, {"decimal", decimal_string(r)}};
}

}  // namespace

std::string report_json(const SolveReport& r, int indent) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["scale"] = r.scale;
    j["stop"] = to_string(r.run.stop);
    j["converged"] = r.converged;
    j["best_k"] = r.run.best_k;
    j["residual"] = r.residual ? rat(*r.residual) : nlohmann::ordered_json(nullptr);
    auto sol = nlohmann::ordered_json::array();
    for (auto& x : r.solution) sol.push_back(rat(x));
    j["solution"] = sol;
    j["cycles"] = {{"total", r.run.cycles},       {"warmup", r.run.warmup},
                   {"generate", r.run.generate},  {"stall", r.run.stall},
                   {"initial_reads", r.run.initial_reads}, {"refill", r.run.refill}};
    j["memory"] = {{"peak_words", r.run.peak_words}, {"state_peak_words", r.run.state_peak_words}};
    if (!r.run.exhausted_store.empty()) j["memory"]["exhausted_store"] = r.run.exhausted_store;
    j["sweeps"] = r.run.sweeps;
    auto ap = nlohmann::ordered_json::array();
    for (std::size_t k = 1; k < r.run.approx.size(); ++k) {
        const ApproxRecord& A = r.run.approx[k];
        if (!A.started) continue;
        nlohmann::ordered_json e;
        e["k"] = k;
        e["psi"] = A.psi;
        e["generated"] = A.generated;
        auto ds = nlohmann::ordered_json::array();
        for (auto& d : A.digits) ds.push_back(to_string(d));
        e["digits"] = ds;
        ap.push_back(e);
    }
    j["approximants"] = ap;
    if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
    return j.dump(indent);
}

std::string report_json(const LsdReport& r, int indent) {
    nlohmann::ordered_json j;
    j["converged"] = r.converged;
    j["cycled"] = r.cycled;
    j["iterations"] = r.iterations;
    j["scale"] = r.scale;
    j["residual"] = rat(r.residual);
    auto sol = nlohmann::ordered_json::array();
    for (auto& x : r.solution) sol.push_back(rat(x));
    j["solution"] = sol;
    return j.dump(indent);
}

void write_digit_grid_csv(std::ostream& os, const EngineResult& r) {
    std::size_t width = 0;
    for (auto& A : r.approx)
        for (auto& d : A.digits) width = std::max(width, d.size());
    os << "k,comp,psi";
    for (std::size_t i = 0; i < width; ++i) os << ",d" << i;
    os << "\n";
    for (std::size_t k = 1; k < r.approx.size(); ++k) {
        const ApproxRecord& A = r.approx[k];
        if (!A.started) continue;
        for (std::size_t c = 0; c < A.digits.size(); ++c) {
            os << k << "," << c << "," << A.psi;
            for (std::size_t i = 0; i < width; ++i) {
                os << ",";
                if (i >= A.digits[c].size()) continue;
                const int d = A.digits[c][i];
                os << (d > 0 ? "+" : d < 0 ? "-" : "0");
                if (static_cast<long>(i) < A.psi) os << "*";
            }
            os << "\n";
        }
    }
}

}  // namespace arch
