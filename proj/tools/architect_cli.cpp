// architect: command-line front end for solves, sweeps, bounds and traces.
// Exit codes: 0 converged (or target reached), 2 memory exhausted,
// 3 not converged, 4 invalid input. selftest exits 1 on a failed check.
#include "architect/analysis.hpp"
#include "architect/cpf_store.hpp"
#include "architect/engine.hpp"
#include "architect/schedule.hpp"
#include "architect/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

using namespace arch;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kExhausted = 2, kNotConverged = 3, kInvalid = 4;

struct BadInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// "2^-k", "2^k", "p/q", integers and decimals ("-0.125", "1e-3"), all exact
Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::smatch m;
    static const std::regex pow_re(R"(([+-]?)2\^\(?([+-]?\d+)\)?)");
    static const std::regex frac_re(R"(([+-]?\d+)/(\d+))");
    static const std::regex dec_re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    if (std::regex_match(s, m, pow_re)) {
        Rational r = pow2(std::stol(m[2]));
        return m[1] == "-" ? Rational(-r) : r;
    }
    if (std::regex_match(s, m, frac_re)) {
        const Integer d(m[2].str());
        if (d == 0) throw BadInput("zero denominator in '" + raw + "'");
        Rational r(Integer(m[1].str()), d);
        r.canonicalize();
        return r;
    }
    if (std::regex_match(s, m, dec_re) && (m[2].length() || m[3].length())) {
        const std::string intpart = m[2].str(), frac = m[3].str();
        Integer num(intpart.empty() && frac.empty() ? "0" : intpart + frac);
        Integer den = 1;
        for (std::size_t n = 0; n < frac.size(); ++n) den *= 10;
        long e = m[4].length() ? std::stol(m[4]) : 0;
        for (; e > 0; --e) num *= 10;
        for (; e < 0; ++e) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return m[1] == "-" ? Rational(-r) : r;
    }
    throw BadInput("cannot parse number '" + raw + "'");
}

std::vector<Rational> parse_list(const std::string& s, std::size_t want = 0) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_rational(item));
    if (want && v.size() != want) throw BadInput("expected " + std::to_string(want) + " values in '" + s + "'");
    return v;
}

DatapathKind parse_kind(const std::string& s) {
    if (s == "adders") return DatapathKind::AddersOnly;
    if (s == "mul") return DatapathKind::HasMultiplier;
    if (s == "div") return DatapathKind::HasDivider;
    throw BadInput("kind must be adders, mul or div");
}

struct Global {
    int U = 8;
    std::uint64_t D = 1u << 17;
    bool elision = false;
    bool parallel = false;
    long long max_cycles = 0;
    std::string out;
};

struct ProblemArgs {
    std::string method = "jacobi";
    int m = 3;
    std::string A, b = "1/2,1/2", x0, a = "4", eta = "2^-6";
};

void add_problem_flags(CLI::App* c, ProblemArgs& p) {
    c->add_option("method", p.method, "jacobi | newton")->check(CLI::IsMember({"jacobi", "newton"}));
    c->add_option("--m", p.m, "Jacobi: A = [[1, 1-2^-m], [1-2^-m, 1]]");
    c->add_option("--A", p.A, "Jacobi: explicit matrix a00,a01,a10,a11 (overrides --m)");
    c->add_option("--b", p.b, "Jacobi: right-hand side b0,b1");
    c->add_option("--a", p.a, "Newton: coefficient of a x^2 - 3");
    c->add_option("--x0", p.x0, "initial guess (Jacobi: two values)");
    c->add_option("--eta", p.eta, "accuracy bound, e.g. 2^-6");
}

JacobiProblem jacobi_problem(const ProblemArgs& a) {
    const auto b = parse_list(a.b, 2);
    JacobiProblem p = make_jacobi_am(a.m, b[0], b[1]);
    if (!a.A.empty()) {
        const auto v = parse_list(a.A, 4);
        p.A = {{{v[0], v[1]}, {v[2], v[3]}}};
    }
    if (!a.x0.empty()) {
        const auto x = parse_list(a.x0, 2);
        p.x0 = {x[0], x[1]};
    }
    p.eta = parse_rational(a.eta);
    return p;
}

NewtonProblem newton_problem(const ProblemArgs& a) {
    NewtonProblem p{parse_rational(a.a), {}, parse_rational(a.eta)};
    if (!a.x0.empty()) p.x0 = parse_rational(a.x0);
    return p;
}

SolveOptions solve_options(const Global& g) {
    if (g.parallel && g.U < 2) throw BadInput("parallel adders need U >= 2");
    if (g.D < 1) throw BadInput("D must be >= 1");
    SolveOptions o;
    o.elision = g.elision;
    o.parallel_adders = g.parallel;
    o.store = {g.U, g.D};
    o.max_cycles = g.max_cycles;
    return o;
}

SolveReport run_solve(const ProblemArgs& a, const SolveOptions& o) {
    return a.method == "jacobi" ? jacobi_solve(jacobi_problem(a), o) : newton_solve(newton_problem(a), o);
}

int exit_for(const EngineResult& r) {
    switch (r.stop) {
        case StopReason::Converged:
        case StopReason::TargetReached:
            return kOk;
        case StopReason::MemoryExhausted:
            return kExhausted;
        default:
            return kNotConverged;
    }
}

// stdout unless --out names a file
struct Sink {
    std::ofstream f;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        f.open(path);
        if (!f) throw BadInput("cannot write " + path);
        os = &f;
    }
    std::ostream& operator*() { return *os; }
};

// ---------------------------------------------------------------- solve
int cmd_solve(const Global& g, const ProblemArgs& a, int ref_lsd, long K, long P, const std::string& grid, bool wall) {
    SolveOptions o = solve_options(g);
    if (K > 0 || P > 0) {
        if (K <= 0 || P <= 0) throw BadInput("--K and --P go together");
        o.target = std::make_pair(K, P);
    }
    o.wall_clock = wall;
    const SolveReport r = run_solve(a, o);
    ojson j = ojson::parse(report_json(r, -1));
    if (ref_lsd > 0) {
        const LsdReport l = a.method == "jacobi" ? lsd_fixed_solve(jacobi_problem(a), {ref_lsd}, 1000000)
                                                 : lsd_fixed_solve(newton_problem(a), {ref_lsd}, 1000000);
        j = ojson{{"architect", j}, {"lsd", ojson::parse(report_json(l, -1))}};
        j["lsd"]["P"] = ref_lsd;
    }
    Sink s(g.out);
    *s << j.dump(2) << "\n";
    if (!grid.empty()) {
        Sink gs(grid);
        write_digit_grid_csv(*gs, r.run);
    }
    return exit_for(r.run);
}

// ---------------------------------------------------------------- sweep
struct SweepRow {
    std::string eta;
    SolveReport elision, plain, parallel;
};

int cmd_sweep(const Global& g, ProblemArgs a, const std::string& etas, int jobs) {
    std::vector<std::string> list;
    {
        std::stringstream ss(etas);
        for (std::string e; std::getline(ss, e, ',');) list.push_back(e);
    }
    for (auto& e : list) parse_rational(e);  // reject bad input before any work
    SolveOptions base = solve_options(g);
    base.elision = base.parallel_adders = false;
    auto point = [a, base](std::string e) mutable {
        a.eta = e;
        SweepRow row{e, {}, {}, {}};
        SolveOptions on = base, par = base;
        on.elision = true;
        par.parallel_adders = true;
        row.elision = run_solve(a, on);
        row.plain = run_solve(a, base);
        row.parallel = run_solve(a, par);
        return row;
    };
    std::vector<SweepRow> rows;
    for (std::size_t n = 0; n < list.size();) {
        std::vector<std::future<SweepRow>> batch;
        for (int t = 0; t < std::max(1, jobs) && n < list.size(); ++t, ++n)
            batch.push_back(std::async(std::launch::async, point, list[n]));
        for (auto& f : batch) rows.push_back(f.get());
    }
    Sink s(g.out);
    *s << "eta,cycles_elision,cycles_plain,cycles_parallel_only,mem_elision,mem_plain,speedup,mem_ratio,converged\n";
    bool all = true;
    for (auto& r : rows) {
        const bool conv = r.elision.converged && r.plain.converged && r.parallel.converged;
        all = all && conv;
        char ratio[64];
        std::snprintf(ratio, sizeof ratio, "%.6f,%.6f", double(r.plain.run.cycles) / double(r.elision.run.cycles),
                      double(r.plain.run.peak_words) / double(r.elision.run.peak_words));
        *s << r.eta << ',' << r.elision.run.cycles << ',' << r.plain.run.cycles << ',' << r.parallel.run.cycles
           << ',' << r.elision.run.peak_words << ',' << r.plain.run.peak_words << ',' << ratio << ','
           << (conv ? 1 : 0) << "\n";
    }
    return all ? kOk : kNotConverged;
}

// ---------------------------------------------------------------- bounds
int cmd_bounds(const Global& g, int delta, int beta, const std::string& kind, long K, long P, bool json) {
    if (delta < 1 || K < 1 || P < 1) throw BadInput("delta, K and P must be positive");
    DatapathProfile pr;
    pr.delta = delta;
    pr.beta = beta;
    pr.kind = parse_kind(kind);
    pr.U = g.U;
    pr.parallel_adders = g.parallel;
    const long kr = k_res(K, P, delta), pr_ = p_of_k(1, K, P, delta, kr);
    const Capacity c = capacity(g.U, g.D);
    const ComputeTime t = compute_time(pr, K, P);
    const std::uint64_t peak = staircase_peak_address(K, P, delta, g.U);
    ojson j{{"K_res", kr},       {"P_res", pr_}, {"P_max", c.P_max}, {"K_max", c.K_max},
            {"T", t.T},          {"T1", t.T1},   {"T2", t.T2},       {"T3", t.T3},
            {"state_peak_address", peak}, {"fits", peak < g.D}};
    Sink s(g.out);
    if (json) {
        *s << j.dump(2) << "\n";
    } else {
        for (auto& [k, v] : j.items()) *s << k << '=' << v.dump() << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- trace-schedule
int cmd_trace(const Global& g, int delta, long steps, const std::string& psi, const std::string& kind, bool check) {
    if (delta < 1 || steps < 1) throw BadInput("delta and steps must be positive");
    EngineOptions e;
    e.trace = true;
    e.store = {g.U, g.D};
    e.parallel_adders = g.parallel;
    e.max_cycles = 0;
    if (!psi.empty()) {
        e.elision = true;
        for (auto& r : parse_list(psi)) {
            if (r.get_den() != 1 || r < 0) throw BadInput("psi entries must be non-negative integers");
            e.fixed_psi.push_back(r.get_num().get_si());
        }
    }
    NullDatapath dp(delta, 1, parse_kind(kind));
    // run long enough for `steps` generate events
    e.target = std::make_pair(steps + 1, steps * delta + delta + 1);
    const EngineResult r = Engine(dp, e).run();

    Sink s(g.out);
    *s << "row,cycle,k,i,action\n";
    long row = 0;
    long n = 0;
    std::map<long, std::set<long>> done;
    auto psi_of = [&](long k) { return k < static_cast<long>(r.approx.size()) ? r.approx[k].psi : 0L; };
    std::string violation;
    for (auto& t : r.trace) {
        if (n >= steps) break;
        *s << row++ << ',' << t.t << ',' << t.k << ',' << t.i << ',' << t.action << "\n";
        if (t.action != "generate") continue;
        ++n;
        // digit i of k reads digit i + delta of k - 1, unless that one was elided
        const long need = t.i + delta;
        if (t.k > 1 && violation.empty() && need >= psi_of(t.k - 1) && !done[t.k - 1].count(need))
            violation = "(" + std::to_string(t.k) + "," + std::to_string(t.i) + ")";
        done[t.k].insert(t.i);
    }
    if (check) {
        std::cerr << (violation.empty() ? "dependency check: ok\n" : "dependency check: violated at " + violation + "\n");
        if (!violation.empty()) return kNotConverged;
    }
    return kOk;
}

// ---------------------------------------------------------------- dump-memory
int cmd_dump(const Global& g, const ProblemArgs& a, long K, long P) {
    if (K <= 0 || P <= 0) throw BadInput("dump-memory needs --K and --P");
    SolveOptions o = solve_options(g);
    EngineOptions e;
    e.elision = o.elision;
    e.parallel_adders = o.parallel_adders;
    e.store = o.store;
    e.target = std::make_pair(K, P);
    std::unique_ptr<Datapath> dp;
    if (a.method == "jacobi")
        dp = std::make_unique<JacobiDatapath>(jacobi_setup(jacobi_problem(a)), o.store);
    else
        dp = std::make_unique<NewtonDatapath>(newton_setup(newton_problem(a)), o.store);
    const EngineResult r = Engine(*dp, e).run();
    Sink s(g.out);
    bool header = true;
    for (const CpfStore* st : dp->operator_stores()) {
        st->dump_csv(*s, header);
        header = false;
    }
    return exit_for(r);
}

// ---------------------------------------------------------------- selftest
int cmd_selftest() {
    int bad = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
        bad += !ok;
    };
    check(cpf(0, 0) == 0 && cpf(1, 0) == 1 && cpf(0, 1) == 2 && cpf(2, 0) == 3, "cpf anchors");
    const Capacity c = capacity(8, 1u << 17);
    check(c.P_max == 4088 && c.K_max == 512, "capacity U=8 D=2^17");
    const long kr = k_res(100, 2048, 5);
    check(kr == 509 && p_of_k(1, 100, 2048, 5, kr) == 2545, "result shape delta=5");
    const auto z = zigzag_pattern(3, 6);
    check(z.size() == 6 && z[3] == std::pair<long, long>{1, 3} && z[5] == std::pair<long, long>{1, 5}, "zigzag head");
    SolveOptions o;
    o.target = std::make_pair(2L, 24L);
    const SolveReport toy = jacobi_solve(make_toy_iteration(), o);
    const DigitVector& x2 = toy.run.approx.at(2).digits.at(0);
    const Rational err = value_of(x2) - Rational(5, 24);
    check((err < 0 ? Rational(-err) : err) <= prefix_error_bound(x2.size()), "toy iteration x2 = 5/24");
    SolveOptions s;
    s.store = {8, 1u << 10};
    check(newton_solve({Rational(4), {}, pow2(-6)}, s).converged, "newton a=4 converges");
    const JacobiProblem j = make_jacobi_am(3, Rational(1, 2), Rational(1, 2));
    check(jacobi_solve(j, s).converged && !lsd_fixed_solve(j, {8}, 100000).converged, "jacobi m=3: engine converges, LSD-8 does not");
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online-arithmetic iterative solver engine"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Global g;
    app.add_option("--U", g.U, "chunk width in digits")->check(CLI::PositiveNumber);
    app.add_option("--D", g.D, "store depth in words");
    app.add_flag("--elision,!--no-elision", g.elision, "skip digits that cannot change");
    app.add_flag("--parallel-adders", g.parallel, "chunk-parallel adders in the operators");
    app.add_option("--max-cycles", g.max_cycles, "cycle budget, 0 = unlimited");
    app.add_option("-o,--out", g.out, "output file (default stdout)");

    ProblemArgs pa;
    int ref_lsd = 0;
    long K = 0, P = 0;
    std::string grid;
    bool wall = false;
    auto* solve = app.add_subcommand("solve", "run one Jacobi or Newton solve, JSON report");
    add_problem_flags(solve, pa);
    solve->add_option("--ref-lsd", ref_lsd, "also run the LSD-first reference with this word length");
    solve->add_option("--K", K, "stop at approximant K with P digits instead of eta");
    solve->add_option("--P", P);
    solve->add_option("--grid", grid, "write the digit grid CSV here");
    solve->add_flag("--wall-clock", wall, "include wall time (breaks byte-identical output)");

    ProblemArgs sa;
    sa.method = "newton";
    std::string etas = "2^-16,2^-32,2^-64,2^-128,2^-256";
    int jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "elision / plain / parallel-adder comparison over eta, CSV");
    add_problem_flags(sweep, sa);
    sweep->add_option("--etas", etas, "comma-separated eta values");
    sweep->add_option("-j,--jobs", jobs, "points solved concurrently");

    int delta = 5, beta = 1;
    std::string kind = "mul";
    long bK = 100, bP = 2048;
    bool json = false;
    auto* bounds = app.add_subcommand("bounds", "closed-form result shape, capacity and compute time");
    bounds->add_option("--delta", delta);
    bounds->add_option("--beta", beta);
    bounds->add_option("--kind", kind, "adders | mul | div");
    bounds->add_option("--K", bK);
    bounds->add_option("--P", bP);
    bounds->add_flag("--json", json);

    int tdelta = 3;
    long steps = 18;
    std::string psi, tkind = "adders";
    bool tcheck = false;
    auto* trace = app.add_subcommand("trace-schedule", "digit visit order as CSV");
    trace->add_option("--delta", tdelta);
    trace->add_option("--steps", steps, "number of generate events");
    trace->add_option("--psi", psi, "fixed elision pointers psi_0,psi_1,... (turns elision on)");
    trace->add_option("--kind", tkind, "adders | mul | div");
    trace->add_flag("--check", tcheck, "verify every digit's input was ready");

    ProblemArgs da;
    long dK = 0, dP = 0;
    auto* dump = app.add_subcommand("dump-memory", "operator store contents after a (K, P) run, CSV");
    add_problem_flags(dump, da);
    dump->add_option("--K", dK)->required();
    dump->add_option("--P", dP)->required();

    auto* self = app.add_subcommand("selftest", "quick built-in checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*solve) return cmd_solve(g, pa, ref_lsd, K, P, grid, wall);
        if (*sweep) return cmd_sweep(g, sa, etas, jobs);
        if (*bounds) return cmd_bounds(g, delta, beta, kind, bK, bP, json);
        if (*trace) return cmd_trace(g, tdelta, steps, psi, tkind, tcheck);
        if (*dump) return cmd_dump(g, da, dK, dP);
        if (*self) return cmd_selftest();
    } catch (const MemoryExhausted& e) {
        std::cerr << "memory exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
