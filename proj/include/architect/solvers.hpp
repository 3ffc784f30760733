// Benchmark datapaths (2x2 Jacobi, Newton for a*x^2 - 3) on top of the chunked
// operators, and a truncating fixed-point reference for budgeting comparisons.
#pragma once

#include "architect/analysis.hpp"
#include "architect/arch_ops.hpp"
#include "architect/engine.hpp"

#include <array>
#include <deque>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace arch {

class NotDiagonallyDominant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// scaling or initial guess puts an operand outside its online range
class InvalidProblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct JacobiProblem {
    Matrix2 A;
    std::array<Rational, 2> b;
    std::array<Rational, 2> x0{Rational(0), Rational(0)};
    Rational eta = pow2(-6);
};

// A = [[1, 1 - 2^-m], [1 - 2^-m, 1]]
JacobiProblem make_jacobi_am(int m, const Rational& b0, const Rational& b1);
// x <- 1/4 - x/6, as the 2x2 system [[1, 1/6], [1/6, 1]] x = (1/4, 1/4)
JacobiProblem make_toy_iteration();

struct NewtonProblem {
    Rational a;
    std::optional<Rational> x0;  // problem scale; default picked from the scaling
    Rational eta = pow2(-6);
};

// y = 2^-s x; y_i' = c_i + m_i y_{1-i}
struct JacobiSetup {
    long s = 0;
    std::array<Rational, 2> m, c, y0;
};
JacobiSetup jacobi_setup(const JacobiProblem& p);
Rational jacobi_residual(const JacobiProblem& p, long s, const std::vector<Rational>& y);

// y = 2^-s x with y*^2 = 3 / (a 4^s) in [1/4, 1); y' = y/2 + c/y, c = 3 / (2 a 4^s)
struct NewtonSetup {
    long s = 0;
    Rational c, y0;
};
NewtonSetup newton_setup(const NewtonProblem& p);
Rational newton_residual(const NewtonProblem& p, long s, const Rational& y);

struct SolveOptions {
    bool elision = false;
    bool parallel_adders = false;
    StoreConfig store{8, 1024};
    // stop rule: eta (from the problem) unless a (K, P) target is given
    std::optional<std::pair<long, long>> target;
    long long max_cycles = 0;
    bool trace = false;
    bool wall_clock = false;  // off by default so reports are reproducible
};

// Operator instances per approximant live in shared stores, one row each.
class JacobiDatapath : public Datapath {
public:
    JacobiDatapath(const JacobiSetup& su, StoreConfig cfg);
    int components() const override { return 2; }
    int delta() const override { return kDelayMul + kDelaySerialAdd; }
    int beta() const override { return 1; }
    DatapathKind kind() const override { return DatapathKind::HasMultiplier; }
    std::unique_ptr<ApproxUnit> make_unit(long k) override;
    SignedDigit initial_digit(int comp, long j) override { return y0_[comp].at(j); }
    std::vector<const CpfStore*> operator_stores() const override;
    std::optional<Rational> residual(const std::vector<Rational>& y) const override;
    std::optional<JacobiProblem> problem;  // enables residual()

    JacobiSetup setup;

private:
    std::deque<CpfStore> stores_;  // mul0.{x,y,w,v}, mul1.{x,y,w,v}
    std::array<DigitSource, 2> y0_;
};

class NewtonDatapath : public Datapath {
public:
    NewtonDatapath(const NewtonSetup& su, StoreConfig cfg);
    int components() const override { return 1; }
    int delta() const override { return kDelayDiv + kDelaySerialAdd; }
    int beta() const override { return 1; }
    DatapathKind kind() const override { return DatapathKind::HasDivider; }
    std::unique_ptr<ApproxUnit> make_unit(long k) override;
    SignedDigit initial_digit(int, long j) override { return y0_.at(j); }
    std::vector<const CpfStore*> operator_stores() const override;
    std::optional<Rational> residual(const std::vector<Rational>& y) const override;
    std::optional<NewtonProblem> problem;

    NewtonSetup setup;

private:
    std::deque<CpfStore> stores_;  // mul.{x,y,w,v}, div.{y,w,z,v}
    DigitSource y0_;
};

// x' = c - x on one serial adder; |c|, |x0| <= 1/2
class AddersDatapath : public Datapath {
public:
    AddersDatapath(const Rational& c, const Rational& x0) : c_(c), x0_(x0), x0v_(x0) {}
    int components() const override { return 1; }
    int delta() const override { return kDelaySerialAdd; }
    int beta() const override { return 1; }
    DatapathKind kind() const override { return DatapathKind::AddersOnly; }
    std::unique_ptr<ApproxUnit> make_unit(long k) override;
    SignedDigit initial_digit(int, long j) override { return x0_.at(j); }

private:
    Rational c_;
    DigitSource x0_;
    Rational x0v_;
};

struct SolveReport {
    std::string method;  // "jacobi" | "newton"
    long scale = 0;      // s, problem value = 2^s * stream value
    EngineResult run;
    bool converged = false;
    std::optional<Rational> residual;
    std::vector<Rational> solution;  // problem scale, best approximant's prefix
    std::optional<double> wall_ms;
};

SolveReport jacobi_solve(const JacobiProblem& p, const SolveOptions& opt);
SolveReport newton_solve(const NewtonProblem& p, const SolveOptions& opt);

struct LsdFixedConfig {
    int P = 8;  // fractional bits; every constant and operation truncates toward -inf
};

struct LsdReport {
    bool converged = false;
    bool cycled = false;  // a state repeated without converging: never will
    long iterations = 0;
    long scale = 0;
    std::vector<Rational> solution;  // problem scale
    Rational residual;
};

LsdReport lsd_fixed_solve(const JacobiProblem& p, const LsdFixedConfig& cfg, long max_iters);
LsdReport lsd_fixed_solve(const NewtonProblem& p, const LsdFixedConfig& cfg, long max_iters);

std::string report_json(const SolveReport& r, int indent = 2);
std::string report_json(const LsdReport& r, int indent = 2);
// rows = (approximant, component), columns = digit index; elided cells carry a trailing '*'
void write_digit_grid_csv(std::ostream& os, const EngineResult& r);

std::string decimal_string(const Rational& r, int digits = 20);

}  // namespace arch
