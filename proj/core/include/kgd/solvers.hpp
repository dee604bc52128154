#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kgd/problem.hpp"
#include "kgd/stepsize.hpp"
#include "kgd/trace.hpp"

namespace kgd {

/// Sliding window over the last min(k,M)+1 accepted objective values; the
/// nonmonotone acceptance test compares trial values against its maximum.
class FHistory {
public:
    explicit FHistory(int memory);

    void push(double f);
    double reference() const;
    std::size_t size() const { return count_; }

private:
    std::vector<double> buf_;
    std::size_t cap_;
    std::size_t head_ = 0;   // next write slot
    std::size_t count_ = 0;
};

/// Maximum of the stored window.
double nonmonotone_ref(const FHistory& history);

struct SolverConfig {
    double eta = 1e-4;             // sufficient-decrease parameter, in (0, 1/3)
    int memory = 20;               // nonmonotone window M >= 1
    double tol = 1e-6;             // relative stopping tolerance epsilon
    long max_iter = 100000;        // outer iteration budget k_max
    int max_inner_shrinks = 100;   // per-iterate cap on Regime-0 shrinks + backoffs
    std::optional<double> alpha0;  // initial step; default 1/||g0||
    StepRule rule = StepRule::kgd_long();
    bool record_states = true;     // keep full IterationStates (with vectors)
    bool detect_cycles = true;     // pure iteration only: period-4 revisit detector

    void validate() const;  // throws InvalidConfig
};

/// The unsafeguarded two-line recursion x_{k+1} = x_k - alpha_k g_k,
/// alpha_{k+1} = rule(x_{k+1}; x_k, alpha_k). No acceptance test; terminates
/// on ||g_k|| <= tol*||g0||, budget exhaustion, a suspected period-4 cycle,
/// or non-finite values.
Trace pure_iterate(const Problem& problem, const Vector& x0, double alpha0,
                   const StepRule& rule, const SolverConfig& config);

/// As above with alpha0 taken from config.alpha0, defaulting to 1/||g0||.
Trace pure_iterate(const Problem& problem, const Vector& x0, const StepRule& rule,
                   const SolverConfig& config);

/// Adaptive KGD driver. Each outer iterate shrinks its step with the
/// Regime-0 rule until the trial satisfies
///   f(x_k - alpha*g_k) <= max_{0<=j<=min(k,M)} f(x_{k-j}) - eta*alpha*||g_k||^2,
/// then advances and assigns the next step from config.rule.
Trace kgdadp(const Problem& problem, const Vector& x0, const SolverConfig& config);

/// Stabilized BB1: plain BB1 for the first three steps (collecting the
/// displacements s1, s2, s3), then BB1 capped by Delta/||g_k|| with
/// Delta = c * min(||s1||, ||s2||, ||s3||).
Trace bbstab(const Problem& problem, const Vector& x0, const SolverConfig& config);

}  // namespace kgd
