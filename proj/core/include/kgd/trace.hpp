#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kgd/problem.hpp"

namespace kgd {

enum class Termination {
    Converged,        // relative gradient norm reached the tolerance
    BudgetExhausted,  // hit max_iter before the stopping rule
    CycleSuspected,   // iterates revisit themselves with period 4
    NumericalFailure, // non-finite values or a stalled inner loop
};

std::string to_string(Termination t);

/// Full snapshot of one accepted iterate. `alpha` is the step-size assigned
/// on arrival at x (the initial step, or the Regime-1 rule output), before
/// any Regime-0 shrinking that a later acceptance test may apply.
struct IterationState {
    int k = 0;
    Vector x;
    double f = 0.0;
    Vector g;
    double g_norm = 0.0;
    double alpha = 0.0;
};

/// Scalar per-iterate record; kept for every run regardless of whether the
/// full states (with vectors) are stored.
struct StepRecord {
    int k = 0;
    double f = 0.0;
    double g_norm = 0.0;
    double alpha_assigned = 0.0;  // step-size on arrival (rule output or alpha0)
    double alpha_applied = std::numeric_limits<double>::quiet_NaN();  // after inner shrinks; NaN on the final state
    int shrinks = 0;              // Regime-0 shrinks performed at this iterate
    bool reset = false;           // alpha_assigned came from the 1/||g|| reset policy
};

struct Trace {
    std::vector<StepRecord> steps;         // one per accepted iterate, index == k
    std::vector<IterationState> states;    // populated when SolverConfig::record_states

    long f_evals = 0;
    long grad_evals = 0;
    long inner_shrinks = 0;      // total Regime-0 shrinks (each costs one f- and one g-eval)
    long nonfinite_backoffs = 0; // step halvings after a non-finite trial (one f-eval each)
    double seconds = 0.0;
    int iterations = 0;          // outer iteration count K

    Termination termination = Termination::NumericalFailure;
    std::string message;         // detail for failures

    Vector final_x;
    double f_final = std::numeric_limits<double>::quiet_NaN();
    double g_norm_final = std::numeric_limits<double>::quiet_NaN();
    double g_norm0 = std::numeric_limits<double>::quiet_NaN();

    std::optional<double> stabilizer_delta;  // set by bbstab once computed

    bool converged() const { return termination == Termination::Converged; }
    double relative_g_norm() const {
        return g_norm0 > 0.0 ? g_norm_final / g_norm0 : g_norm_final;
    }
};

}  // namespace kgd
