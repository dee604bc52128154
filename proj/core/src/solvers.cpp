#include "kgd/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

namespace kgd {

namespace {

constexpr double kCycleRelTol = 1e-8;  // period-4 revisit threshold
constexpr int kCycleConfirmations = 8;

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Step-7 candidate sanitation: an unusable rule output is replaced by the
/// reset step 1/||g_new||; with a vanishing gradient the value is inert (the
/// next stopping test fires first), so the previous step is kept.
double sanitize_step(const StepResult& r, double g_norm_new, double alpha_prev, bool* reset) {
    if (r.usable()) {
        *reset = false;
        return r.alpha;
    }
    *reset = true;
    return g_norm_new > 0.0 ? 1.0 / g_norm_new : alpha_prev;
}

void record_state(Trace& trace, const SolverConfig& cfg, int k, const Vector& x, double f,
                  const Vector& g, double g_norm, double alpha) {
    trace.steps.push_back(StepRecord{k, f, g_norm, alpha,
                                     std::numeric_limits<double>::quiet_NaN(), 0, false});
    if (cfg.record_states) {
        trace.states.push_back(IterationState{k, x, f, g, g_norm, alpha});
    }
}

void finish(Trace& trace, Termination t, const Vector& x, double f, double g_norm,
            const Evaluator& ev, Clock::time_point t0, std::string message = {}) {
    trace.termination = t;
    trace.message = std::move(message);
    trace.final_x = x;
    trace.f_final = f;
    trace.g_norm_final = g_norm;
    trace.f_evals = ev.counts().values;
    trace.grad_evals = ev.counts().gradients;
    trace.seconds = elapsed_seconds(t0);
}

/// Shared driver for the unsafeguarded recursion; `stab`, when non-null,
/// applies the displacement cap from the fourth step-size on.
Trace run_pure(const Problem& problem, const Vector& x0, std::optional<double> alpha0,
               const StepRule& rule, const SolverConfig& config, StabilizerConfig* stab) {
    config.validate();
    if (alpha0 && (!(*alpha0 > 0.0) || !std::isfinite(*alpha0))) {
        throw InvalidConfig("alpha0 must be positive and finite");
    }

    Trace trace;
    Evaluator ev(problem);
    const auto t0 = Clock::now();

    Vector x = x0;
    double f;
    Vector g;
    try {
        std::tie(f, g) = ev.value_and_gradient(x);
    } catch (const NonFiniteError& e) {
        finish(trace, Termination::NumericalFailure, x0,
               std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN(), ev, t0, e.what());
        return trace;
    }
    double g_norm = g.norm();
    trace.g_norm0 = g_norm;
    const double threshold = config.tol * g_norm;

    double alpha = alpha0.value_or(g_norm > 0.0 ? 1.0 / g_norm : 1.0);
    int k = 0;
    record_state(trace, config, k, x, f, g, g_norm, alpha);

    std::vector<double> warmup_snorms;  // ||s_1||..||s_3|| for the stabilizer
    std::deque<Vector> recent;          // up to four previous iterates
    int cycle_hits = 0;

    while (true) {
        if (g_norm <= threshold) {
            finish(trace, Termination::Converged, x, f, g_norm, ev, t0);
            break;
        }
        if (k >= config.max_iter) {
            finish(trace, Termination::BudgetExhausted, x, f, g_norm, ev, t0);
            break;
        }

        trace.steps.back().alpha_applied = alpha;
        Vector x_new = x - alpha * g;
        double f_new;
        Vector g_new;
        try {
            std::tie(f_new, g_new) = ev.value_and_gradient(x_new);
        } catch (const NonFiniteError& e) {
            finish(trace, Termination::NumericalFailure, x, f, g_norm, ev, t0, e.what());
            break;
        }
        const double g_norm_new = g_new.norm();

        StepPair pair{f, f_new, g, g_new, alpha};
        bool reset = false;
        double alpha_next = sanitize_step(apply_rule(rule, pair), g_norm_new, alpha, &reset);
        if (stab != nullptr) {
            if (!stab->ready()) {
                warmup_snorms.push_back((x_new - x).norm());
                if (warmup_snorms.size() == 3) {
                    stab->delta = stab->c * *std::min_element(warmup_snorms.begin(),
                                                              warmup_snorms.end());
                }
            } else {
                alpha_next = stab_cap(alpha_next, g_norm, *stab);  // cap uses ||g_k||
            }
        }

        recent.push_back(std::move(x));
        if (recent.size() > 4) recent.pop_front();

        x = std::move(x_new);
        f = f_new;
        g = std::move(g_new);
        g_norm = g_norm_new;
        alpha = alpha_next;
        ++k;
        record_state(trace, config, k, x, f, g, g_norm, alpha);
        trace.steps.back().reset = reset;

        if (config.detect_cycles && recent.size() == 4 && g_norm > threshold) {
            const Vector& x_back = recent.front();  // x_{k-4}
            if ((x - x_back).norm() <= kCycleRelTol * (1.0 + x_back.norm())) {
                if (++cycle_hits >= kCycleConfirmations) {
                    finish(trace, Termination::CycleSuspected, x, f, g_norm, ev, t0);
                    break;
                }
            } else {
                cycle_hits = 0;
            }
        }
    }

    trace.iterations = k;
    return trace;
}

}  // namespace

FHistory::FHistory(int memory) {
    if (memory < 1) throw InvalidConfig("nonmonotone memory must be >= 1");
    cap_ = static_cast<std::size_t>(memory) + 1;
    buf_.resize(cap_);
}

void FHistory::push(double f) {
    buf_[head_] = f;
    head_ = (head_ + 1) % cap_;
    if (count_ < cap_) ++count_;
}

double FHistory::reference() const {
    if (count_ == 0) throw std::logic_error("FHistory::reference on empty history");
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count_; ++i) {
        m = std::max(m, buf_[(head_ + cap_ - 1 - i) % cap_]);
    }
    return m;
}

double nonmonotone_ref(const FHistory& history) { return history.reference(); }

void SolverConfig::validate() const {
    if (!(eta > 0.0) || !(eta < 1.0 / 3.0)) throw InvalidConfig("eta must lie in (0, 1/3)");
    if (memory < 1) throw InvalidConfig("memory must be >= 1");
    if (!(tol >= 0.0)) throw InvalidConfig("tol must be >= 0");
    if (max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
    if (max_inner_shrinks < 1) throw InvalidConfig("max_inner_shrinks must be >= 1");
    if (alpha0 && !(*alpha0 > 0.0 && std::isfinite(*alpha0))) {
        throw InvalidConfig("alpha0 must be positive and finite");
    }
    if (rule.kind == StepKind::ConstantStep && !(rule.constant > 0.0)) {
        throw InvalidConfig("constant step rule requires a positive step");
    }
    if (rule.stabilizer && !(rule.stabilizer->c > 0.0)) {
        throw InvalidConfig("stabilizer scale c must be positive");
    }
}

Trace pure_iterate(const Problem& problem, const Vector& x0, double alpha0,
                   const StepRule& rule, const SolverConfig& config) {
    return run_pure(problem, x0, alpha0, rule, config, nullptr);
}

Trace pure_iterate(const Problem& problem, const Vector& x0, const StepRule& rule,
                   const SolverConfig& config) {
    return run_pure(problem, x0, config.alpha0, rule, config, nullptr);
}

Trace bbstab(const Problem& problem, const Vector& x0, const SolverConfig& config) {
    StabilizerConfig stab = config.rule.stabilizer.value_or(StabilizerConfig{});
    if (!(stab.c > 0.0)) throw InvalidConfig("stabilizer scale c must be positive");
    stab.delta.reset();  // Delta always comes from this run's first three steps

    Trace trace = run_pure(problem, x0, config.alpha0, StepRule::bb1(), config, &stab);
    trace.stabilizer_delta = stab.delta;
    return trace;
}

Trace kgdadp(const Problem& problem, const Vector& x0, const SolverConfig& config) {
    config.validate();

    Trace trace;
    Evaluator ev(problem);
    const auto t0 = Clock::now();

    Vector x = x0;
    double f;
    Vector g;
    try {
        std::tie(f, g) = ev.value_and_gradient(x);
    } catch (const NonFiniteError& e) {
        finish(trace, Termination::NumericalFailure, x0,
               std::numeric_limits<double>::quiet_NaN(),
               std::numeric_limits<double>::quiet_NaN(), ev, t0, e.what());
        return trace;
    }
    double g_norm = g.norm();
    trace.g_norm0 = g_norm;
    const double threshold = config.tol * g_norm;

    double alpha = config.alpha0.value_or(g_norm > 0.0 ? 1.0 / g_norm : 1.0);
    FHistory history(config.memory);
    history.push(f);

    int k = 0;
    record_state(trace, config, k, x, f, g, g_norm, alpha);

    while (true) {
        if (g_norm <= threshold) {
            finish(trace, Termination::Converged, x, f, g_norm, ev, t0);
            break;
        }
        if (k >= config.max_iter) {
            finish(trace, Termination::BudgetExhausted, x, f, g_norm, ev, t0);
            break;
        }

        const double ref = history.reference();
        const double gn2 = g_norm * g_norm;
        int shrinks = 0;
        int backoffs = 0;
        Vector x_trial;
        double f_trial = 0.0;
        bool accepted = false;
        bool failed = false;

        while (!accepted && !failed) {
            x_trial = x - alpha * g;
            bool trial_finite = true;
            try {
                f_trial = ev.value(x_trial);
            } catch (const NonFiniteError&) {
                trial_finite = false;
            }
            if (trial_finite && f_trial <= ref - config.eta * alpha * gn2) {
                accepted = true;
                break;
            }
            if (shrinks + backoffs >= config.max_inner_shrinks) {
                finish(trace, Termination::NumericalFailure, x, f, g_norm, ev, t0,
                       "inner loop stalled: max_inner_shrinks exceeded");
                failed = true;
                break;
            }
            if (!trial_finite) {
                alpha *= 0.5;  // non-finite trial: halve once and retry
                ++backoffs;
                continue;
            }
            Vector g_trial;
            try {
                g_trial = ev.gradient(x_trial);
            } catch (const NonFiniteError&) {
                alpha *= 0.5;
                ++backoffs;
                continue;
            }
            StepResult res = kgd0(StepPair{f, f_trial, g, g_trial, alpha});
            if (!res.usable()) {
                finish(trace, Termination::NumericalFailure, x, f, g_norm, ev, t0,
                       "Regime-0 shrink failed: " + to_string(res.status));
                failed = true;
                break;
            }
            alpha = res.alpha;
            ++shrinks;
        }
        if (failed) break;

        trace.inner_shrinks += shrinks;
        trace.nonfinite_backoffs += backoffs;
        trace.steps.back().alpha_applied = alpha;
        trace.steps.back().shrinks = shrinks;

        Vector g_new;
        try {
            g_new = ev.gradient(x_trial);
        } catch (const NonFiniteError& e) {
            finish(trace, Termination::NumericalFailure, x, f, g_norm, ev, t0, e.what());
            break;
        }
        const double g_norm_new = g_new.norm();

        StepPair pair{f, f_trial, g, g_new, alpha};
        bool reset = false;
        const double alpha_next =
            sanitize_step(apply_rule(config.rule, pair), g_norm_new, alpha, &reset);

        x = std::move(x_trial);
        f = f_trial;
        g = std::move(g_new);
        g_norm = g_norm_new;
        alpha = alpha_next;
        history.push(f);
        ++k;
        record_state(trace, config, k, x, f, g, g_norm, alpha);
        trace.steps.back().reset = reset;
    }

    trace.iterations = k;
    return trace;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "Converged";
        case Termination::BudgetExhausted: return "BudgetExhausted";
        case Termination::CycleSuspected: return "CycleSuspected";
        case Termination::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

}  // namespace kgd
