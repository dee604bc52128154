// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgd/bench/emit.hpp"
#include "kgd/bench/profile.hpp"
#include "kgd/bench/run.hpp"
#include "kgd/problems/cycle.hpp"
#include "kgd/problems/libsvm.hpp"
#include "kgd/problems/logistic.hpp"
#include "kgd/problems/quadratic.hpp"
#include "kgd/problems/suite.hpp"
#include "kgd/solvers.hpp"
#include "kgd/stepsize.hpp"
#include "kgd/text.hpp"

using namespace kgd;

namespace {

struct Checker {
    bool ok = true;
    std::string first_failure;
    long checks = 0;

    void require(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

Vector seeded_normal(int n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = scale * normal(rng);
    return v;
}

StepPair pair_from_step(const Problem& p, const Vector& x, double alpha) {
    Vector g = p.gradient(x);
    Vector x_new = x - alpha * g;
    return StepPair{p.value(x), p.value(x_new), std::move(g), p.gradient(x_new), alpha};
}

// the twenty seeded test quadratics shared by criteria 1 and 2
struct QuadCase {
    QuadraticPtr q;
    Vector x0;
    double kappa;
};

std::vector<QuadCase> twenty_quadratics() {
    const int dims[] = {2, 10, 50};
    const double kappas[] = {10.0, 100.0, 1000.0};
    std::vector<QuadCase> cases;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = dims[s % 3];
        const double kappa = kappas[(s / 3) % 3];
        auto q = make_quadratic(log_spaced_spectrum(n, kappa), Vector::Zero(n), 1000 + s);
        cases.push_back(QuadCase{q, seeded_normal(n, 2000 + s), kappa});
    }
    return cases;
}

double iterate_gap(const IterationState& a, const IterationState& b) {
    return (a.x - b.x).norm() / std::max(1.0, b.x.norm());
}

// ---------------------------------------------------------------------------

void criterion_equivalence(Checker& c) {
    for (const auto& [q, x0, kappa] : twenty_quadratics()) {
        SolverConfig cfg;
        cfg.tol = 1e-12;
        cfg.max_iter = 50;
        cfg.detect_cycles = false;
        const double alpha0 = 1.0 / q->gradient(x0).norm();

        Trace kgd_long = pure_iterate(*q, x0, alpha0, StepRule::kgd_long(), cfg);
        Trace bb_long = pure_iterate(*q, x0, alpha0, StepRule::bb1(), cfg);
        c.require(std::abs(static_cast<long>(kgd_long.states.size()) -
                           static_cast<long>(bb_long.states.size())) <= 1,
                  "long: trace lengths diverged");
        const std::size_t nl = std::min(kgd_long.states.size(), bb_long.states.size());
        for (std::size_t k = 0; k < nl; ++k) {
            c.require(iterate_gap(kgd_long.states[k], bb_long.states[k]) <= 1e-8,
                      "long iterates disagree at k=" + std::to_string(k));
        }

        Trace kgd_short = pure_iterate(*q, x0, alpha0, StepRule::kgd_short(), cfg);
        Trace bb_short = pure_iterate(*q, x0, alpha0, StepRule::bb2(), cfg);
        c.require(std::abs(static_cast<long>(kgd_short.states.size()) -
                           static_cast<long>(bb_short.states.size())) <= 1,
                  "short: trace lengths diverged");
        const std::size_t ns = std::min(kgd_short.states.size(), bb_short.states.size());
        for (std::size_t k = 0; k < ns; ++k) {
            c.require(iterate_gap(kgd_short.states[k], bb_short.states[k]) <= 1e-8,
                      "short iterates disagree at k=" + std::to_string(k));
        }
    }
}

void criterion_rate_bound(Checker& c) {
    const StepRule rules[] = {StepRule::kgd_long(), StepRule::kgd_short(), StepRule::bb1(),
                              StepRule::bb2()};
    for (const auto& [q, x0, kappa] : twenty_quadratics()) {
        for (const auto& rule : rules) {
            SolverConfig cfg;
            cfg.rule = rule;
            cfg.record_states = false;
            Trace t = kgdadp(*q, x0, cfg);
            c.require(t.termination == Termination::Converged,
                      "kappa=" + format_double(kappa) + " " + to_string(rule.kind) +
                          " did not converge");
            if (t.termination != Termination::Converged || t.iterations < 1) continue;
            const double measured =
                std::pow(t.g_norm_final / t.g_norm0, 1.0 / static_cast<double>(t.iterations));
            c.require(measured <= 1.0 - 1.0 / kappa + 0.02,
                      "rate " + format_double(measured) + " above bound at kappa=" +
                          format_double(kappa) + " rule=" + to_string(rule.kind));
        }
    }
}

void criterion_duality(Checker& c) {
    const int dims[] = {5, 10, 20, 8, 30};
    const double kappas[] = {50.0, 100.0, 200.0, 400.0, 1000.0};
    for (int i = 0; i < 5; ++i) {
        const int n = dims[i];
        auto q = make_quadratic(log_spaced_spectrum(n, kappas[i]),
                                seeded_normal(n, 300 + i, 0.5), 400 + i);
        auto transform = half_power_transform(*q);
        Vector x0 = seeded_normal(n, 500 + i);

        SolverConfig cfg;
        cfg.tol = 0.0;
        cfg.max_iter = 30;
        cfg.detect_cycles = false;
        const double alpha0 = 1.0 / q->gradient(x0).norm();

        Trace short_run = pure_iterate(*q, x0, alpha0, StepRule::kgd_short(), cfg);
        Trace long_run =
            pure_iterate(*transform.phi, transform.map(x0), alpha0, StepRule::kgd_long(), cfg);
        c.require(short_run.states.size() == long_run.states.size(), "trace lengths differ");
        const std::size_t m = std::min(short_run.states.size(), long_run.states.size());
        for (std::size_t k = 0; k < m; ++k) {
            const double al = long_run.states[k].alpha;
            c.require(std::abs(short_run.states[k].alpha - al) <= 1e-8 * std::max(1.0, al),
                      "step sequences disagree at k=" + std::to_string(k));
            const Vector mapped = transform.map(short_run.states[k].x);
            c.require((mapped - long_run.states[k].x).norm() <=
                          1e-8 * std::max(1.0, long_run.states[k].x.norm()),
                      "mapped iterates disagree at k=" + std::to_string(k));
        }
    }
}

void criterion_shrink_factor(Checker& c) {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double eta : {1e-4, 0.1, 0.3}) {
        const double factor = 1.0 / std::sqrt(3.0 * (1.0 - 2.0 * eta));
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = 1 + static_cast<int>(unif(rng) * 8);
            Vector gp(n), gn(n);
            for (int i = 0; i < n; ++i) {
                gp[i] = normal(rng);
                gn[i] = normal(rng);
            }
            if (gp.norm() < 1e-8) continue;
            const double alpha = std::pow(10.0, -3.0 + 6.0 * unif(rng));
            const double f_prev = 10.0 * normal(rng);
            // violate acceptance: f_new >= f_prev - eta*alpha*||g||^2
            const double f_new = f_prev - eta * alpha * gp.squaredNorm() + 10.0 * unif(rng);
            auto r = kgd0(StepPair{f_prev, f_new, gp, gn, alpha});
            c.require(r.ok(), "shrink rule failed: " + to_string(r.status));
            if (r.ok()) {
                c.require(r.alpha <= alpha * factor * (1.0 + 1e-12),
                          "shrink bound violated at eta=" + format_double(eta));
            }
        }
    }
}

void criterion_lower_bound(Checker& c) {
    std::mt19937_64 rng(888);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // the stated bound 2/sqrt(3*lambda_max) holds on quadratics whose
    // largest curvature does not exceed one; the sharp quadratic bound
    // 2/(sqrt(3)*lambda_max) holds for any spectrum
    struct Setup {
        Vector spectrum;
        bool stated_form;  // also check 2/sqrt(3*lambda_max)
    };
    std::vector<Setup> setups;
    setups.push_back({log_spaced_spectrum(6, 100.0) / 100.0, true});   // lambda_max = 1
    setups.push_back({log_spaced_spectrum(10, 50.0) / 100.0, true});   // lambda_max = 0.5
    setups.push_back({log_spaced_spectrum(4, 20.0) / 40.0, true});     // lambda_max = 0.5
    setups.push_back({log_spaced_spectrum(8, 100.0), false});          // lambda_max = 100
    setups.push_back({log_spaced_spectrum(5, 1000.0), false});         // lambda_max = 1000

    for (std::size_t si = 0; si < setups.size(); ++si) {
        auto q = make_quadratic(setups[si].spectrum, Vector::Zero(setups[si].spectrum.size()),
                                900 + si);
        const double lmax = q->lambda_max();
        const double stated = 2.0 / std::sqrt(3.0 * lmax);
        const double sharp = 2.0 / (std::sqrt(3.0) * lmax);
        for (int trial = 0; trial < 1000; ++trial) {
            Vector x(q->dimension());
            for (int i = 0; i < q->dimension(); ++i) x[i] = 3.0 * normal(rng);
            const double dtau = std::pow(10.0, -3.0 + 5.0 * unif(rng));
            auto r = kgd0(pair_from_step(*q, x, dtau));
            c.require(r.ok(), "regime-0 rule failed on quadratic sample");
            if (!r.ok()) continue;
            c.require(r.alpha >= sharp * (1.0 - 1e-12), "sharp lower bound violated");
            if (setups[si].stated_form) {
                c.require(r.alpha >= stated * (1.0 - 1e-12), "stated lower bound violated");
            }
        }
    }
}

void criterion_step_bounds(Checker& c) {
    const StepRule rules[] = {StepRule::kgd_long(), StepRule::kgd_short(), StepRule::bb1(),
                              StepRule::bb2()};
    const double kappas[] = {10.0, 100.0, 1000.0};
    for (int i = 0; i < 3; ++i) {
        const int n = 10 + 5 * i;
        auto q = make_quadratic(log_spaced_spectrum(n, kappas[i]), Vector::Zero(n), 600 + i);
        Vector x0 = seeded_normal(n, 700 + i);
        const double lo = (1.0 / q->lambda_max()) * (1.0 - 1e-12);
        const double hi = (1.0 / q->lambda_min()) * (1.0 + 1e-12);
        for (const auto& rule : rules) {
            SolverConfig cfg;
            cfg.rule = rule;
            Trace pure = pure_iterate(*q, x0, rule, cfg);
            Trace adaptive = kgdadp(*q, x0, cfg);
            for (const Trace* t : {&pure, &adaptive}) {
                for (std::size_t k = 1; k < t->steps.size(); ++k) {
                    const auto& s = t->steps[k];
                    c.require(!s.reset, "reset fired on a quadratic");
                    c.require(s.alpha_assigned >= lo && s.alpha_assigned <= hi,
                              "step " + format_double(s.alpha_assigned) +
                                  " outside [1/lmax, 1/lmin] at k=" + std::to_string(k));
                }
            }
        }
    }
}

void criterion_cycle(Checker& c) {
    // the packaged demo must succeed end to end
    const int status = std::system(KGD_CLI_PATH " cycle-demo > acceptance_cycle_demo.log 2>&1");
    c.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "cycle-demo exit code != 0");
    std::remove("acceptance_cycle_demo.log");

    auto p = make_cycle_problem(1.0);
    Vector x0 = p->cycle_start();
    const double alpha0 = p->cycle_alpha0();

    // alpha1 = 1/2 under all four strategies
    Vector x1(1);
    x1 << -p->a();
    StepPair first{p->value(x0), p->value(x1), p->gradient(x0), p->gradient(x1), alpha0};
    c.require(std::abs(kgd1_long(first).alpha - 0.5) <= 1e-12, "alpha1 (long) != 1/2");
    c.require(std::abs(kgd1_short(first).alpha - 0.5) <= 1e-12, "alpha1 (short) != 1/2");
    c.require(std::abs(bb1(first.displacement(), first.gradient_change()).alpha - 0.5) <= 1e-12,
              "alpha1 (bb1) != 1/2");
    c.require(std::abs(bb2(first.displacement(), first.gradient_change()).alpha - 0.5) <= 1e-12,
              "alpha1 (bb2) != 1/2");

    // fifty periods with relative drift at most 1e-8
    SolverConfig cfg;
    cfg.detect_cycles = false;
    cfg.max_iter = 4 * 51;
    Trace t = pure_iterate(*p, x0, alpha0, StepRule::kgd_long(), cfg);
    c.require(t.states.size() >= 4 * 51, "cycling run ended early");
    for (int period = 1; period <= 50; ++period) {
        for (int j = 0; j < 4 && 4 * period + j < static_cast<int>(t.states.size()); ++j) {
            const double ref = t.states[j].x[0];
            const double cur = t.states[4 * period + j].x[0];
            c.require(std::abs(cur - ref) <= 1e-8 * (1.0 + std::abs(ref)),
                      "cycle drift at period " + std::to_string(period));
        }
    }

    // the adaptive run converges to the stationary point
    SolverConfig adp;
    adp.rule = StepRule::kgd_long();
    adp.alpha0 = alpha0;
    Trace a = kgdadp(*p, x0, adp);
    c.require(a.termination == Termination::Converged, "adaptive run did not converge");
    c.require(std::abs(a.final_x[0]) <= 1e-4, "adaptive run far from the stationary point");
}

std::vector<Trace> smoke_traces;          // filled by criterion 8, replayed by 9
std::vector<std::string> smoke_trace_ids;

void criterion_global_convergence(Checker& c) {
    smoke_traces.clear();
    smoke_trace_ids.clear();
    const char* ids[] = {"kgdadp-long", "kgdadp-short", "kgdadp-bb1", "kgdadp-bb2"};
    auto problems = smoke_suite(42);
    for (const char* id : ids) {
        for (const auto& inst : problems) {
            auto spec = bench::make_solver(id, SolverConfig{});
            spec.config.record_states = false;
            Trace t = bench::run_solver(spec, inst);
            c.require(t.termination == Termination::Converged,
                      std::string(id) + " failed on " + inst.name + " (" +
                          to_string(t.termination) + ")");
            c.require(t.g_norm_final <= 1e-6 * t.g_norm0 ||
                          t.termination != Termination::Converged,
                      "stopping rule not satisfied at the reported convergence");
            smoke_traces.push_back(std::move(t));
            smoke_trace_ids.push_back(std::string(id) + "/" + inst.name);
        }
    }
}

void criterion_acceptance_rule(Checker& c) {
    c.require(!smoke_traces.empty(), "no traces recorded by the convergence criterion");
    const SolverConfig cfg;  // eta and M as used in criterion 8
    for (std::size_t ti = 0; ti < smoke_traces.size(); ++ti) {
        const Trace& t = smoke_traces[ti];
        for (int k = 0; k + 1 <= t.iterations; ++k) {
            const auto& s = t.steps[k];
            double ref = -std::numeric_limits<double>::infinity();
            for (int j = 0; j <= std::min(k, cfg.memory); ++j) {
                ref = std::max(ref, t.steps[k - j].f);
            }
            const double bound = ref - cfg.eta * s.alpha_applied * (s.g_norm * s.g_norm);
            c.require(t.steps[k + 1].f <= bound,
                      smoke_trace_ids[ti] + ": accepted step violates the decrease rule at k=" +
                          std::to_string(k));
        }
    }
}

void criterion_profile(Checker& c) {
    auto rec = [](const char* s, const char* p, long iters) {
        bench::BenchmarkRecord r;
        r.solver = s;
        r.problem = p;
        r.outcome = bench::Outcome::Success;
        r.iterations = iters;
        r.grad_evals = iters;
        r.seconds = 1.0;
        r.rel_gnorm = 1e-7;
        return r;
    };
    std::vector<bench::BenchmarkRecord> records{rec("A", "p1", 10), rec("A", "p2", 20),
                                                rec("A", "p3", 40), rec("B", "p1", 20),
                                                rec("B", "p2", 20), rec("B", "p3", 10)};
    auto profile = bench::performance_profile(records, bench::Metric::Iterations);
    c.require(profile.curves.size() == 2, "expected two curves");
    const auto& a = profile.curves[0];
    const auto& b = profile.curves[1];
    c.require(a.solver == "A" && b.solver == "B", "curve order");
    c.require(a.r_at(0.0) == 2.0 / 3.0, "r_A(0) != 2/3");
    c.require(a.r_at(1.0) == 2.0 / 3.0, "r_A(1) != 2/3");
    c.require(a.r_at(2.0) == 1.0, "r_A(2) != 1");
    c.require(b.r_at(0.0) == 2.0 / 3.0, "r_B(0) != 2/3");
    c.require(b.r_at(1.0) == 1.0, "r_B(1) != 1");
}

void criterion_globalization_contrast(Checker& c) {
    auto problems = smoke_suite(42);
    SolverConfig base;
    base.record_states = false;
    auto records = bench::run_matrix(
        {bench::make_solver("kgdadp-bb1", base), bench::make_solver("pure-bb1", base),
         bench::make_solver("bb1stab", base)},
        problems, 1);

    long adaptive_ok = 0, pure_ok = 0;
    bool stab_cycle_ok = false, adaptive_cycle_ok = false;
    std::string pure_cycle_outcome = "?";
    for (const auto& r : records) {
        if (r.solver == "kgdadp-bb1" && r.outcome == bench::Outcome::Success) ++adaptive_ok;
        if (r.solver == "pure-bb1" && r.outcome == bench::Outcome::Success) ++pure_ok;
        if (r.problem == "cycle") {
            if (r.solver == "bb1stab") stab_cycle_ok = r.outcome == bench::Outcome::Success;
            if (r.solver == "kgdadp-bb1") adaptive_cycle_ok = r.outcome == bench::Outcome::Success;
            if (r.solver == "pure-bb1") pure_cycle_outcome = to_string(r.outcome);
        }
    }
    c.require(adaptive_ok >= pure_ok, "adaptive BB1 solved fewer problems than pure BB1");
    c.require(stab_cycle_ok, "bb1stab failed on the cycle problem");
    c.require(adaptive_cycle_ok, "kgdadp-bb1 failed on the cycle problem");
    // the long-step cycle tuning does not make BB1 itself cycle, so pure
    // BB1's outcome there is reported rather than asserted
    std::cout << "        [info] pure-bb1 on the cycle problem: " << pure_cycle_outcome
              << " (the four-point tuning targets the long KGD rule; the pure long-step run"
              << " is the diverging one, per the cycle criterion)\n";
}

void criterion_logistic_pipeline(Checker& c) {
    // byte-exact round trip of the packaged fixture
    const std::string path = std::string(KGD_TEST_DATA_DIR) + "/small.libsvm";
    std::ifstream raw(path, std::ios::binary);
    c.require(raw.is_open(), "fixture missing");
    std::stringstream original;
    original << raw.rdbuf();
    auto data = parse_libsvm_file(path);
    std::ostringstream rewritten;
    write_libsvm(data.a, data.y, rewritten);
    c.require(rewritten.str() == original.str(), "fixture did not round-trip byte-exactly");

    // adaptive short-step run beats fixed 1/L descent on gradient evaluations
    auto p = synth_logistic(1000, 50, 42);
    Vector x0 = Vector::Zero(50);
    SolverConfig adp;
    adp.rule = StepRule::kgd_short();
    adp.record_states = false;
    Trace fast = kgdadp(*p, x0, adp);
    c.require(fast.termination == Termination::Converged, "adaptive run did not converge");

    SolverConfig fixed;
    fixed.record_states = false;
    const double step = 1.0 / p->smoothness_constant();
    Trace slow = pure_iterate(*p, x0, step, StepRule::constant_step(step), fixed);
    c.require(slow.termination == Termination::Converged, "1/L baseline did not converge");
    c.require(fast.grad_evals < slow.grad_evals,
              "adaptive run used " + std::to_string(fast.grad_evals) +
                  " gradient evaluations vs baseline " + std::to_string(slow.grad_evals));
}

struct Criterion {
    int id;
    const char* name;
    void (*body)(Checker&);
    double time_budget_s;  // 0 = unbounded
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "long/short iterate equivalence on 20 seeded quadratics", criterion_equivalence, 1.0},
        {2, "R-linear rate bound 1 - 1/kappa + 0.02 under the adaptive driver",
         criterion_rate_bound, 5.0},
        {3, "short-step trace maps to the long-step trace on the companion quadratic",
         criterion_duality, 0.0},
        {4, "shrink factor 1/sqrt(3(1-2eta)) under failed sufficient decrease",
         criterion_shrink_factor, 0.0},
        {5, "regime-0 lower bound on quadratics", criterion_lower_bound, 0.0},
        {6, "regime-1 steps stay in [1/lambda_max, 1/lambda_min] along traces",
         criterion_step_bounds, 0.0},
        {7, "four-point cycle demo: pure long-step cycles, adaptive run converges",
         criterion_cycle, 1.0},
        {8, "adaptive driver converges on the smoke suite with all four rules",
         criterion_global_convergence, 60.0},
        {9, "every accepted step satisfies the recorded nonmonotone decrease",
         criterion_acceptance_rule, 0.0},
        {10, "performance profile reproduces the worked example exactly", criterion_profile, 0.0},
        {11, "globalized BB1 solves at least as much as pure BB1; variants solve the cycle",
         criterion_globalization_contrast, 0.0},
        {12, "libsvm round-trip and adaptive-vs-1/L gradient evaluations",
         criterion_logistic_pipeline, 10.0},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        Checker checker;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crit.body(checker);
        } catch (const std::exception& e) {
            checker.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
        if (crit.time_budget_s > 0.0) {
            checker.require(elapsed < crit.time_budget_s,
                            "runtime " + format_double(elapsed) + "s over budget " +
                                format_double(crit.time_budget_s) + "s");
        }
        const bool pass = checker.ok;
        failures += pass ? 0 : 1;
        std::printf("[%s] %2d/12 %s (%ld checks, %.2fs)%s%s\n", pass ? "PASS" : "FAIL", crit.id,
                    crit.name, checker.checks, elapsed, pass ? "" : " -- ",
                    pass ? "" : checker.first_failure.c_str());
    }
    if (failures == 0) {
        std::printf("acceptance: all 12 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
