#include "kgd/bench/run.hpp"

#include <atomic>
#include <thread>

namespace kgd::bench {

std::vector<std::string> builtin_solver_ids() {
    return {"kgdadp-long", "kgdadp-short", "kgdadp-bb1", "kgdadp-bb2",
            "pure-kgd-long", "pure-kgd-short", "pure-bb1", "pure-bb2", "bb1stab"};
}

SolverSpec make_solver(const std::string& id, const SolverConfig& base) {
    SolverSpec spec{id, base};
    SolverConfig& cfg = spec.config;
    if (id == "kgdadp-long" || id == "pure-kgd-long") {
        cfg.rule = StepRule::kgd_long();
    } else if (id == "kgdadp-short" || id == "pure-kgd-short") {
        cfg.rule = StepRule::kgd_short();
    } else if (id == "kgdadp-bb1" || id == "pure-bb1") {
        cfg.rule = StepRule::bb1();
    } else if (id == "kgdadp-bb2" || id == "pure-bb2") {
        cfg.rule = StepRule::bb2();
    } else if (id == "bb1stab") {
        const double c = base.rule.stabilizer ? base.rule.stabilizer->c : 1.0;
        cfg.rule = StepRule::bb1_stabilized(c);
    } else {
        throw InvalidConfig("unknown solver '" + id + "'");
    }
    return spec;
}

Trace run_solver(const SolverSpec& solver, const ProblemInstance& instance) {
    SolverConfig cfg = solver.config;
    if (instance.alpha0 && !cfg.alpha0) cfg.alpha0 = instance.alpha0;

    const std::string& id = solver.id;
    if (id.rfind("kgdadp-", 0) == 0) {
        return kgdadp(*instance.problem, instance.x0, cfg);
    }
    if (id == "bb1stab") {
        return bbstab(*instance.problem, instance.x0, cfg);
    }
    if (id.rfind("pure-", 0) == 0) {
        return pure_iterate(*instance.problem, instance.x0, cfg.rule, cfg);
    }
    throw InvalidConfig("unknown solver '" + id + "'");
}

BenchmarkRecord to_record(const std::string& solver_id, const std::string& problem_id,
                          const Trace& trace) {
    BenchmarkRecord rec;
    rec.solver = solver_id;
    rec.problem = problem_id;
    rec.outcome = trace.converged() ? Outcome::Success : Outcome::Failure;
    rec.iterations = trace.iterations;
    rec.grad_evals = trace.grad_evals;
    rec.seconds = trace.seconds;
    rec.rel_gnorm = trace.relative_g_norm();
    return rec;
}

std::string to_string(Outcome o) { return o == Outcome::Success ? "Success" : "Failure"; }

std::vector<BenchmarkRecord> run_matrix(const std::vector<SolverSpec>& solvers,
                                        const std::vector<ProblemInstance>& problems,
                                        int jobs) {
    if (solvers.empty() || problems.empty()) {
        throw InvalidConfig("run_matrix needs at least one solver and one problem");
    }
    const std::size_t total = solvers.size() * problems.size();
    std::vector<BenchmarkRecord> records(total);

    auto run_pair = [&](std::size_t idx) {
        const std::size_t si = idx / problems.size();
        const std::size_t pi = idx % problems.size();
        const SolverSpec& solver = solvers[si];
        const ProblemInstance& inst = problems[pi];
        try {
            SolverSpec quiet = solver;
            quiet.config.record_states = false;  // keep long runs lean
            records[idx] = to_record(solver.id, inst.name, run_solver(quiet, inst));
        } catch (const std::exception& e) {
            BenchmarkRecord rec;
            rec.solver = solver.id;
            rec.problem = inst.name;
            rec.outcome = Outcome::Failure;
            records[idx] = rec;
        }
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_pair(i);
        return records;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            run_pair(i);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, static_cast<int>(total));
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return records;
}

}  // namespace kgd::bench
