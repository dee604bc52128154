#pragma once

#include <string>
#include <vector>

#include "kgd/problems/suite.hpp"
#include "kgd/solvers.hpp"

namespace kgd::bench {

/// A solver id bound to a configuration. Recognized ids:
///   kgdadp-long kgdadp-short kgdadp-bb1 kgdadp-bb2
///   pure-kgd-long pure-kgd-short pure-bb1 pure-bb2
///   bb1stab
struct SolverSpec {
    std::string id;
    SolverConfig config;
};

std::vector<std::string> builtin_solver_ids();

/// Binds the id's driver/rule onto `base` (eta, M, tol, budgets, stabilizer c
/// are taken from base). Throws InvalidConfig on an unknown id.
SolverSpec make_solver(const std::string& id, const SolverConfig& base);

/// Runs one solver on one problem instance (records full states only if the
/// config asks for them).
Trace run_solver(const SolverSpec& solver, const ProblemInstance& instance);

enum class Outcome { Success, Failure };

std::string to_string(Outcome o);

struct BenchmarkRecord {
    std::string solver;
    std::string problem;
    Outcome outcome = Outcome::Failure;
    long iterations = 0;
    long grad_evals = 0;
    double seconds = 0.0;
    double rel_gnorm = std::numeric_limits<double>::infinity();

    bool operator==(const BenchmarkRecord&) const = default;
};

BenchmarkRecord to_record(const std::string& solver_id, const std::string& problem_id,
                          const Trace& trace);

/// One record per (solver, problem) pair. Per-run errors become Failure
/// records; the matrix never aborts. `jobs` > 1 runs pairs in parallel
/// (each pair is independent and seeded, so results do not depend on order).
std::vector<BenchmarkRecord> run_matrix(const std::vector<SolverSpec>& solvers,
                                        const std::vector<ProblemInstance>& problems,
                                        int jobs = 1);

}  // namespace kgd::bench
