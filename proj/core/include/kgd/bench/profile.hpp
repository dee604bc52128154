#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kgd/bench/run.hpp"

namespace kgd::bench {

enum class Metric { Iterations, GradEvals, Seconds };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& name);  // throws InvalidConfig

/// One solver's distribution of log2 performance ratios, stored as the exact
/// breakpoints of the right-continuous step function r(tau).
struct ProfileCurve {
    std::string solver;
    std::vector<std::pair<double, double>> points;  // (tau, r), tau ascending

    /// r(tau): fraction of problems solved within 2^tau of the per-problem best.
    double r_at(double tau) const;
};

struct PerformanceProfile {
    Metric metric = Metric::Iterations;
    int n_problems = 0;
    std::vector<ProfileCurve> curves;  // ordered by solver id
};

/// Dolan-More profile over a full (solver x problem) record set. Failed runs
/// count as +infinity and never qualify at any finite tau; the per-problem
/// best is the minimum over successful solvers; ties all receive ratio 1.
/// Duplicate (solver, problem) records keep the first occurrence. Throws
/// InvalidConfig on an empty input.
PerformanceProfile performance_profile(const std::vector<BenchmarkRecord>& records,
                                       Metric metric);

}  // namespace kgd::bench
