#include "kgd/bench/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace kgd::bench {

std::string to_string(Metric m) {
    switch (m) {
        case Metric::Iterations: return "iters";
        case Metric::GradEvals: return "gevals";
        case Metric::Seconds: return "seconds";
    }
    return "?";
}

Metric metric_from_string(const std::string& name) {
    if (name == "iters" || name == "iterations") return Metric::Iterations;
    if (name == "gevals" || name == "gradients") return Metric::GradEvals;
    if (name == "seconds" || name == "cpu") return Metric::Seconds;
    throw InvalidConfig("unknown metric '" + name + "'");
}

namespace {

double metric_value(const BenchmarkRecord& rec, Metric m) {
    if (rec.outcome == Outcome::Failure) return std::numeric_limits<double>::infinity();
    switch (m) {
        case Metric::Iterations: return static_cast<double>(rec.iterations);
        case Metric::GradEvals: return static_cast<double>(rec.grad_evals);
        case Metric::Seconds: return rec.seconds;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

double ProfileCurve::r_at(double tau) const {
    double r = 0.0;
    for (const auto& [t, v] : points) {
        if (t <= tau) {
            r = v;
        } else {
            break;
        }
    }
    return r;
}

PerformanceProfile performance_profile(const std::vector<BenchmarkRecord>& records,
                                       Metric metric) {
    if (records.empty()) throw InvalidConfig("performance_profile: empty record set");

    // first occurrence wins for duplicated (solver, problem) pairs
    std::map<std::string, std::map<std::string, double>> by_solver;  // solver -> problem -> value
    std::set<std::string> problems;
    for (const auto& rec : records) {
        problems.insert(rec.problem);
        auto& row = by_solver[rec.solver];
        row.emplace(rec.problem, metric_value(rec, metric));
    }
    const int n_problems = static_cast<int>(problems.size());

    // per-problem best over successful solvers
    std::map<std::string, double> best;
    for (const auto& p : problems) {
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [solver, row] : by_solver) {
            auto it = row.find(p);
            if (it != row.end()) b = std::min(b, it->second);
        }
        if (std::isfinite(b)) best[p] = b;
    }

    PerformanceProfile profile;
    profile.metric = metric;
    profile.n_problems = n_problems;

    for (const auto& [solver, row] : by_solver) {
        std::vector<double> taus;
        for (const auto& [p, value] : row) {
            if (!std::isfinite(value)) continue;  // failures never qualify
            auto bit = best.find(p);
            if (bit == best.end()) continue;
            const double b = bit->second;
            const double ratio = (value == b) ? 1.0 : value / b;  // ties get ratio 1 exactly
            taus.push_back(std::log2(ratio));
        }
        std::sort(taus.begin(), taus.end());

        ProfileCurve curve;
        curve.solver = solver;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double r = static_cast<double>(i + 1) / n_problems;
            if (!curve.points.empty() && curve.points.back().first == taus[i]) {
                curve.points.back().second = r;  // collapse tied breakpoints
            } else {
                curve.points.emplace_back(taus[i], r);
            }
        }
        profile.curves.push_back(std::move(curve));
    }
    return profile;
}

}  // namespace kgd::bench
