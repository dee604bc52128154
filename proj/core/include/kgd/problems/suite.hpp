#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgd/problem.hpp"

namespace kgd {

/// A named, ready-to-solve problem: the objective plus its starting point
/// and, when the construction pins one, the initial step-size.
struct ProblemInstance {
    std::string name;
    std::string spec;
    ProblemPtr problem;
    Vector x0;
    std::optional<double> alpha0;
};

/// Ascending spectrum log-spaced on [1, kappa] (all ones when kappa == 1).
Vector log_spaced_spectrum(int n, double kappa);

/// Builds a problem from a spec string `name:key=val,key=val`. Values may
/// themselves contain commas (e.g. spectrum=1,10): tokens without '=' extend
/// the previous value. Recognized names:
///   quadratic      spectrum=... | n=,kappa=    [seed=]
///   raydan         n=
///   cycle          b=
///   synth-logistic m=,n=  [seed=, gamma=]      (gamma defaults to 1/m)
///   logistic       path=  [gamma=]
/// Throws InvalidConfig on unknown names or keys.
ProblemInstance make_instance(const std::string& spec, std::uint64_t default_seed);

/// Built-in benchmark set: three quadratics (kappa 10/100/1000), raydan
/// n=100, the cycle problem, and a synthetic logistic instance.
std::vector<ProblemInstance> smoke_suite(std::uint64_t seed);

/// Manifest file: one spec per line ('#' comments), or a JSON array of
/// {"name": ..., "spec": ...} objects when the path ends in .json.
std::vector<ProblemInstance> load_manifest(const std::string& path, std::uint64_t default_seed);

}  // namespace kgd
