#pragma once

#include <stdexcept>
#include <string>

namespace kgd {

/// Objective or gradient produced NaN/Inf (e.g. exp overflow). Recoverable:
/// solvers terminate the run with Termination::NumericalFailure.
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateSpectrum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoRootBracketed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PowerIterationStall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stabilizer cap queried before its Delta was computed from the first
/// three displacements.
struct DeltaUnset : std::logic_error {
    using std::logic_error::logic_error;
};

struct BadLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

}  // namespace kgd
