#pragma once

#include "kgd/problem.hpp"

namespace kgd {

/// Raydan's strongly convex test function: f(x) = sum_i i*(exp(x_i) - x_i)/10
/// with 1-based i. Unique minimizer at the origin. The pure BB iteration is
/// known to diverge from some starting points on this family.
ProblemPtr raydan_sc2(int n);

}  // namespace kgd
