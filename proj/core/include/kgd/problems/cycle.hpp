#pragma once

#include <array>
#include <memory>

#include "kgd/problem.hpp"

namespace kgd {

/// One-dimensional strictly convex piecewise function
///   f(x) = (x-b)^2          for x <= -a,
///   f(x) = c1 x^4 + c2 x^2 + c3   for -a < x < a,
///   f(x) = (x+b)^2          for x >= a,
/// with 0 < a < b and C^2 matching at +-a. The ratio a/b is tuned so that
/// the pure long-step recursion started at x0 = -b with step (b-a)/(4b)
/// cycles forever through -b -> -a -> b -> a.
class CycleProblem final : public Problem {
public:
    CycleProblem(double a, double b, double c1, double c2, double c3)
        : a_(a), b_(b), c1_(c1), c2_(c2), c3_(c3) {}

    int dimension() const override { return 1; }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    std::optional<Vector> minimizer() const override { return Vector::Zero(1); }
    std::optional<SmoothnessBounds> smoothness() const override;

    double a() const { return a_; }
    double b() const { return b_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double c3() const { return c3_; }
    double ratio() const { return a_ / b_; }

    /// Canonical cycling start: x0 = -b with initial step (b-a)/(4b),
    /// which lands the first iterate on -a.
    Vector cycle_start() const;
    double cycle_alpha0() const { return (b_ - a_) / (4.0 * b_); }
    std::array<double, 4> cycle_points() const { return {-b_, -a_, b_, a_}; }

private:
    double a_, b_, c1_, c2_, c3_;
};

using CyclePtr = std::shared_ptr<const CycleProblem>;

/// Solves the cubic (1+t)^3 = 4(1-t) for t = a/b by bisection (residual
/// <= 1e-12), then the 3x3 linear system giving C^2 matching at x = a.
CyclePtr make_cycle_problem(double b);

/// Residual of the tuning equation in t = a/b; exposed for tests.
double cycle_ratio_residual(double t);

}  // namespace kgd
