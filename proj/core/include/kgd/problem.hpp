#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "kgd/errors.hpp"

namespace kgd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Curvature bounds of an objective over the region of interest.
/// Exact for quadratics: lambda_max/lambda_min are the extreme eigenvalues
/// of the Hessian and the Hessian-Lipschitz constant is zero.
struct SmoothnessBounds {
    double lambda_max = 0.0;                 // largest curvature
    double lambda_min = 0.0;                 // smallest curvature (>= 0)
    double hessian_lipschitz = 0.0;          // Lipschitz constant of the Hessian
    std::optional<double> gradient_sup;      // sup of ||grad|| over the sublevel set

    bool valid() const {
        return lambda_max >= lambda_min && lambda_min >= 0.0 &&
               std::isfinite(lambda_max) && hessian_lipschitz >= 0.0;
    }
};

/// A smooth unconstrained objective. Implementations must be deterministic
/// and re-entrant: value/gradient may be called concurrently from several
/// solver runs on the same instance.
class Problem {
public:
    virtual ~Problem() = default;

    virtual int dimension() const = 0;
    virtual double value(const Vector& x) const = 0;
    virtual Vector gradient(const Vector& x) const = 0;

    /// Known minimizer, when the construction pins one.
    virtual std::optional<Vector> minimizer() const { return std::nullopt; }
    virtual std::optional<SmoothnessBounds> smoothness() const { return std::nullopt; }
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// Ad-hoc objective from callables; mostly used by tests.
class FunctionProblem final : public Problem {
public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradFn = std::function<Vector(const Vector&)>;

    FunctionProblem(int n, ValueFn f, GradFn g,
                    std::optional<Vector> minimizer = std::nullopt,
                    std::optional<SmoothnessBounds> bounds = std::nullopt)
        : n_(n), f_(std::move(f)), g_(std::move(g)),
          minimizer_(std::move(minimizer)), bounds_(bounds) {}

    int dimension() const override { return n_; }
    double value(const Vector& x) const override { return f_(x); }
    Vector gradient(const Vector& x) const override { return g_(x); }
    std::optional<Vector> minimizer() const override { return minimizer_; }
    std::optional<SmoothnessBounds> smoothness() const override { return bounds_; }

private:
    int n_;
    ValueFn f_;
    GradFn g_;
    std::optional<Vector> minimizer_;
    std::optional<SmoothnessBounds> bounds_;
};

struct EvalCounts {
    long values = 0;
    long gradients = 0;
};

/// Counting wrapper around a Problem. One Evaluator per solver run; counts
/// become the Trace's f/gradient totals. Throws NonFiniteError when the
/// objective or any gradient entry is NaN/Inf.
class Evaluator {
public:
    explicit Evaluator(const Problem& p) : p_(p) {}

    double value(const Vector& x);
    Vector gradient(const Vector& x);
    std::pair<double, Vector> value_and_gradient(const Vector& x);

    const EvalCounts& counts() const { return counts_; }
    const Problem& problem() const { return p_; }

private:
    void check_dim(const Vector& x) const;

    const Problem& p_;
    EvalCounts counts_;
};

/// Evaluate f and its gradient at x, bumping both counters.
std::pair<double, Vector> evaluate(const Problem& p, const Vector& x, EvalCounts& counts);

/// Central-difference gradient with per-coordinate step h_i = h_scale*(1+|x_i|).
/// Test oracle for analytic gradients; never used by the solvers.
Vector finite_difference_gradient(const Problem& p, const Vector& x, double h_scale = 1e-6);

}  // namespace kgd
