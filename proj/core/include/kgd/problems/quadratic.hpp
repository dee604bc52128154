#pragma once

#include <cstdint>
#include <memory>

#include "kgd/problem.hpp"

namespace kgd {

/// Strongly convex quadratic 0.5*x'Hx + b'x with H = Q diag(lambda) Q'
/// built from a user-specified spectrum and a seeded orthogonal factor, so
/// the condition number is exact by construction.
class QuadraticProblem final : public Problem {
public:
    QuadraticProblem(Matrix q, Vector lambda, Vector b);

    int dimension() const override { return static_cast<int>(lambda_.size()); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    std::optional<Vector> minimizer() const override { return xstar_; }
    std::optional<SmoothnessBounds> smoothness() const override;

    const Vector& spectrum() const { return lambda_; }  // ascending
    double lambda_min() const { return lambda_[0]; }
    double lambda_max() const { return lambda_[lambda_.size() - 1]; }
    double condition_number() const { return lambda_max() / lambda_min(); }
    const Vector& linear_term() const { return b_; }
    const Matrix& orthogonal_factor() const { return q_; }

    Vector apply_hessian(const Vector& x) const;
    Vector apply_sqrt(const Vector& x) const;  // H^{1/2} x
    Matrix dense_hessian() const;
    Matrix dense_sqrt() const;

private:
    Matrix q_;       // columns are eigenvectors
    Vector lambda_;  // ascending, all positive
    Vector b_;
    Vector xstar_;   // -H^{-1} b
};

using QuadraticPtr = std::shared_ptr<const QuadraticProblem>;

/// H = Q diag(spectrum) Q' with Q the orthogonal factor of a seeded
/// standard-normal matrix. Throws DegenerateSpectrum on any lambda <= 0.
QuadraticPtr make_quadratic(const Vector& spectrum, const Vector& b, std::uint64_t seed);

/// The companion quadratic phi(w) = 0.5*w'Hw + (H^{1/2}b)'w together with the
/// change of variables w = H^{1/2} x. The short-step iteration on the
/// original problem corresponds to the long-step iteration on phi.
struct HalfPowerTransform {
    QuadraticPtr phi;
    Matrix forward;  // H^{1/2}

    Vector map(const Vector& x) const { return forward * x; }
};

HalfPowerTransform half_power_transform(const QuadraticProblem& q);

}  // namespace kgd
