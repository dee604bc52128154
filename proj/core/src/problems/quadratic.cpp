#include "kgd/problems/quadratic.hpp"

#include <algorithm>
#include <random>

namespace kgd {

QuadraticProblem::QuadraticProblem(Matrix q, Vector lambda, Vector b)
    : q_(std::move(q)), lambda_(std::move(lambda)), b_(std::move(b)) {
    if (!(lambda_.minCoeff() > 0.0)) {
        throw DegenerateSpectrum("quadratic spectrum must be strictly positive");
    }
    // x* = -Q diag(1/lambda) Q' b
    Vector u = q_.transpose() * b_;
    u.array() /= lambda_.array();
    xstar_ = -(q_ * u);
}

double QuadraticProblem::value(const Vector& x) const {
    Vector u = q_.transpose() * x;
    return 0.5 * (lambda_.array() * u.array().square()).sum() + b_.dot(x);
}

Vector QuadraticProblem::gradient(const Vector& x) const { return apply_hessian(x) + b_; }

std::optional<SmoothnessBounds> QuadraticProblem::smoothness() const {
    return SmoothnessBounds{lambda_max(), lambda_min(), 0.0, std::nullopt};
}

Vector QuadraticProblem::apply_hessian(const Vector& x) const {
    Vector u = q_.transpose() * x;
    u.array() *= lambda_.array();
    return q_ * u;
}

Vector QuadraticProblem::apply_sqrt(const Vector& x) const {
    Vector u = q_.transpose() * x;
    u.array() *= lambda_.array().sqrt();
    return q_ * u;
}

Matrix QuadraticProblem::dense_hessian() const {
    return q_ * lambda_.asDiagonal() * q_.transpose();
}

Matrix QuadraticProblem::dense_sqrt() const {
    Vector root = lambda_.array().sqrt();
    return q_ * root.asDiagonal() * q_.transpose();
}

QuadraticPtr make_quadratic(const Vector& spectrum, const Vector& b, std::uint64_t seed) {
    const Eigen::Index n = spectrum.size();
    if (n < 1) throw DegenerateSpectrum("empty spectrum");
    if (b.size() != n) throw InvalidConfig("linear term dimension does not match spectrum");
    Vector lambda = spectrum;
    std::sort(lambda.begin(), lambda.end());
    if (!(lambda[0] > 0.0)) throw DegenerateSpectrum("quadratic spectrum must be strictly positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix gauss(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) gauss(i, j) = normal(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(gauss);
    Matrix q = qr.householderQ();
    return std::make_shared<QuadraticProblem>(std::move(q), std::move(lambda), b);
}

HalfPowerTransform half_power_transform(const QuadraticProblem& q) {
    Matrix root = q.dense_sqrt();
    Vector b_phi = root * q.linear_term();
    auto phi = std::make_shared<QuadraticProblem>(q.orthogonal_factor(), q.spectrum(),
                                                  std::move(b_phi));
    return HalfPowerTransform{std::move(phi), std::move(root)};
}

}  // namespace kgd
