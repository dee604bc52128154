#include "kgd/problems/logistic.hpp"

#include <cmath>
#include <random>

namespace kgd {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(u)) without overflow for either sign of u
double softplus(double u) {
    if (u > 0.0) return u + std::log1p(std::exp(-u));
    return std::log1p(std::exp(u));
}

}  // namespace

long design_rows(const DesignMatrix& a) {
    return std::visit([](const auto& m) { return static_cast<long>(m.rows()); }, a);
}

long design_cols(const DesignMatrix& a) {
    return std::visit([](const auto& m) { return static_cast<long>(m.cols()); }, a);
}

Vector design_apply(const DesignMatrix& a, const Vector& x) {
    return std::visit([&](const auto& m) -> Vector { return m * x; }, a);
}

Vector design_apply_transpose(const DesignMatrix& a, const Vector& r) {
    return std::visit([&](const auto& m) -> Vector { return m.transpose() * r; }, a);
}

double power_iteration_lambda_max(const DesignMatrix& a, double rel_tol, int max_iter,
                                  std::uint64_t seed) {
    const long n = design_cols(a);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (long i = 0; i < n; ++i) v[i] = normal(rng);
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = design_apply_transpose(a, design_apply(a, v));
        const double lambda_new = v.dot(w);  // Rayleigh quotient, ||v|| = 1
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;  // A v = 0; matrix is zero on this ray
        v = w / wn;
        if (it > 0 && std::abs(lambda_new - lambda) <= rel_tol * std::abs(lambda_new)) {
            return lambda_new;
        }
        lambda = lambda_new;
    }
    throw PowerIterationStall("power iteration did not converge within the iteration cap");
}

LogisticProblem::LogisticProblem(DesignMatrix a, Vector y, double gamma)
    : a_(std::move(a)), y_(std::move(y)), gamma_(gamma) {
    if (design_rows(a_) < 1) throw InvalidConfig("logistic problem requires m >= 1");
    if (y_.size() != design_rows(a_)) throw InvalidConfig("label count does not match rows");
    if (!(gamma_ >= 0.0)) throw InvalidConfig("gamma must be >= 0");
    for (Eigen::Index i = 0; i < y_.size(); ++i) {
        if (y_[i] != 0.0 && y_[i] != 1.0) {
            throw BadLabel("labels must be 0 or 1 (sample " + std::to_string(i) + ")");
        }
    }
    gram_lambda_max_ = power_iteration_lambda_max(a_);
}

double LogisticProblem::value(const Vector& x) const {
    const Vector z = design_apply(a_, x);
    const long m = sample_count();
    double sum = 0.0;
    for (long i = 0; i < m; ++i) {
        sum += softplus(-z[i]) + (1.0 - y_[i]) * z[i];
    }
    return sum / static_cast<double>(m) + 0.5 * gamma_ * x.squaredNorm();
}

Vector LogisticProblem::gradient(const Vector& x) const {
    Vector r = design_apply(a_, x);
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = sigmoid(r[i]) - y_[i];
    Vector g = design_apply_transpose(a_, r) / static_cast<double>(sample_count());
    if (gamma_ != 0.0) g += gamma_ * x;
    return g;
}

LogisticPtr make_logistic(DesignMatrix a, Vector y, double gamma) {
    return std::make_shared<LogisticProblem>(std::move(a), std::move(y), gamma);
}

LogisticPtr synth_logistic(long m, int n, std::uint64_t seed, std::optional<double> gamma) {
    if (m < 1 || n < 1) throw InvalidConfig("synth_logistic requires m, n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Matrix a(m, n);
    for (long i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
    }
    Vector x_true(n);
    for (int j = 0; j < n; ++j) x_true[j] = normal(rng);

    Vector y(m);
    const Vector z = a * x_true;
    for (long i = 0; i < m; ++i) y[i] = unif(rng) < sigmoid(z[i]) ? 1.0 : 0.0;

    const double g = gamma.value_or(1.0 / static_cast<double>(m));
    return make_logistic(std::move(a), std::move(y), g);
}

double smoothness_constant(const LogisticProblem& p) { return p.smoothness_constant(); }

}  // namespace kgd
