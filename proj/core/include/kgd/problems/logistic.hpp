#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <memory>
#include <variant>

#include "kgd/problem.hpp"

namespace kgd {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Dense for synthetic data, row-compressed sparse for LIBSVM datasets.
using DesignMatrix = std::variant<Matrix, SparseRowMatrix>;

long design_rows(const DesignMatrix& a);
long design_cols(const DesignMatrix& a);
Vector design_apply(const DesignMatrix& a, const Vector& x);             // A x
Vector design_apply_transpose(const DesignMatrix& a, const Vector& r);   // A' r

/// Largest eigenvalue of A'A by power iteration (seeded start, relative
/// tolerance on successive Rayleigh quotients). Throws PowerIterationStall
/// past max_iter.
double power_iteration_lambda_max(const DesignMatrix& a, double rel_tol = 1e-8,
                                  int max_iter = 10000, std::uint64_t seed = 12345);

/// L2-regularized logistic regression,
///   f(x) = -(1/m) sum_i [y_i log s(a_i'x) + (1-y_i) log(1 - s(a_i'x))] + (gamma/2)||x||^2,
/// evaluated through the stable identity
///   -y log s(z) - (1-y) log(1-s(z)) = log(1+exp(-z)) + (1-y) z.
class LogisticProblem final : public Problem {
public:
    LogisticProblem(DesignMatrix a, Vector y, double gamma);

    int dimension() const override { return static_cast<int>(design_cols(a_)); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;

    long sample_count() const { return design_rows(a_); }
    double gamma() const { return gamma_; }
    const Vector& labels() const { return y_; }
    const DesignMatrix& design() const { return a_; }

    double gram_lambda_max() const { return gram_lambda_max_; }
    /// Smoothness constant of the mean loss: lambda_max(A'A)/(4m) + gamma.
    double smoothness_constant() const { return 0.25 * gram_lambda_max_ / static_cast<double>(sample_count()) + gamma_; }
    /// Same constant without the 1/m scaling: lambda_max(A'A)/4 + gamma.
    double smoothness_constant_unscaled() const { return 0.25 * gram_lambda_max_ + gamma_; }

private:
    DesignMatrix a_;
    Vector y_;
    double gamma_;
    double gram_lambda_max_;
};

using LogisticPtr = std::shared_ptr<const LogisticProblem>;

LogisticPtr make_logistic(DesignMatrix a, Vector y, double gamma);

/// Planted-model synthetic instance: standard-normal rows and true weights,
/// Bernoulli labels with success probability s(a_i'x_true). gamma defaults
/// to 1/m. Deterministic per seed.
LogisticPtr synth_logistic(long m, int n, std::uint64_t seed,
                           std::optional<double> gamma = std::nullopt);

/// Free-function form of LogisticProblem::smoothness_constant.
double smoothness_constant(const LogisticProblem& p);

}  // namespace kgd
