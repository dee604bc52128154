#include "kgd/problems/raydan.hpp"

#include <cmath>

namespace kgd {

namespace {

class RaydanSc2 final : public Problem {
public:
    explicit RaydanSc2(int n) : n_(n) {
        if (n < 1) throw InvalidConfig("raydan_sc2 requires n >= 1");
    }

    int dimension() const override { return n_; }

    double value(const Vector& x) const override {
        double sum = 0.0;
        for (int i = 0; i < n_; ++i) {
            sum += (i + 1) * (std::exp(x[i]) - x[i]);
        }
        return sum / 10.0;
    }

    Vector gradient(const Vector& x) const override {
        Vector g(n_);
        for (int i = 0; i < n_; ++i) {
            g[i] = (i + 1) * std::expm1(x[i]) / 10.0;  // i*(e^{x_i} - 1)/10
        }
        return g;
    }

    std::optional<Vector> minimizer() const override { return Vector::Zero(n_); }

private:
    int n_;
};

}  // namespace

ProblemPtr raydan_sc2(int n) { return std::make_shared<RaydanSc2>(n); }

}  // namespace kgd
