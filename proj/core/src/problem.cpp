#include "kgd/problem.hpp"

#include <cmath>

namespace kgd {

void Evaluator::check_dim(const Vector& x) const {
    if (x.size() != p_.dimension()) {
        throw InvalidConfig("point dimension " + std::to_string(x.size()) +
                            " does not match problem dimension " +
                            std::to_string(p_.dimension()));
    }
}

double Evaluator::value(const Vector& x) {
    check_dim(x);
    ++counts_.values;
    double f = p_.value(x);
    if (!std::isfinite(f)) throw NonFiniteError("objective value is not finite");
    return f;
}

Vector Evaluator::gradient(const Vector& x) {
    check_dim(x);
    ++counts_.gradients;
    Vector g = p_.gradient(x);
    if (!g.allFinite()) throw NonFiniteError("gradient has non-finite entries");
    return g;
}

std::pair<double, Vector> Evaluator::value_and_gradient(const Vector& x) {
    double f = value(x);
    Vector g = gradient(x);
    return {f, std::move(g)};
}

std::pair<double, Vector> evaluate(const Problem& p, const Vector& x, EvalCounts& counts) {
    Evaluator ev(p);
    auto fg = ev.value_and_gradient(x);
    counts.values += ev.counts().values;
    counts.gradients += ev.counts().gradients;
    return fg;
}

Vector finite_difference_gradient(const Problem& p, const Vector& x, double h_scale) {
    const Eigen::Index n = x.size();
    Vector g(n);
    Vector xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = h_scale * (1.0 + std::abs(x[i]));
        const double xi = x[i];
        xp[i] = xi + h;
        const double fp = p.value(xp);
        xp[i] = xi - h;
        const double fm = p.value(xp);
        xp[i] = xi;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NonFiniteError("objective not finite at finite-difference sample");
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace kgd
