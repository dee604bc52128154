#include "kgd/problems/cycle.hpp"

#include <cmath>

namespace kgd {

double CycleProblem::value(const Vector& x) const {
    const double t = x[0];
    if (t <= -a_) {
        const double d = t - b_;
        return d * d;
    }
    if (t >= a_) {
        const double d = t + b_;
        return d * d;
    }
    const double t2 = t * t;
    return c1_ * t2 * t2 + c2_ * t2 + c3_;
}

Vector CycleProblem::gradient(const Vector& x) const {
    const double t = x[0];
    Vector g(1);
    if (t <= -a_) {
        g[0] = 2.0 * (t - b_);
    } else if (t >= a_) {
        g[0] = 2.0 * (t + b_);
    } else {
        g[0] = 4.0 * c1_ * t * t * t + 2.0 * c2_ * t;
    }
    return g;
}

std::optional<SmoothnessBounds> CycleProblem::smoothness() const {
    // Curvature is 2 on the outer branches and 12*c1*x^2 + 2*c2 on the middle
    // piece; with c1 < 0 it decreases from 2*c2 at 0 to 2 at |x| = a. The
    // sublevel set of the cycling start is [-b, b], so sup|g| = 4b there.
    return SmoothnessBounds{2.0 * c2_, 2.0, 24.0 * std::abs(c1_) * a_, 4.0 * b_};
}

Vector CycleProblem::cycle_start() const {
    Vector x(1);
    x[0] = -b_;
    return x;
}

double cycle_ratio_residual(double t) {
    const double u = 1.0 + t;
    return u * u * u - 4.0 * (1.0 - t);
}

CyclePtr make_cycle_problem(double b) {
    if (!(b > 0.0)) throw InvalidConfig("cycle problem requires b > 0");

    // The long-step value at the (-a -> b) transition equals (b-a)/(4b)
    // exactly when t = a/b satisfies (1+t)^3 = 4(1-t); the residual is
    // strictly increasing, so there is a unique root in (0, 1).
    double lo = 1e-6;
    double hi = 1.0 - 1e-6;
    double rlo = cycle_ratio_residual(lo);
    double rhi = cycle_ratio_residual(hi);
    if (!(rlo < 0.0) || !(rhi > 0.0)) {
        throw NoRootBracketed("cycle ratio equation has no sign change on (0, 1)");
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double r = cycle_ratio_residual(mid);
        if (std::abs(r) <= 1e-12) break;
        if (r < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (std::abs(cycle_ratio_residual(mid)) > 1e-12) {
        throw NoRootBracketed("bisection failed to reach the residual tolerance");
    }

    const double a = mid * b;

    // C^2 matching at x = a against the right branch (x+b)^2:
    //   value:     c1 a^4 + c2 a^2 + c3 = (a+b)^2
    //   slope:     4 c1 a^3 + 2 c2 a    = 2 (a+b)
    //   curvature: 12 c1 a^2 + 2 c2     = 2
    Eigen::Matrix3d m;
    m << a * a * a * a, a * a, 1.0,
         4.0 * a * a * a, 2.0 * a, 0.0,
         12.0 * a * a, 2.0, 0.0;
    Eigen::Vector3d rhs((a + b) * (a + b), 2.0 * (a + b), 2.0);
    Eigen::Vector3d c = m.fullPivLu().solve(rhs);

    return std::make_shared<CycleProblem>(a, b, c[0], c[1], c[2]);
}

}  // namespace kgd
