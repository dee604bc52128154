#include <doctest.h>

#include <cmath>

#include "kgd/problems/raydan.hpp"
#include "kgd/solvers.hpp"

using namespace kgd;

TEST_CASE("raydan values and gradient") {
    auto p2 = raydan_sc2(2);
    CHECK(p2->value(Vector::Zero(2)) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(p2->gradient(Vector::Zero(2)).norm() == 0.0);

    auto p1 = raydan_sc2(1);
    Vector one(1);
    one << 1.0;
    const double e1 = (std::exp(1.0) - 1.0) / 10.0;
    CHECK(p1->value(one) == doctest::Approx(e1).epsilon(1e-14));
    CHECK(p1->gradient(one)[0] == doctest::Approx(e1).epsilon(1e-14));

    // the origin is the unique stationary point
    auto p5 = raydan_sc2(5);
    CHECK(p5->minimizer()->isZero());
    Vector x = Vector::Constant(5, 0.3);
    CHECK(p5->gradient(x).minCoeff() > 0.0);
    CHECK(p5->gradient(-x).maxCoeff() < 0.0);
}

TEST_CASE("exp overflow surfaces as a numerical failure") {
    auto p = raydan_sc2(3);
    Vector x0 = Vector::Constant(3, 1.0);
    SolverConfig cfg;
    cfg.max_iter = 50;
    // an enormous fixed step immediately overflows exp at the next iterate
    Trace t = pure_iterate(*p, x0, 1e6, StepRule::constant_step(1e6), cfg);
    CHECK(t.termination == Termination::NumericalFailure);
}

TEST_CASE("adaptive short-step run solves raydan n=100") {
    auto p = raydan_sc2(100);
    SolverConfig cfg;
    cfg.rule = StepRule::kgd_short();
    Trace t = kgdadp(*p, Vector::Ones(100), cfg);
    CHECK(t.termination == Termination::Converged);
    CHECK(t.g_norm_final <= 1e-6 * t.g_norm0);
}
