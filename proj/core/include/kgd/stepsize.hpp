#pragma once

#include <optional>
#include <string>

#include "kgd/problem.hpp"

namespace kgd {

/// Data shared by two consecutive points of a gradient iteration:
/// x_new = x_prev - alpha_prev * g_prev. The displacement is
/// s = -alpha_prev*g_prev and the gradient change is y = g_new - g_prev.
struct StepPair {
    double f_prev = 0.0;
    double f_new = 0.0;
    Vector g_prev;
    Vector g_new;
    double alpha_prev = 0.0;

    Vector displacement() const { return -alpha_prev * g_prev; }
    Vector gradient_change() const { return g_new - g_prev; }
};

enum class StepStatus {
    Ok,
    NegativeStep,        // value returned as-is; caller decides (BB1 with s'y < 0)
    NonpositiveStep,     // rule produced a non-positive or non-finite step
    ZeroDenominator,     // flat gradient change / zero y
    ZeroCurvature,       // s'y == 0 in BB1
    ZeroGradient,        // both gradients vanish in the Regime-0 gauge
    NonpositiveRadicand, // Regime-0 radicand <= 0 (misuse outside the shrink guard)
};

std::string to_string(StepStatus s);

struct StepResult {
    double alpha = std::numeric_limits<double>::quiet_NaN();
    StepStatus status = StepStatus::Ok;

    bool ok() const { return status == StepStatus::Ok; }
    /// True when alpha is a usable positive finite step.
    bool usable() const {
        return (status == StepStatus::Ok || status == StepStatus::NegativeStep) &&
               std::isfinite(alpha) && alpha > 0.0;
    }
};

/// Regime-0 shrink step. With trial x~ = x - alpha*g(x), returns
///   alpha / sqrt(3 + 24*(f(x~) - f(x)) / (alpha * D)),
/// D = ||g(x)+g(x~)||^2 + 4*||g(x)||^2. Whenever the trial failed the
/// sufficient-decrease test with parameter eta < 1/3, the result is at most
/// alpha/sqrt(3*(1-2*eta)).
StepResult kgd0(const StepPair& pair);

/// Regime-1 long step: alpha / (2 + 2*(f_new - f_prev)/(alpha*||g_prev||^2)).
/// Coincides with BB1 on quadratics.
StepResult kgd1_long(const StepPair& pair);

/// Regime-1 short step: 2*(alpha*||g_prev||^2 + f_new - f_prev)/||g_new - g_prev||^2.
/// Coincides with BB2 on quadratics.
StepResult kgd1_short(const StepPair& pair);

/// Long Barzilai-Borwein step s's/s'y. A negative value is returned with the
/// NegativeStep flag rather than suppressed.
StepResult bb1(const Vector& s, const Vector& y);

/// Short Barzilai-Borwein step s'y/y'y.
StepResult bb2(const Vector& s, const Vector& y);

/// Displacement cap for the stabilized BB iteration. Delta is computed once,
/// from the first three displacement norms, and then never changes.
struct StabilizerConfig {
    double c = 1.0;                       // cap scale, > 0
    std::optional<double> delta;          // c * min(||s1||, ||s2||, ||s3||) once known

    bool ready() const { return delta.has_value(); }
};

/// min(alpha, Delta/g_norm). Throws DeltaUnset before Delta is computed.
double stab_cap(double alpha, double g_norm, const StabilizerConfig& cfg);

enum class StepKind {
    KgdLong,
    KgdShort,
    Bb1,
    Bb2,
    ConstantStep,  // fixed-step baseline; `constant` holds the step
};

std::string to_string(StepKind k);

/// Strategy for the Regime-1 step of an iteration driver. The stabilizer is
/// only meaningful with Bb1 but is accepted with any kind.
struct StepRule {
    StepKind kind = StepKind::KgdLong;
    std::optional<StabilizerConfig> stabilizer;
    double constant = 0.0;  // used by ConstantStep only

    static StepRule kgd_long() { return {StepKind::KgdLong, std::nullopt, 0.0}; }
    static StepRule kgd_short() { return {StepKind::KgdShort, std::nullopt, 0.0}; }
    static StepRule bb1() { return {StepKind::Bb1, std::nullopt, 0.0}; }
    static StepRule bb2() { return {StepKind::Bb2, std::nullopt, 0.0}; }
    static StepRule bb1_stabilized(double c) {
        return {StepKind::Bb1, StabilizerConfig{c, std::nullopt}, 0.0};
    }
    static StepRule constant_step(double alpha) { return {StepKind::ConstantStep, std::nullopt, alpha}; }
};

/// Apply the rule's Regime-1 formula to a consecutive pair.
StepResult apply_rule(const StepRule& rule, const StepPair& pair);

}  // namespace kgd
