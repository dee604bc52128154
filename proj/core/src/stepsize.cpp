#include "kgd/stepsize.hpp"

#include <cmath>

namespace kgd {

std::string to_string(StepStatus s) {
    switch (s) {
        case StepStatus::Ok: return "Ok";
        case StepStatus::NegativeStep: return "NegativeStep";
        case StepStatus::NonpositiveStep: return "NonpositiveStep";
        case StepStatus::ZeroDenominator: return "ZeroDenominator";
        case StepStatus::ZeroCurvature: return "ZeroCurvature";
        case StepStatus::ZeroGradient: return "ZeroGradient";
        case StepStatus::NonpositiveRadicand: return "NonpositiveRadicand";
    }
    return "?";
}

std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::KgdLong: return "kgd-long";
        case StepKind::KgdShort: return "kgd-short";
        case StepKind::Bb1: return "bb1";
        case StepKind::Bb2: return "bb2";
        case StepKind::ConstantStep: return "constant";
    }
    return "?";
}

StepResult kgd0(const StepPair& pair) {
    const double d = (pair.g_prev + pair.g_new).squaredNorm() + 4.0 * pair.g_prev.squaredNorm();
    if (!(d > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), StepStatus::ZeroGradient};
    const double radicand = 3.0 + 24.0 * (pair.f_new - pair.f_prev) / (pair.alpha_prev * d);
    if (!(radicand > 0.0) || !std::isfinite(radicand)) {
        return {std::numeric_limits<double>::quiet_NaN(), StepStatus::NonpositiveRadicand};
    }
    return {pair.alpha_prev / std::sqrt(radicand), StepStatus::Ok};
}

StepResult kgd1_long(const StepPair& pair) {
    const double gg = pair.g_prev.squaredNorm();
    const double denom = 2.0 + 2.0 * (pair.f_new - pair.f_prev) / (pair.alpha_prev * gg);
    const double alpha = pair.alpha_prev / denom;
    if (!(denom > 0.0) || !std::isfinite(alpha) || !(alpha > 0.0)) {
        return {std::numeric_limits<double>::quiet_NaN(), StepStatus::NonpositiveStep};
    }
    return {alpha, StepStatus::Ok};
}

StepResult kgd1_short(const StepPair& pair) {
    const double yy = (pair.g_new - pair.g_prev).squaredNorm();
    if (!(yy > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), StepStatus::ZeroDenominator};
    const double alpha =
        2.0 * (pair.alpha_prev * pair.g_prev.squaredNorm() + (pair.f_new - pair.f_prev)) / yy;
    if (!std::isfinite(alpha)) {
        return {std::numeric_limits<double>::quiet_NaN(), StepStatus::NonpositiveStep};
    }
    if (!(alpha > 0.0)) return {alpha, StepStatus::NonpositiveStep};
    return {alpha, StepStatus::Ok};
}

StepResult bb1(const Vector& s, const Vector& y) {
    const double sy = s.dot(y);
    if (sy == 0.0) return {std::numeric_limits<double>::quiet_NaN(), StepStatus::ZeroCurvature};
    const double alpha = s.squaredNorm() / sy;
    if (alpha < 0.0) return {alpha, StepStatus::NegativeStep};
    return {alpha, StepStatus::Ok};
}

StepResult bb2(const Vector& s, const Vector& y) {
    const double yy = y.squaredNorm();
    if (!(yy > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), StepStatus::ZeroDenominator};
    return {s.dot(y) / yy, StepStatus::Ok};
}

double stab_cap(double alpha, double g_norm, const StabilizerConfig& cfg) {
    if (!cfg.ready()) throw DeltaUnset("stabilizer cap queried before Delta was computed");
    return std::min(alpha, *cfg.delta / g_norm);
}

StepResult apply_rule(const StepRule& rule, const StepPair& pair) {
    switch (rule.kind) {
        case StepKind::KgdLong: return kgd1_long(pair);
        case StepKind::KgdShort: return kgd1_short(pair);
        case StepKind::Bb1: return bb1(pair.displacement(), pair.gradient_change());
        case StepKind::Bb2: return bb2(pair.displacement(), pair.gradient_change());
        case StepKind::ConstantStep: return {rule.constant, StepStatus::Ok};
    }
    return {std::numeric_limits<double>::quiet_NaN(), StepStatus::NonpositiveStep};
}

}  // namespace kgd
