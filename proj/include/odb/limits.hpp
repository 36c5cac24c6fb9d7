#ifndef ODB_LIMITS_HPP
#define ODB_LIMITS_HPP

// Deterministic limit quantities of the disordered growth model.
//
//   alpha_c  = <p/(1-p)>^-1
//   alpha_c' = <p(1-p)/(b-p)^2>^-1          (0 when the bracket diverges)
//
//   c(alpha) = b + alpha(1-b)<p/(b-p)>       alpha <= alpha_c'   (composite)
//            = a + alpha(1-a)<p/(a-p)>       alpha_c' <= alpha <= alpha_c (pure)
//            = 1                             alpha_c <= alpha    (deterministic)
//
// where a in [b,1] solves alpha<p(1-p)/(a-p)^2> = 1.

#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace odb {

enum class Regime { Composite, Pure, Deterministic, Boundary };

inline const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::Composite: return "composite";
    case Regime::Pure: return "pure";
    case Regime::Deterministic: return "deterministic";
    case Regime::Boundary: return "boundary";
    }
    return "?";
}

struct CriticalValues {
    double alpha_c = 0.0;
    double alpha_c_prime = 0.0;
};

inline CriticalValues critical_values(const DisorderModel& model)
{
    const double m1 = moment(model, Bracket::RateRatio);
    const double m2 = moment(model, Bracket::EdgeCurvature);
    CriticalValues cv;
    cv.alpha_c = m1 > 0.0 ? 1.0 / m1 : kInf;
    cv.alpha_c_prime = std::isinf(m2) ? 0.0 : (m2 > 0.0 ? 1.0 / m2 : kInf);
    return cv;
}

inline constexpr double kRegimeBoundaryTolerance = 1e-12;

inline Regime regime_classify(const DisorderModel& model, double alpha)
{
    const auto cv = critical_values(model);
    if (std::abs(alpha - cv.alpha_c_prime) <= kRegimeBoundaryTolerance || std::abs(alpha - cv.alpha_c) <= kRegimeBoundaryTolerance)
        return Regime::Boundary;
    if (alpha < cv.alpha_c_prime)
        return Regime::Composite;
    if (alpha < cv.alpha_c)
        return Regime::Pure;
    return Regime::Deterministic;
}

namespace detail {

    inline void require_positive_alpha(double alpha)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw DomainError("alpha must be a positive real, got " + std::to_string(alpha));
    }

    inline void require_nondegenerate(const DisorderModel& model)
    {
        if (!(model.edge() > 0.0))
            throw DomainError("degenerate family: support edge b = 0");
    }

} // namespace detail

/// alpha<p(1-p)/(a-p)^2> - 1; decreasing in a.
inline double solve_a_residual(const DisorderModel& model, double alpha, double a)
{
    return alpha * moment(model, Bracket::Curvature, a) - 1.0;
}

/// The root a in [b,1] of alpha<p(1-p)/(a-p)^2> = 1, for alpha_c' <= alpha <= alpha_c.
inline double solve_a(const DisorderModel& model, double alpha)
{
    detail::require_positive_alpha(alpha);
    detail::require_nondegenerate(model);
    const auto cv = critical_values(model);
    if (alpha < cv.alpha_c_prime - kRegimeBoundaryTolerance || alpha > cv.alpha_c + kRegimeBoundaryTolerance)
        throw RegimeError("solve_a needs alpha_c' <= alpha <= alpha_c (alpha_c' = " + std::to_string(cv.alpha_c_prime)
                          + ", alpha_c = " + std::to_string(cv.alpha_c) + ", alpha = " + std::to_string(alpha) + ")");
    const double b = model.edge();
    if (std::abs(alpha - cv.alpha_c_prime) <= kRegimeBoundaryTolerance)
        return b;
    if (std::abs(alpha - cv.alpha_c) <= kRegimeBoundaryTolerance)
        return 1.0;
    // The residual is +inf at a = b when alpha_c' = 0; bisect() only compares signs.
    return bisect([&](double a) { return solve_a_residual(model, alpha, a); }, b, 1.0, 1e-15);
}

inline double time_constant(const DisorderModel& model, double alpha)
{
    detail::require_positive_alpha(alpha);
    detail::require_nondegenerate(model);
    const auto cv = critical_values(model);
    const double b = model.edge();
    if (alpha >= cv.alpha_c)
        return 1.0;
    if (alpha <= cv.alpha_c_prime) {
        const double shift = moment(model, Bracket::EdgeShift);
        if (!std::isfinite(shift))
            throw NumericalAlarm("<p/(b-p)> diverges inside the composite regime");
        return b + alpha * (1.0 - b) * shift;
    }
    const double a = solve_a(model, alpha);
    if (a >= 1.0)
        return 1.0;
    return a + alpha * (1.0 - a) * moment(model, Bracket::Shift, a);
}

struct LimitConstants {
    double alpha = 0.0;
    double alpha_c = 0.0;
    double alpha_c_prime = 0.0;
    double c = 0.0;
    double a = std::numeric_limits<double>::quiet_NaN();
    double theta = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    double tau = std::numeric_limits<double>::quiet_NaN();
    double tau0 = std::numeric_limits<double>::quiet_NaN();
    double xi = 0.0;
    Regime regime = Regime::Boundary;
};

/// theta = 1 - alpha/alpha_c', beta^2 = (1-b)alpha/(b^3 theta),
/// tau^2 = b(1-b)(1/alpha - 1/alpha_c'), for 0 < alpha < alpha_c'.
inline LimitConstants composite_constants(const DisorderModel& model, double alpha)
{
    detail::require_positive_alpha(alpha);
    detail::require_nondegenerate(model);
    const auto cv = critical_values(model);
    if (!(alpha < cv.alpha_c_prime) || std::abs(alpha - cv.alpha_c_prime) <= kRegimeBoundaryTolerance)
        throw RegimeError("composite regime needs 0 < alpha < alpha_c' (alpha_c' = " + std::to_string(cv.alpha_c_prime)
                          + ", alpha = " + std::to_string(alpha) + ")");
    const double b = model.edge();
    LimitConstants k;
    k.alpha = alpha;
    k.alpha_c = cv.alpha_c;
    k.alpha_c_prime = cv.alpha_c_prime;
    k.regime = Regime::Composite;
    k.xi = 1.0 - 1.0 / b;
    k.c = time_constant(model, alpha);
    k.theta = 1.0 - alpha / cv.alpha_c_prime;
    k.beta = std::sqrt((1.0 - b) * alpha / (b * b * b * k.theta));
    k.tau = std::sqrt(b * (1.0 - b) * (1.0 / alpha - 1.0 / cv.alpha_c_prime));
    return k;
}

/// tau_0^2 = Var((1-a)p/(a-p)) in the pure regime.
inline double pure_tau0(const DisorderModel& model, double alpha)
{
    detail::require_positive_alpha(alpha);
    detail::require_nondegenerate(model);
    const auto cv = critical_values(model);
    if (!(alpha > cv.alpha_c_prime && alpha < cv.alpha_c))
        throw RegimeError("pure regime needs alpha_c' < alpha < alpha_c (alpha_c' = " + std::to_string(cv.alpha_c_prime)
                          + ", alpha_c = " + std::to_string(cv.alpha_c) + ", alpha = " + std::to_string(alpha) + ")");
    const double a = solve_a(model, alpha);
    const double first = moment(model, Bracket::Shift, a);
    const double second = moment(model, [a](double p) { return p * p / ((a - p) * (a - p)); });
    double spread = second - first * first;
    // cancellation noise, e.g. for a point mass
    if (spread <= 1e-14 * second)
        spread = 0.0;
    return (1.0 - a) * std::sqrt(spread);
}

/// All fields that make sense for the regime of alpha.
inline LimitConstants limit_constants(const DisorderModel& model, double alpha)
{
    detail::require_positive_alpha(alpha);
    detail::require_nondegenerate(model);
    const Regime regime = regime_classify(model, alpha);
    if (regime == Regime::Composite)
        return composite_constants(model, alpha);
    const auto cv = critical_values(model);
    LimitConstants k;
    k.alpha = alpha;
    k.alpha_c = cv.alpha_c;
    k.alpha_c_prime = cv.alpha_c_prime;
    k.regime = regime;
    k.xi = 1.0 - 1.0 / model.edge();
    k.c = time_constant(model, alpha);
    if (regime == Regime::Pure) {
        k.a = solve_a(model, alpha);
        k.tau0 = pure_tau0(model, alpha);
    } else if (regime == Regime::Boundary && alpha <= cv.alpha_c + kRegimeBoundaryTolerance) {
        k.a = solve_a(model, alpha);
        if (std::abs(alpha - cv.alpha_c_prime) <= kRegimeBoundaryTolerance) {
            k.theta = 0.0;
            k.tau = 0.0;
        }
    }
    return k;
}

struct SpeedOptimum {
    double speed = 0.0;
    double alpha = 0.0;  // maximizer; 0 when the supremum is the alpha -> 0 limit b
};

/// Flat-interface speed sup_alpha c(alpha)/(1+alpha).
///
/// A stalk started at distance x = alpha t/(1+alpha) to the left reaches the
/// origin with H(m, n), m = t/(1+alpha), n = alpha m, so it contributes
/// c(alpha) t/(1+alpha); the flat profile is the sup of all such stalks.  The
/// objective is 1/(1+alpha) for alpha >= alpha_c, so the search is capped there.
inline SpeedOptimum flat_speed_optimum(const DisorderModel& model)
{
    detail::require_nondegenerate(model);
    const auto cv = critical_values(model);
    const double cap = std::isfinite(cv.alpha_c) ? cv.alpha_c : 1e6;
    auto objective = [&](double alpha) { return time_constant(model, alpha) / (1.0 + alpha); };

    constexpr int kGrid = 64;
    const double lo = cap * 1e-6;
    std::vector<double> grid(kGrid);
    std::vector<double> values(kGrid);
    for (int k = 0; k < kGrid; ++k) {
        grid[k] = lo * std::pow(cap / lo, k / static_cast<double>(kGrid - 1));
        values[k] = objective(grid[k]);
    }
    const auto best = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
    SpeedOptimum opt{values[best], grid[best]};
    const double left = grid[std::max(0, best - 1)];
    const double right = grid[std::min(kGrid - 1, best + 1)];
    const double refined = golden_max(objective, left, right, 1e-6 * std::max(1.0, right));
    const double refined_value = objective(refined);
    if (refined_value > opt.speed)
        opt = {refined_value, refined};
    // c(alpha) -> b as alpha -> 0.
    if (model.edge() >= opt.speed)
        opt = {model.edge(), 0.0};
    return opt;
}

inline double flat_speed(const DisorderModel& model)
{
    return flat_speed_optimum(model).speed;
}

} // namespace odb

#endif // ODB_LIMITS_HPP
