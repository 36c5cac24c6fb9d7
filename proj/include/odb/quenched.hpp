#ifndef ODB_QUENCHED_HPP
#define ODB_QUENCHED_HPP

// Saddle-point constants of a fixed environment.
//
// u_n is the root in (-1/r_1, 0) of
//     (alpha/n) sum_j r_j/(1 + r_j u)^2 = 1/(u - 1)^2,
// and c_n = c(u_n) with
//     c(u) = 1/(1 - u) - (alpha/n) sum_j r_j u/(1 + r_j u).
// With sigma(z) = (alpha/n) sum log(1 + r_j z) + log(z - 1) + (c - 1) log z,
// the pair (u_n, c_n) is a double critical point: sigma'(u_n) = sigma''(u_n) = 0.
//
// The root is bracketed in delta = u + 1/r_1, for which
//     1 + r_j u = (r_1 - r_j)/r_1 + r_j delta
// stays accurate when u_n crowds the pole at -1/r_1.  Environments are sorted
// with r_j descending, so terms r_j/(1 + r_j u)^k decrease in j and a reverse
// sweep sums them in ascending magnitude.

#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/limits.hpp"
#include "odb/numeric.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace odb {

struct QuenchedConstants {
    bool exists = false;
    std::size_t n = 0;
    double alpha = 0.0;
    double u = std::numeric_limits<double>::quiet_NaN();
    /// u + 1/r_1, the distance of the saddle from the leading pole.
    double delta = std::numeric_limits<double>::quiet_NaN();
    double c = std::numeric_limits<double>::quiet_NaN();
    /// |sigma'(u_n)| and |sigma''(u_n)| at c = c_n.
    double sigma1_residual = std::numeric_limits<double>::quiet_NaN();
    double sigma2_residual = std::numeric_limits<double>::quiet_NaN();
    /// Residual of the saddle equation, LHS - RHS.
    double equation_residual = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

    /// 1 + r_j u for u = delta - 1/r_1.
    inline double shifted_factor(const Environment& env, std::size_t j, double delta)
    {
        const double r1 = env.r.front();
        return (r1 - env.r[j]) / r1 + env.r[j] * delta;
    }

    /// (alpha/n) sum r_j/(1+r_j u)^2 - 1/(u-1)^2 and its delta-derivative.
    inline std::pair<double, double> saddle_equation(const Environment& env, double alpha, double delta)
    {
        const std::size_t n = env.size();
        const double u = delta - 1.0 / env.r.front();
        CompensatedSum lhs;
        CompensatedSum dlhs;
        for (std::size_t j = n; j-- > 0;) {
            const double d = shifted_factor(env, j, delta);
            lhs += env.r[j] / (d * d);
            dlhs += env.r[j] * env.r[j] / (d * d * d);
        }
        const double scale = alpha / static_cast<double>(n);
        const double um1 = u - 1.0;
        const double value = scale * lhs.value() - 1.0 / (um1 * um1);
        const double slope = -2.0 * scale * dlhs.value() + 2.0 / (um1 * um1 * um1);
        return {value, slope};
    }

    inline double centering_at(const Environment& env, double alpha, double delta)
    {
        const std::size_t n = env.size();
        const double u = delta - 1.0 / env.r.front();
        CompensatedSum acc;
        for (std::size_t j = n; j-- > 0;)
            acc += env.r[j] * u / shifted_factor(env, j, delta);
        return 1.0 / (1.0 - u) - alpha / static_cast<double>(n) * acc.value();
    }

} // namespace detail

/// c(u) = 1/(1-u) - (alpha/n) sum r_j u/(1 + r_j u), summed in ascending magnitude.
inline double eval_cn(const Environment& env, double alpha, double u)
{
    const std::size_t n = env.size();
    std::vector<double> terms(n);
    for (std::size_t j = 0; j < n; ++j)
        terms[j] = env.r[j] * u / (1.0 + env.r[j] * u);
    return 1.0 / (1.0 - u) - alpha / static_cast<double>(n) * stable_sum(std::move(terms));
}

struct SigmaDerivatives {
    double first = 0.0;
    double second = 0.0;
};

inline constexpr double kPoleProximity = 1e-13;

/// sigma'(z) = (alpha/n) sum r_j/(1+r_j z) + 1/(z-1) + (c-1)/z and sigma''(z).
inline SigmaDerivatives sigma_derivatives(const Environment& env, double alpha, double c, double z)
{
    if (std::abs(z) < kPoleProximity || std::abs(z - 1.0) < kPoleProximity)
        throw DomainError("sigma derivatives evaluated at a pole (z = " + std::to_string(z) + ")");
    const std::size_t n = env.size();
    CompensatedSum s1;
    CompensatedSum s2;
    for (std::size_t j = n; j-- > 0;) {
        const double d = 1.0 + env.r[j] * z;
        if (env.r[j] > 0.0 && std::abs(z + 1.0 / env.r[j]) < kPoleProximity)
            throw DomainError("sigma derivatives evaluated at the pole -1/r_" + std::to_string(j + 1));
        s1 += env.r[j] / d;
        s2 += env.r[j] * env.r[j] / (d * d);
    }
    const double scale = alpha / static_cast<double>(n);
    SigmaDerivatives out;
    out.first = scale * s1.value() + 1.0 / (z - 1.0) + (c - 1.0) / z;
    out.second = -scale * s2.value() - 1.0 / ((z - 1.0) * (z - 1.0)) - (c - 1.0) / (z * z);
    return out;
}

/// Solves the saddle equation for u_n and evaluates c_n and the sigma residuals.
/// When the existence condition (alpha/n) sum r_j < 1 fails, or r_1 = 0,
/// the result has exists = false.
inline QuenchedConstants solve_un(const Environment& env, double alpha)
{
    if (!(alpha > 0.0))
        throw DomainError("alpha must be positive");
    QuenchedConstants qc;
    qc.n = env.size();
    qc.alpha = alpha;
    if (env.size() == 0 || !(env.r.front() > 0.0))
        return qc;
    CompensatedSum total;
    for (std::size_t j = env.size(); j-- > 0;)
        total += env.r[j];
    if (!(alpha / static_cast<double>(env.size()) * total.value() < 1.0))
        return qc;

    const double r1 = env.r.front();
    const double hi = 1.0 / r1;
    double lo = 1e-16 / r1;
    // The left side blows up at the pole; shrink the offset if it has not yet.
    for (int k = 0; k < 40 && detail::saddle_equation(env, alpha, lo).first <= 0.0; ++k)
        lo *= 1e-2;
    if (detail::saddle_equation(env, alpha, lo).first <= 0.0 || detail::saddle_equation(env, alpha, hi).first >= 0.0)
        throw NumericalAlarm("saddle equation bracket failure: f(lo) = " + std::to_string(detail::saddle_equation(env, alpha, lo).first)
                             + ", f(hi) = " + std::to_string(detail::saddle_equation(env, alpha, hi).first));

    // Bisect on a log scale first: the root can sit many decades below 1/r_1.
    double a = lo;
    double b = hi;
    while (b / a > 2.0) {
        const double mid = std::sqrt(a * b);
        if (detail::saddle_equation(env, alpha, mid).first > 0.0)
            a = mid;
        else
            b = mid;
    }
    double delta = bisect([&](double d) { return detail::saddle_equation(env, alpha, d).first; }, a, b, 1e-14 / r1);
    const auto [f, df] = detail::saddle_equation(env, alpha, delta);
    if (df != 0.0) {
        const double polished = delta - f / df;
        if (polished > a && polished < b && std::abs(detail::saddle_equation(env, alpha, polished).first) <= std::abs(f))
            delta = polished;
    }

    qc.exists = true;
    qc.delta = delta;
    qc.u = delta - 1.0 / r1;
    qc.c = detail::centering_at(env, alpha, delta);
    qc.equation_residual = detail::saddle_equation(env, alpha, delta).first;
    const auto sd = sigma_derivatives(env, alpha, qc.c, qc.u);
    qc.sigma1_residual = std::abs(sd.first);
    qc.sigma2_residual = std::abs(sd.second);
    return qc;
}

/// Asymptotic diagnostics of one environment in the composite regime:
/// sqrt(n)(u_n + 1/r_1)/beta and (c(alpha,F) - c_n)/(theta q_1), both -> 1.
struct SaddleAsymptotics {
    double pole_gap_ratio = 0.0;
    double centering_ratio = 0.0;
};

inline SaddleAsymptotics saddle_asymptotics(const Environment& env, const QuenchedConstants& qc, const LimitConstants& limits)
{
    if (!qc.exists)
        throw RegimeError("saddle root does not exist for this environment");
    SaddleAsymptotics s;
    s.pole_gap_ratio = std::sqrt(static_cast<double>(env.size())) * qc.delta / limits.beta;
    s.centering_ratio = (limits.c - qc.c) / (limits.theta * env.q.front());
    return s;
}

} // namespace odb

#endif // ODB_QUENCHED_HPP
