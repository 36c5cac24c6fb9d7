#ifndef ODB_STATS_HPP
#define ODB_STATS_HPP

#include "odb/error.hpp"
#include "odb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace odb {

inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// sup |F_N - F| over the sample, checking both sides of every jump.
template <class Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& reference)
{
    if (sorted.empty())
        throw DomainError("KS distance of an empty sample");
    if (!std::is_sorted(sorted.begin(), sorted.end()))
        throw DomainError("KS distance needs a sorted sample");
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = reference(sorted[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

/// Least squares line through (log t, log v).
inline LineFit fit_loglog(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 5)
        throw DomainError("log-log fit needs at least 5 points, got " + std::to_string(points.size()));
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [t, v] : points) {
        if (!(t > 0.0) || !(v > 0.0))
            throw DomainError("log-log fit needs positive abscissae and values");
        x.push_back(std::log(t));
        y.push_back(std::log(v));
    }
    const auto n = static_cast<double>(x.size());
    CompensatedSum sx;
    CompensatedSum sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    CompensatedSum sxx;
    CompensatedSum sxy;
    CompensatedSum syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx.value() > 0.0))
        throw DomainError("log-log fit needs at least two distinct abscissae");
    LineFit fit;
    fit.points = x.size();
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy.value() > 0.0 ? sxy.value() * sxy.value() / (sxx.value() * syy.value()) : 1.0;
    return fit;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

/// Two-pass mean and variance, summed in the given order.
inline Moments sample_moments(std::span<const double> v)
{
    Moments out;
    if (v.empty())
        return out;
    CompensatedSum s;
    for (double x : v)
        s += x;
    out.mean = s.value() / static_cast<double>(v.size());
    if (v.size() < 2)
        return out;
    CompensatedSum ss;
    for (double x : v)
        ss += (x - out.mean) * (x - out.mean);
    out.variance = ss.value() / static_cast<double>(v.size() - 1);
    return out;
}

/// Median of a sorted sample.
inline double sorted_median(std::span<const double> sorted)
{
    if (sorted.empty())
        throw DomainError("median of an empty sample");
    const std::size_t k = sorted.size() / 2;
    return sorted.size() % 2 ? sorted[k] : 0.5 * (sorted[k - 1] + sorted[k]);
}

} // namespace odb

#endif // ODB_STATS_HPP
