#ifndef ODB_NUMERIC_HPP
#define ODB_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace odb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Compensated sum of terms taken in ascending magnitude.
inline double stable_sum(std::vector<double> terms)
{
    std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    CompensatedSum s;
    for (double t : terms)
        s += t;
    return s.value();
}

/// Bisection for a function with f(lo) and f(hi) of opposite sign.
/// Stops when the bracket is narrower than `width` or cannot shrink further.
template <class F>
double bisect(F&& f, double lo, double hi, double width)
{
    double flo = f(lo);
    for (int it = 0; it < 2000 && hi - lo > width; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

/// Golden-section maximization on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace odb

#endif // ODB_NUMERIC_HPP
