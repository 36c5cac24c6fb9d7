#ifndef ODB_FREDHOLM_HPP
#define ODB_FREDHOLM_HPP

// Exact distribution of H(m,n) through P(H <= h) = det(I - K_h), with
//
//   K_h(j,k) = sum_{l>=0} (phi-/phi+)_{h+j+l+1} (phi+/phi-)_{-h-k-l-1},
//   phi+(z) = prod_j (1 + r_j z),   phi-(z) = (1 - 1/z)^{-m}.
//
// phi+/phi- = prod(1 + r_j z) (z-1)^m z^{-m} is a Laurent polynomial with
// support [-m, n]; its coefficients come from exact convolution.  phi-/phi+
// is expanded in the annulus 1 < |z| < 1/r_1 (1 inside the contour, every
// -1/r_j outside); its coefficients are trapezoid sums on |z| = R, i.e. a DFT,
// with R = sqrt(1/r_1).
//
// Finite rank: (phi+/phi-)_s = 0 for s < -m, so columns k >= m-h of K_h
// vanish and det(I - K_h) is the determinant of the leading (m-h) block,
// with the l-sum ending at l = m-h-1-k.
//
// Scaling: all coefficients are stored as c_k R^k, the Fourier coefficients
// of w -> f(R w) on the unit circle.  The kernel built from them is
// D K_h D^{-1} with D = diag(R^j), which has the same determinant.
//
// Precision: the kernel entries are O(1) sums of products of coefficients
// whose sizes are set by max |phi-/phi+| on the contour and by the l1 norm of
// the Laurent polynomial.  Both grow like ((R+1)/(R-1))^m and R -> 1 as
// p_1 -> 1/2, so double precision fails already for m of a few tens.  The
// arithmetic type is therefore a binary float whose width is picked from
// those two norms (128 ... 2048 bits); wider requirements raise an alarm.

#include "odb/cdf.hpp"
#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/parallel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace odb {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using BinaryFloat = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

template <class T>
struct Complex {
    T re{};
    T im{};

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const T& s) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        const T den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
};

template <class T>
Complex<T> ipow(Complex<T> base, unsigned e)
{
    Complex<T> acc{T(1), T(0)};
    while (e) {
        if (e & 1u)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// e^{-2 pi i k / size} for k in [0, size), from two short tables so every
/// entry carries at most two roundings.
template <class T>
std::vector<Complex<T>> unit_roots(std::size_t size)
{
    using std::cos;
    using std::sin;
    std::size_t stride = 1;
    while (stride * stride < size)
        stride *= 2;
    const T two_pi = 2 * boost::math::constants::pi<T>();
    const T step = two_pi / T(static_cast<double>(size));
    std::vector<Complex<T>> fine(stride);
    std::vector<Complex<T>> coarse(size / stride + 1);
    for (std::size_t k = 0; k < fine.size(); ++k) {
        const T a = step * T(static_cast<double>(k));
        fine[k] = {cos(a), -sin(a)};
    }
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        const T a = step * T(static_cast<double>(k * stride));
        coarse[k] = {cos(a), -sin(a)};
    }
    std::vector<Complex<T>> roots(size);
    for (std::size_t k = 0; k < size; ++k)
        roots[k] = coarse[k / stride] * fine[k % stride];
    return roots;
}

/// In-place radix-2 forward DFT: X_k = sum_t x_t e^{-2 pi i t k / N}.
template <class T>
void fft_forward(std::vector<Complex<T>>& x, const std::vector<Complex<T>>& roots)
{
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex<T> w = roots[k * step];
                const Complex<T> u = x[start + k];
                const Complex<T> v = x[start + k + len / 2] * w;
                x[start + k] = u + v;
                x[start + k + len / 2] = u - v;
            }
        }
    }
}

/// Contour radius: geometric mean of the annulus bounds 1 and 1/r_1.
inline double default_contour_radius(const Environment& env)
{
    if (env.size() == 0)
        return 2.0;
    const double r1 = env.r.front();
    if (!(r1 < 1.0))
        throw NumericalAlarm("empty annulus: r_1 = " + std::to_string(r1) + " >= 1 (p_1 >= 1/2); a circular contour cannot separate 1 from -1/r_1");
    if (r1 < 1.0 / 16.0)
        return 4.0;
    return std::sqrt(1.0 / r1);
}

/// Coefficients of phi+/phi- scaled by R^s, for s = -m..n (element s+m).
/// With radius 1 these are the raw Laurent coefficients.
template <class T = double>
std::vector<T> laurent_plus_over_minus(const Environment& env, int m, double radius = 1.0)
{
    if (m < 0)
        throw DomainError("m must be nonnegative");
    const int n = static_cast<int>(env.size());
    const T R(radius);
    std::vector<T> poly(static_cast<std::size_t>(n) + 1, T(0));
    poly[0] = T(1);
    for (int j = 0; j < n; ++j) {
        const T c = T(env.r[static_cast<std::size_t>(j)]) * R;
        for (int k = j + 1; k >= 1; --k)
            poly[static_cast<std::size_t>(k)] += c * poly[static_cast<std::size_t>(k - 1)];
    }
    // (1 - 1/(R w))^m = sum_i C(m,i) (-1/R)^i w^{-i}
    std::vector<T> binom(static_cast<std::size_t>(m) + 1);
    binom[0] = T(1);
    for (int i = 1; i <= m; ++i)
        binom[static_cast<std::size_t>(i)] = -binom[static_cast<std::size_t>(i - 1)] * T(m - i + 1) / (T(i) * R);
    std::vector<T> out(static_cast<std::size_t>(m + n) + 1, T(0));
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= m; ++i)
            out[static_cast<std::size_t>(k - i + m)] += poly[static_cast<std::size_t>(k)] * binom[static_cast<std::size_t>(i)];
    return out;
}

/// Coefficients (phi-/phi+)_k R^k for k in [lo, hi], by the trapezoid rule on |z| = R.
template <class T = double>
struct SeriesCoefficients {
    int lo = 0;
    int hi = 0;
    double radius = 1.0;
    std::size_t resolution = 0;
    /// Largest coefficient change at the last resolution doubling.
    double last_change = 0.0;
    std::vector<T> values;

    const T& at(int k) const
    {
        if (k < lo || k > hi)
            throw DomainError("coefficient index " + std::to_string(k) + " outside window");
        return values[static_cast<std::size_t>(k - lo)];
    }
};

namespace detail {

    template <class T>
    std::vector<T> trapezoid_coefficients(const Environment& env, int m, int lo, int hi, double radius, std::size_t size)
    {
        const auto roots = unit_roots<T>(size);
        const T R(radius);
        std::vector<T> r(env.size());
        for (std::size_t j = 0; j < env.size(); ++j)
            r[j] = T(env.r[j]);
        std::vector<Complex<T>> samples(size);
        for (std::size_t t = 0; t < size; ++t) {
            // z = R e^{+2 pi i t/size} = R conj(roots[t])
            const Complex<T> z{roots[t].re * R, -roots[t].im * R};
            Complex<T> denom{T(1), T(0)};
            for (const T& rj : r)
                denom = denom * Complex<T>{T(1) + rj * z.re, rj * z.im};
            const Complex<T> ratio = z / Complex<T>{z.re - T(1), z.im};
            samples[t] = ipow(ratio, static_cast<unsigned>(m)) / denom;
        }
        fft_forward(samples, roots);
        const T inv = T(1) / T(static_cast<double>(size));
        std::vector<T> out(static_cast<std::size_t>(hi - lo) + 1);
        const auto N = static_cast<long long>(size);
        for (int k = lo; k <= hi; ++k) {
            const auto idx = static_cast<std::size_t>(((k % N) + N) % N);
            out[static_cast<std::size_t>(k - lo)] = samples[idx].re * inv;
        }
        return out;
    }

    template <class T>
    double max_abs_difference(const std::vector<T>& a, const std::vector<T>& b)
    {
        T best(0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            using std::abs;
            const T d = abs(a[i] - b[i]);
            if (d > best)
                best = d;
        }
        return static_cast<double>(best);
    }

} // namespace detail

inline constexpr std::size_t kInitialResolution = 4096;
inline constexpr std::size_t kMaxResolution = std::size_t{1} << 22;

/// Resolution doubles from 2^12 until two successive coefficient sets differ by at
/// most `tolerance` (absolute, in scaled units).
template <class T = double>
SeriesCoefficients<T> series_minus_over_plus(const Environment& env, int m, int lo, int hi, double radius, double tolerance)
{
    if (hi < lo)
        throw DomainError("empty coefficient window");
    SeriesCoefficients<T> out;
    out.lo = lo;
    out.hi = hi;
    out.radius = radius;
    std::size_t size = kInitialResolution;
    while (size < 2 * static_cast<std::size_t>(std::max(std::abs(lo), std::abs(hi)) + 1))
        size *= 2;
    auto previous = detail::trapezoid_coefficients<T>(env, m, lo, hi, radius, size);
    for (;;) {
        size *= 2;
        if (size > kMaxResolution)
            throw NumericalAlarm("contour resolution exceeded 2^22 without convergence");
        auto current = detail::trapezoid_coefficients<T>(env, m, lo, hi, radius, size);
        const double change = detail::max_abs_difference(previous, current);
        previous = std::move(current);
        if (change <= tolerance) {
            out.last_change = change;
            out.resolution = size;
            break;
        }
    }
    out.values = std::move(previous);
    return out;
}

/// Default-radius overload with a 1e-10 relative-to-maximum agreement rule.
template <class T = double>
SeriesCoefficients<T> series_minus_over_plus(const Environment& env, int m, int lo, int hi)
{
    const double radius = default_contour_radius(env);
    // Scale of the coefficients: sup of |phi-/phi+| on the contour bounds every one of them.
    double log_max = -kInf;
    for (int t = 0; t < 4096; ++t) {
        const double th = 2.0 * std::acos(-1.0) * t / 4096.0;
        const double zr = radius * std::cos(th);
        const double zi = radius * std::sin(th);
        double lg = m * (std::log(std::hypot(zr, zi)) - std::log(std::hypot(zr - 1.0, zi)));
        for (double r : env.r)
            lg -= std::log(std::hypot(1.0 + r * zr, r * zi));
        log_max = std::max(log_max, lg);
    }
    return series_minus_over_plus<T>(env, m, lo, hi, radius, 1e-10 * std::exp(log_max));
}

template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
    T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Both coefficient families for one (environment, m), in scaled form.
template <class T>
struct CoefficientBank {
    int m = 0;
    int n = 0;
    double radius = 1.0;
    std::vector<T> plus_over_minus;         // index s in [-m, n] at s + m
    SeriesCoefficients<T> minus_over_plus;  // window [lo, hi]
    /// max_j |sum_s P_s M_{j-s} - delta_{j0}| over the checkable part of the window.
    double reciprocal_defect = 0.0;

    T plus(int s) const
    {
        if (s < -m || s > n)
            return T(0);
        return plus_over_minus[static_cast<std::size_t>(s + m)];
    }
    const T& minus(int k) const { return minus_over_plus.at(k); }
};

namespace detail {

    /// log2 of max |phi-/phi+| on |z| = R and of the l1 norm bound of the scaled Laurent polynomial.
    inline std::pair<double, double> cancellation_logs(const Environment& env, int m, double radius)
    {
        double log_max = -kInf;
        constexpr int kSamples = 8192;
        for (int t = 0; t < kSamples; ++t) {
            const double th = 2.0 * std::acos(-1.0) * t / kSamples;
            const double zr = radius * std::cos(th);
            const double zi = radius * std::sin(th);
            double lg = m * (std::log2(std::hypot(zr, zi)) - std::log2(std::hypot(zr - 1.0, zi)));
            for (double r : env.r)
                lg -= std::log2(std::hypot(1.0 + r * zr, r * zi));
            log_max = std::max(log_max, lg);
        }
        double log_l1 = m * std::log2(1.0 + 1.0 / radius);
        for (double r : env.r)
            log_l1 += std::log2(1.0 + r * radius);
        return {log_max, log_l1};
    }

} // namespace detail

/// Target absolute accuracy of the kernel entries is 2^-kKernelBits.
inline constexpr int kKernelBits = 64;

/// Working precision (bits) needed for (env, m).
inline unsigned required_precision_bits(const Environment& env, int m)
{
    const double radius = default_contour_radius(env);
    const auto [log_max, log_l1] = detail::cancellation_logs(env, m, radius);
    const double bits = std::max(0.0, log_max) + std::max(0.0, log_l1) + kKernelBits + 32;
    return static_cast<unsigned>(std::ceil(bits));
}

template <class T>
CoefficientBank<T> build_coefficient_bank(const Environment& env, int m, int lo, int hi)
{
    CoefficientBank<T> bank;
    bank.m = m;
    bank.n = static_cast<int>(env.size());
    bank.radius = default_contour_radius(env);
    bank.plus_over_minus = laurent_plus_over_minus<T>(env, m, bank.radius);
    double l1 = 0.0;
    for (const T& v : bank.plus_over_minus)
        l1 += std::abs(static_cast<double>(v));
    const double tolerance = std::ldexp(1.0, -kKernelBits) / (1.0 + l1);
    bank.minus_over_plus = series_minus_over_plus<T>(env, m, lo, hi, bank.radius, tolerance);

    // Reciprocal identity on the part of the window where every term is available.
    T worst(0);
    for (int j = lo + bank.n; j <= hi - m; ++j) {
        T acc(0);
        for (int s = -m; s <= bank.n; ++s)
            acc += bank.plus(s) * bank.minus(j - s);
        if (j == 0)
            acc -= T(1);
        using std::abs;
        if (abs(acc) > worst)
            worst = abs(acc);
    }
    bank.reciprocal_defect = static_cast<double>(worst);
    return bank;
}

/// The (m-h) x (m-h) block of K_h in scaled form (similar to K_h).  Empty for h >= m.
template <class T>
Matrix<T> kernel_matrix(const CoefficientBank<T>& bank, int h)
{
    const int d = bank.m - h;
    if (h < 0)
        throw DomainError("kernel index h must be nonnegative");
    if (d <= 0)
        return {};
    Matrix<T> k(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        for (int c = 0; c < d; ++c) {
            T acc(0);
            for (int l = 0; l <= d - 1 - c; ++l)
                acc += bank.minus(h + j + l + 1) * bank.plus(-(h + c + l + 1));
            k(static_cast<std::size_t>(j), static_cast<std::size_t>(c)) = acc;
        }
    return k;
}

template <class T>
struct Determinant {
    T value;
    /// max |U| / max |A| of the pivoted factorization.
    double growth = 1.0;
};

/// det(A) by Gaussian elimination with partial pivoting.
template <class T>
Determinant<T> pivoted_determinant(Matrix<T> a)
{
    using std::abs;
    const std::size_t n = a.rows;
    Determinant<T> out{T(1), 1.0};
    if (n == 0)
        return out;
    T max_in(0);
    for (const T& v : a.data)
        if (abs(v) > max_in)
            max_in = abs(v);
    T max_seen = max_in;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (abs(a(i, col)) > abs(a(piv, col)))
                piv = i;
        if (a(piv, col) == T(0)) {
            out.value = T(0);
            return out;
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(piv, j), a(col, j));
            out.value = -out.value;
        }
        const T pivot = a(col, col);
        out.value *= pivot;
        for (std::size_t i = col + 1; i < n; ++i) {
            const T f = a(i, col) / pivot;
            if (f == T(0))
                continue;
            for (std::size_t j = col + 1; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                if (abs(a(i, j)) > max_seen)
                    max_seen = abs(a(i, j));
            }
        }
    }
    if (max_in > T(0))
        out.growth = static_cast<double>(max_seen / max_in);
    return out;
}

inline constexpr double kGrowthAlarm = 1e8;
inline constexpr double kCdfTolerance = 1e-8;
inline constexpr int kMaxExactRows = 500;

struct ExactCdfReport {
    CdfTable table;
    unsigned precision_bits = 0;
    std::size_t resolution = 0;
    double radius = 0.0;
    double reciprocal_defect = 0.0;
    double max_growth = 1.0;
};

namespace detail {

    template <class Fn>
    auto with_precision(unsigned bits, Fn&& fn)
    {
        if (bits <= 128)
            return fn.template operator()<BinaryFloat<128>>();
        if (bits <= 256)
            return fn.template operator()<BinaryFloat<256>>();
        if (bits <= 512)
            return fn.template operator()<BinaryFloat<512>>();
        if (bits <= 1024)
            return fn.template operator()<BinaryFloat<1024>>();
        if (bits <= 2048)
            return fn.template operator()<BinaryFloat<2048>>();
        throw NumericalAlarm("exact CDF needs " + std::to_string(bits) + " bits of working precision (limit 2048)");
    }

    template <class T>
    ExactCdfReport exact_cdf_with(const Environment& env, int m, unsigned workers)
    {
        const int n = static_cast<int>(env.size());
        // Window: kernel needs 1..2m-1; the extra low indices let the
        // reciprocal identity be checked around j = 0.
        const auto bank = build_coefficient_bank<T>(env, m, -n - 1, 2 * m);
        if (!(bank.reciprocal_defect <= kCdfTolerance))
            throw NumericalAlarm("reciprocal identity defect " + std::to_string(bank.reciprocal_defect) + " exceeds 1e-8");

        ExactCdfReport rep;
        rep.radius = bank.radius;
        rep.resolution = bank.minus_over_plus.resolution;
        rep.reciprocal_defect = bank.reciprocal_defect;
        rep.precision_bits = std::numeric_limits<T>::digits;
        auto& table = rep.table;
        table.m = m;
        table.n = n;
        table.provenance = Provenance::Determinant;
        table.values.assign(static_cast<std::size_t>(m) + 1, 1.0);
        table.growth.assign(static_cast<std::size_t>(m) + 1, 1.0);
        table.flagged.assign(static_cast<std::size_t>(m) + 1, false);
        std::vector<char> flags(static_cast<std::size_t>(m) + 1, 0);

        parallel_for(static_cast<std::size_t>(m), workers, [&](std::size_t hi) {
            const int h = static_cast<int>(hi);
            Matrix<T> a = kernel_matrix(bank, h);
            for (T& v : a.data)
                v = -v;
            for (std::size_t i = 0; i < a.rows; ++i)
                a(i, i) += T(1);
            const auto det = pivoted_determinant(std::move(a));
            table.values[hi] = static_cast<double>(det.value);
            table.growth[hi] = det.growth;
            flags[hi] = det.growth > kGrowthAlarm ? 1 : 0;
        });
        for (std::size_t h = 0; h < flags.size(); ++h)
            table.flagged[h] = flags[h] != 0;

        for (std::size_t h = 0; h < table.values.size(); ++h) {
            const double v = table.values[h];
            if (!(v >= -kCdfTolerance && v <= 1.0 + kCdfTolerance))
                throw NumericalAlarm("P(H <= " + std::to_string(h) + ") = " + std::to_string(v) + " outside [0,1]");
            if (h > 0 && v < table.values[h - 1] - kCdfTolerance)
                throw NumericalAlarm("determinant CDF decreases at h = " + std::to_string(h));
        }
        for (double& v : table.values)
            v = std::clamp(v, 0.0, 1.0);
        rep.max_growth = *std::max_element(table.growth.begin(), table.growth.end());
        return rep;
    }

} // namespace detail

/// P(H <= h), h = 0..m, from the Fredholm determinants, with diagnostics.
/// `min_bits` raises the working precision above the automatic choice.
inline ExactCdfReport exact_cdf_report(const Environment& env, int m, unsigned workers = 1, unsigned min_bits = 0)
{
    if (m < 1)
        throw DomainError("exact CDF needs m >= 1");
    if (m > kMaxExactRows)
        throw DomainError("exact CDF is limited to m <= 500; use Monte Carlo beyond");
    const unsigned bits = std::max(required_precision_bits(env, m), min_bits);
    return detail::with_precision(bits, [&]<class T>() { return detail::exact_cdf_with<T>(env, m, workers); });
}

inline CdfTable exact_cdf(const Environment& env, int m, unsigned workers = 1)
{
    return exact_cdf_report(env, m, workers).table;
}

} // namespace odb

#endif // ODB_FREDHOLM_HPP
