#ifndef ODB_PATHS_HPP
#define ODB_PATHS_HPP

// Longest increasing paths in inhomogeneous Bernoulli matrices.
//
// An m x n matrix has rows numbered 1..m from the bottom and columns 1..n;
// entry a(i,j) is 1 with probability p_j.  An increasing path is a sequence
// of 1s with nondecreasing column and strictly increasing row; H(m,n) is the
// length of the longest one.  It satisfies the last-passage recursion
//
//   H(i,j) = max(H(i,j-1), H(i-1,j) + a(i,j)),   H(0,.) = H(.,0) = 0.
//
// Entries are drawn from the MatrixNoise stream keyed by (column j, row i,
// trial), the same coins the stalk growth run uses.

#include "odb/cdf.hpp"
#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/growth.hpp"
#include "odb/numeric.hpp"
#include "odb/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace odb {

class BernoulliMatrix {
public:
    BernoulliMatrix(int rows, int cols) : rows_(rows), cols_(cols)
    {
        if (rows <= 0 || cols <= 0)
            throw DomainError("matrix dimensions must be positive");
        bits_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    /// Entry at row i (1 = bottom) and column j, both 1-based.
    std::uint8_t operator()(int i, int j) const { return bits_[index(i, j)]; }
    void set(int i, int j, bool v) { bits_[index(i, j)] = v ? 1 : 0; }

private:
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j - 1);
    }

    int rows_;
    int cols_;
    std::vector<std::uint8_t> bits_;
};

inline std::vector<std::uint64_t> column_thresholds(std::span<const double> p)
{
    std::vector<std::uint64_t> t(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        t[j] = bernoulli_threshold(p[j]);
    return t;
}

inline BernoulliMatrix sample_matrix(const Environment& env, int m, std::uint64_t seed, std::uint64_t trial)
{
    const int n = static_cast<int>(env.size());
    BernoulliMatrix a(m, n);
    const CounterStream noise(seed, StreamTag::MatrixNoise, trial);
    const auto thr = column_thresholds(env.p);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            a.set(i, j, noise.word(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)) < thr[static_cast<std::size_t>(j - 1)]);
    return a;
}

/// H(m,n) by the last-passage recursion in O(mn) time and O(n) memory.
inline int longest_path(const BernoulliMatrix& a)
{
    std::vector<int> h(static_cast<std::size_t>(a.cols()) + 1, 0);
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            h[static_cast<std::size_t>(j)] = std::max(h[static_cast<std::size_t>(j - 1)], h[static_cast<std::size_t>(j)] + a(i, j));
    return h.back();
}

/// All H(i,j) for 0 <= i <= m, 0 <= j <= n, row-major with stride n+1.
inline std::vector<int> longest_path_table(const BernoulliMatrix& a)
{
    const auto stride = static_cast<std::size_t>(a.cols()) + 1;
    std::vector<int> h((static_cast<std::size_t>(a.rows()) + 1) * stride, 0);
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) {
            const auto ii = static_cast<std::size_t>(i);
            const auto jj = static_cast<std::size_t>(j);
            h[ii * stride + jj] = std::max(h[ii * stride + jj - 1], h[(ii - 1) * stride + jj] + a(i, j));
        }
    return h;
}

/// H(m,n) for the matrix of (env, seed, trial) without materializing it.
/// Identical to longest_path(sample_matrix(env, m, seed, trial)).
inline int sample_longest_path(std::span<const std::uint64_t> thresholds, int m, std::uint64_t seed, std::uint64_t trial)
{
    const std::size_t n = thresholds.size();
    const CounterStream noise(seed, StreamTag::MatrixNoise, trial);
    std::vector<int> h(n + 1, 0);
    std::vector<std::array<std::uint32_t, 4>> words(n + 1);
    for (int block = 0; 4 * block <= m; ++block) {
        for (std::size_t j = 1; j <= n; ++j)
            words[j] = noise.block(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(block));
        const int first = std::max(1, 4 * block);
        const int last = std::min(m, 4 * block + 3);
        for (int i = first; i <= last; ++i) {
            const auto lane = static_cast<std::size_t>(i & 3);
            for (std::size_t j = 1; j <= n; ++j)
                h[j] = std::max(h[j - 1], h[j] + static_cast<int>(words[j][lane] < thresholds[j - 1]));
        }
    }
    return h[n];
}

/// Exact P(H <= h), h = 0..m, by enumerating all 2^(mn) matrices.
inline CdfTable brute_force_cdf(const Environment& env, int m)
{
    const int n = static_cast<int>(env.size());
    if (m <= 0 || n <= 0)
        throw DomainError("brute force needs m, n >= 1");
    if (m * n > 20)
        throw DomainError("brute force limited to m*n <= 20, got " + std::to_string(m * n));
    const int cells = m * n;
    std::vector<double> pmf(static_cast<std::size_t>(m) + 1, 0.0);
    BernoulliMatrix a(m, n);
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        double w = 1.0;
        for (int c = 0; c < cells; ++c) {
            const int i = c / n + 1;
            const int j = c % n + 1;
            const bool bit = (mask >> c) & 1u;
            a.set(i, j, bit);
            const double p = env.p[static_cast<std::size_t>(j - 1)];
            w *= bit ? p : 1.0 - p;
        }
        if (w != 0.0)
            pmf[static_cast<std::size_t>(longest_path(a))] += w;
    }
    CdfTable t;
    t.m = m;
    t.n = n;
    t.provenance = Provenance::BruteForce;
    CompensatedSum acc;
    for (double v : pmf) {
        acc += v;
        t.values.push_back(acc.value());
    }
    t.growth.assign(t.values.size(), 1.0);
    t.flagged.assign(t.values.size(), false);
    return t;
}

struct CouplingResult {
    bool holds = true;
    long checked = 0;
    // First violation, when holds is false.
    std::int64_t t = -1;
    std::int64_t x = -1;
    Height growth_height = 0;
    int path_length = 0;
};

/// Runs stalk ODB over the environment's sites and the DP over the same
/// coins, and checks h_t(x) = H(t-x, x+1) for 0 <= x < n, 1 <= t-x <= m.
inline CouplingResult coupling_check(const Environment& env, int m, std::uint64_t seed, std::uint64_t trial)
{
    const int n = static_cast<int>(env.size());
    const std::int64_t t_max = m + n - 1;
    const auto history = stalk_history(env.p, t_max, seed, trial);
    const auto table = longest_path_table(sample_matrix(env, m, seed, trial));
    const auto stride = static_cast<std::size_t>(n) + 1;

    CouplingResult res;
    for (std::int64_t t = 1; t <= t_max; ++t) {
        for (std::int64_t x = 0; x < n; ++x) {
            const std::int64_t i = t - x;
            if (i < 1 || i > m)
                continue;
            const Height lhs = history[static_cast<std::size_t>(t) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x)];
            const int rhs = table[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(x + 1)];
            ++res.checked;
            if (lhs != rhs) {
                res.holds = false;
                res.t = t;
                res.x = x;
                res.growth_height = lhs;
                res.path_length = rhs;
                return res;
            }
        }
    }
    return res;
}

} // namespace odb

#endif // ODB_PATHS_HPP
