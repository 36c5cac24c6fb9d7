#include "odb/paths.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace odb;

namespace {

// Literal definition: longest chain of 1s with nondecreasing column and
// strictly increasing row, by exhaustive recursion over the next entry.
int enumerate_paths(const BernoulliMatrix& a)
{
    std::function<int(int, int)> best_from = [&](int i, int j) {
        // longest path starting at a 1 in (i,j)
        int best = 0;
        for (int i2 = i + 1; i2 <= a.rows(); ++i2)
            for (int j2 = j; j2 <= a.cols(); ++j2)
                if (a(i2, j2))
                    best = std::max(best, best_from(i2, j2));
        return 1 + best;
    };
    int best = 0;
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a(i, j))
                best = std::max(best, best_from(i, j));
    return best;
}

BernoulliMatrix from_mask(int m, int n, std::uint32_t mask)
{
    BernoulliMatrix a(m, n);
    for (int c = 0; c < m * n; ++c)
        a.set(c / n + 1, c % n + 1, (mask >> c) & 1u);
    return a;
}

} // namespace

TEST(BernoulliMatrix, Validation)
{
    EXPECT_THROW(BernoulliMatrix(0, 3), DomainError);
    EXPECT_THROW(BernoulliMatrix(2, 0), DomainError);
}

TEST(LongestPath, Trivial)
{
    BernoulliMatrix z(4, 3);
    EXPECT_EQ(longest_path(z), 0);
    BernoulliMatrix o(4, 3);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 3; ++j)
            o.set(i, j, true);
    EXPECT_EQ(longest_path(o), 4);
    BernoulliMatrix d(2, 2);
    d.set(1, 1, true);
    d.set(2, 2, true);
    EXPECT_EQ(longest_path(d), 2);
    BernoulliMatrix anti(2, 2);
    anti.set(1, 2, true);
    anti.set(2, 1, true);
    EXPECT_EQ(longest_path(anti), 1);
}

TEST(LongestPath, ExhaustiveAgainstEnumerationUpToTwelveCells)
{
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; m * n <= 12; ++n)
            for (std::uint32_t mask = 0; mask < (1u << (m * n)); ++mask) {
                const auto a = from_mask(m, n, mask);
                ASSERT_EQ(longest_path(a), enumerate_paths(a)) << m << "x" << n << " mask " << mask;
            }
}

TEST(LongestPath, RandomAgainstEnumerationUpToTwentyCells)
{
    std::mt19937_64 g(5);
    for (int rep = 0; rep < 400; ++rep) {
        const int m = 1 + static_cast<int>(g() % 5);
        const int n = 1 + static_cast<int>(g() % (20 / m));
        const auto a = from_mask(m, n, static_cast<std::uint32_t>(g()) & ((1u << (m * n)) - 1));
        ASSERT_EQ(longest_path(a), enumerate_paths(a));
    }
}

TEST(LongestPath, MonotoneUnderFlips)
{
    std::mt19937_64 g(6);
    for (int rep = 0; rep < 500; ++rep) {
        const int m = 6, n = 7;
        BernoulliMatrix a(m, n);
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= n; ++j)
                a.set(i, j, g() % 3 == 0);
        const int i = 1 + static_cast<int>(g() % m);
        const int j = 1 + static_cast<int>(g() % n);
        if (a(i, j))
            continue;
        const int before = longest_path(a);
        a.set(i, j, true);
        ASSERT_GE(longest_path(a), before);
    }
}

TEST(LongestPath, BoundedByNonzeroRows)
{
    std::mt19937_64 g(7);
    for (int rep = 0; rep < 200; ++rep) {
        BernoulliMatrix a(8, 5);
        int rows = 0;
        for (int i = 1; i <= 8; ++i) {
            bool any = false;
            for (int j = 1; j <= 5; ++j) {
                const bool v = g() % 4 == 0;
                a.set(i, j, v);
                any |= v;
            }
            rows += any;
        }
        const int h = longest_path(a);
        ASSERT_GE(h, 0);
        ASSERT_LE(h, rows);
    }
}

TEST(LongestPath, TableCornerMatches)
{
    const auto env = make_environment({0.3, 0.2, 0.45, 0.1}, 0.5);
    const auto a = sample_matrix(env, 9, 3, 1);
    const auto t = longest_path_table(a);
    EXPECT_EQ(t.back(), longest_path(a));
}

TEST(SampleMatrix, DegenerateRates)
{
    const auto z = sample_matrix(make_environment({0.0, 0.0, 0.0}, 0.5), 5, 1, 0);
    const auto o = sample_matrix(make_environment({1.0, 1.0}, 1.0), 5, 1, 0);
    for (int i = 1; i <= 5; ++i) {
        for (int j = 1; j <= 3; ++j)
            EXPECT_EQ(z(i, j), 0);
        for (int j = 1; j <= 2; ++j)
            EXPECT_EQ(o(i, j), 1);
    }
}

TEST(SampleMatrix, ColumnMeans)
{
    const auto env = make_environment({0.45, 0.25, 0.05}, 0.5);
    const int m = 100000;
    const auto a = sample_matrix(env, m, 12, 0);
    for (int j = 1; j <= 3; ++j) {
        int s = 0;
        for (int i = 1; i <= m; ++i)
            s += a(i, j);
        const double p = env.p[static_cast<std::size_t>(j - 1)];
        EXPECT_NEAR(s / double(m), p, 3 * std::sqrt(p * (1 - p) / m)) << j;
    }
}

TEST(SampleLongestPath, StreamedEqualsMaterialized)
{
    const auto model = make_power_edge(3.0);
    for (int m : {1, 2, 3, 4, 5, 7, 8, 13, 40}) {
        const auto env = sample_environment(model, 17, 9, static_cast<std::uint64_t>(m));
        const auto thr = column_thresholds(env.p);
        for (std::uint64_t trial = 0; trial < 5; ++trial)
            ASSERT_EQ(sample_longest_path(thr, m, 31, trial), longest_path(sample_matrix(env, m, 31, trial))) << m;
    }
}

TEST(BruteForce, SingleCell)
{
    const auto t = brute_force_cdf(make_environment({0.3}, 0.5), 1);
    EXPECT_NEAR(t.values[0], 0.7, 1e-15);
    EXPECT_NEAR(t.values[1], 1.0, 1e-15);
    EXPECT_EQ(t.provenance, Provenance::BruteForce);
}

TEST(BruteForce, TwoByTwoZeroProbability)
{
    const auto t = brute_force_cdf(make_environment({0.5, 0.5}, 0.5), 2);
    EXPECT_NEAR(t.values[0], 1.0 / 16.0, 1e-15);
    EXPECT_NEAR(t.values[2], 1.0, 1e-12);
}

TEST(BruteForce, MonotoneEndsAtOneAndGuard)
{
    const auto t = brute_force_cdf(make_environment({0.4, 0.15, 0.3, 0.05}, 0.5), 4);
    for (std::size_t h = 1; h < t.values.size(); ++h)
        EXPECT_GE(t.values[h], t.values[h - 1]);
    EXPECT_NEAR(t.values.back(), 1.0, 1e-12);
    EXPECT_THROW(brute_force_cdf(make_environment({0.1, 0.2, 0.3}, 0.5), 7), DomainError);
    EXPECT_THROW(brute_force_cdf(make_environment({0.1}, 0.5), 0), DomainError);
}

TEST(Coupling, DegenerateRates)
{
    EXPECT_TRUE(coupling_check(make_environment(std::vector<double>(6, 1.0), 1.0), 7, 1, 0).holds);
    EXPECT_TRUE(coupling_check(make_environment(std::vector<double>(6, 0.0), 0.5), 7, 1, 0).holds);
}

TEST(Coupling, RandomInstances)
{
    const auto model = make_power_edge(1.0);
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto env = sample_environment(model, 1 + k % 13, 4, k);
        const auto r = coupling_check(env, 1 + static_cast<int>(k % 11), 5, k);
        ASSERT_TRUE(r.holds) << "t=" << r.t << " x=" << r.x;
        ASSERT_GT(r.checked, 0);
    }
}
