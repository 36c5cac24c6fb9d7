#include "odb/growth.hpp"
#include "odb/paths.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace odb;

namespace {

std::vector<std::uint8_t> ones(std::size_t n) { return std::vector<std::uint8_t>(n, 1); }
std::vector<std::uint8_t> zeros(std::size_t n) { return std::vector<std::uint8_t>(n, 0); }

std::vector<std::uint8_t> random_row(std::mt19937_64& g, std::size_t n)
{
    std::vector<std::uint8_t> r(n);
    for (auto& v : r)
        v = static_cast<std::uint8_t>(g() & 1);
    return r;
}

} // namespace

TEST(StepOdb, AllCoinsIncrementFlatProfile)
{
    const auto p = flat_ring(8);
    const std::vector<double> rates(8, 0.5);
    const auto next = step_odb(p, rates, ones(8));
    for (auto h : next.heights)
        EXPECT_EQ(h, 1);
    EXPECT_EQ(next.time, 1);
}

TEST(StepOdb, StalkAdoptsFromLeft)
{
    const auto p = stalk_profile(4);
    const std::vector<double> rates(4, 0.5);
    for (const auto& row : {zeros(4), ones(4)}) {
        const auto next = step_odb(p, rates, row);
        EXPECT_EQ(next.heights[0], row[0] ? 1 : 0);
        EXPECT_EQ(next.heights[1], 0);
        EXPECT_EQ(next.heights[2], kNegInf);
    }
    // h_1(1) = max(h_0(0), -inf) = 0 regardless of eps at site 1
    auto r = zeros(4);
    r[1] = 1;
    EXPECT_EQ(step_odb(p, rates, r).heights[1], 0);
}

TEST(StepOdb, DimensionMismatch)
{
    const auto p = flat_ring(4);
    const std::vector<double> rates(3, 0.5);
    EXPECT_THROW(step_odb(p, rates, ones(4)), DomainError);
    const std::vector<double> rates4(4, 0.5);
    EXPECT_THROW(step_odb(p, rates4, ones(5)), DomainError);
    EXPECT_THROW(step_db(p, rates4, ones(3)), DomainError);
}

TEST(StepOdb, RingWrapsLeftNeighbour)
{
    auto p = flat_ring(5);
    p.heights[4] = 7;
    const std::vector<double> rates(5, 0.5);
    const auto next = step_odb(p, rates, zeros(5));
    EXPECT_EQ(next.heights[0], 7);
    EXPECT_EQ(next.heights[4], 7);
    EXPECT_EQ(next.heights[1], 0);
}

TEST(StepDb, BothNeighboursAdopt)
{
    auto p = flat_ring(6);
    p.heights[0] = 1;
    const std::vector<double> rates(6, 0.5);
    const auto next = step_db(p, rates, zeros(6));
    EXPECT_EQ(next.heights[1], 1);
    EXPECT_EQ(next.heights[5], 1);
    EXPECT_EQ(next.heights[0], 1);
    EXPECT_EQ(next.heights[2], 0);
    const auto up = step_db(flat_ring(6), rates, ones(6));
    for (auto h : up.heights)
        EXPECT_EQ(h, 1);
}

TEST(Growth, MonotoneCoupling)
{
    std::mt19937_64 g(1);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t w = 12;
        auto a = flat_ring(w);
        auto b = flat_ring(w);
        for (std::size_t x = 0; x < w; ++x) {
            a.heights[x] = static_cast<Height>(g() % 5);
            b.heights[x] = a.heights[x] + static_cast<Height>(g() % 3);
        }
        const std::vector<double> rates(w, 0.5);
        for (int t = 0; t < 30; ++t) {
            const auto row = random_row(g, w);
            const bool two = rep % 2;
            a = two ? step_db(a, rates, row) : step_odb(a, rates, row);
            b = two ? step_db(b, rates, row) : step_odb(b, rates, row);
            for (std::size_t x = 0; x < w; ++x)
                ASSERT_LE(a.heights[x], b.heights[x]);
        }
    }
}

TEST(Growth, SupCoupling)
{
    std::mt19937_64 g(2);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t w = 10;
        auto a = flat_ring(w);
        auto b = flat_ring(w);
        for (std::size_t x = 0; x < w; ++x) {
            a.heights[x] = (g() % 4 == 0) ? kNegInf : static_cast<Height>(g() % 6);
            b.heights[x] = (g() % 4 == 0) ? kNegInf : static_cast<Height>(g() % 6);
        }
        auto s = a;
        for (std::size_t x = 0; x < w; ++x)
            s.heights[x] = std::max(a.heights[x], b.heights[x]);
        const std::vector<double> rates(w, 0.5);
        for (int t = 0; t < 25; ++t) {
            const auto row = random_row(g, w);
            a = step_odb(a, rates, row);
            b = step_odb(b, rates, row);
            s = step_odb(s, rates, row);
            for (std::size_t x = 0; x < w; ++x)
                ASSERT_EQ(s.heights[x], std::max(a.heights[x], b.heights[x]));
        }
    }
}

TEST(Growth, HeightsNeverDecreaseAndSpreadBounded)
{
    std::mt19937_64 g(3);
    const std::size_t w = 20;
    auto p = flat_ring(w);
    const std::vector<double> rates(w, 0.3);
    for (int t = 0; t < 200; ++t) {
        const auto next = step_odb(p, rates, random_row(g, w));
        for (std::size_t x = 0; x < w; ++x)
            ASSERT_GE(next.heights[x], p.heights[x]);
        const auto [lo, hi] = std::minmax_element(next.heights.begin(), next.heights.end());
        ASSERT_LE(*hi - *lo, t + 1);
        p = next;
    }
}

TEST(RunStalk, InitialState)
{
    const std::vector<double> rates(5, 0.4);
    const std::vector<Checkpoint> cps{{0, 0}, {0, 1}};
    const auto tr = run_stalk(rates, 0, 1, 0, cps);
    EXPECT_EQ(tr[0].h, 0);
    EXPECT_EQ(tr[1].h, kNegInf);
}

TEST(RunStalk, ZeroRatesSpreadZero)
{
    const std::vector<double> rates(8, 0.0);
    std::vector<Checkpoint> cps;
    for (std::int64_t t = 0; t <= 12; ++t)
        for (std::int64_t x = 0; x < 8; ++x)
            cps.push_back({t, x});
    for (const auto& p : run_stalk(rates, 12, 5, 0, cps))
        EXPECT_EQ(p.h, p.x <= p.t ? 0 : kNegInf) << p.t << "," << p.x;
}

TEST(RunStalk, OneRatesGiveTMinusX)
{
    const std::vector<double> rates(6, 1.0);
    std::vector<Checkpoint> cps;
    for (std::int64_t t = 0; t <= 9; ++t)
        for (std::int64_t x = 0; x < 6; ++x)
            cps.push_back({t, x});
    for (const auto& p : run_stalk(rates, 9, 5, 0, cps))
        EXPECT_EQ(p.h, p.x <= p.t ? p.t - p.x : kNegInf);
}

TEST(RunStalk, LightConeAndOutOfRange)
{
    const std::vector<double> rates(10, 0.5);
    const std::vector<Checkpoint> cps{{3, 4}, {3, 3}, {50, 0}, {2, 20}, {-1, 0}};
    const auto tr = run_stalk(rates, 5, 9, 0, cps);
    EXPECT_EQ(tr[0].h, kNegInf);
    EXPECT_NE(tr[1].h, kNegInf);
    EXPECT_EQ(tr[2].h, kNegInf);
    EXPECT_EQ(tr[3].h, kNegInf);
    EXPECT_EQ(tr[4].h, kNegInf);
    EXPECT_THROW(run_stalk(rates, -1, 9, 0, cps), DomainError);
}

TEST(RunStalk, MatchesStepHistory)
{
    const std::vector<double> rates{0.4, 0.1, 0.3, 0.45, 0.2, 0.05, 0.35};
    const std::int64_t t_max = 15;
    const auto hist = stalk_history(rates, t_max, 77, 3);
    std::vector<Checkpoint> cps;
    for (std::int64_t t = 0; t <= t_max; ++t)
        for (std::int64_t x = 0; x < 7; ++x)
            cps.push_back({t, x});
    const auto tr = run_stalk(rates, t_max, 77, 3, cps);
    for (std::size_t k = 0; k < cps.size(); ++k)
        EXPECT_EQ(tr[k].h, hist[static_cast<std::size_t>(cps[k].t) * 7 + static_cast<std::size_t>(cps[k].x)]);
}

TEST(Checkpoints, Geometric)
{
    const auto ts = geometric_checkpoints(10000);
    EXPECT_EQ(ts.back(), 10000);
    EXPECT_EQ(ts.front(), 1);
    EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
    EXPECT_NE(std::find(ts.begin(), ts.end(), 5000), ts.end());
    EXPECT_NE(std::find(ts.begin(), ts.end(), 2500), ts.end());
    EXPECT_NE(std::find(ts.begin(), ts.end(), 1250), ts.end());
    EXPECT_NE(std::find(ts.begin(), ts.end(), 625), ts.end());
    EXPECT_NE(std::find(ts.begin(), ts.end(), 313), ts.end());
}

TEST(Checkpoints, Dense)
{
    const auto ts = dense_checkpoints(10000, 20);
    EXPECT_EQ(ts.front(), 1);
    EXPECT_EQ(ts.back(), 10000);
    EXPECT_TRUE(std::adjacent_find(ts.begin(), ts.end()) == ts.end());
    EXPECT_GE(ts.size(), 70u);
}

TEST(FlatRing, RateOneIsDeterministic)
{
    const std::vector<double> rates(10, 1.0);
    const auto s = run_flat_ring(rates, Dynamics::Oriented, {0, 1, 5, 17}, 3, 4, 1);
    for (const auto& series : s.series)
        EXPECT_EQ(series, (std::vector<Height>{0, 1, 5, 17}));
    const auto d = run_flat_ring(rates, Dynamics::TwoSided, {0, 9}, 0, 2, 1);
    EXPECT_EQ(d.series[1][1], 9);
}

TEST(FlatRing, MatchesStepFunctions)
{
    // The ring runner's in-place update must equal the synchronous step.
    const std::vector<double> rates{0.2, 0.45, 0.1, 0.3, 0.05, 0.5, 0.25};
    const std::size_t w = rates.size();
    std::vector<std::uint64_t> thr(w);
    for (std::size_t x = 0; x < w; ++x)
        thr[x] = bernoulli_threshold(rates[x]);
    std::vector<std::int64_t> times;
    for (std::int64_t t = 0; t <= 40; ++t)
        times.push_back(t);
    for (auto dyn : {Dynamics::Oriented, Dynamics::TwoSided}) {
        for (std::size_t x0 : {std::size_t{0}, std::size_t{4}}) {
            const auto s = run_flat_ring(rates, dyn, times, x0, 3, 21);
            for (std::size_t trial = 0; trial < 3; ++trial) {
                const CounterStream noise(21, StreamTag::RingNoise, trial);
                auto p = flat_ring(w);
                for (std::int64_t t = 0; t <= 40; ++t) {
                    ASSERT_EQ(s.series[trial][static_cast<std::size_t>(t)], p.heights[x0]);
                    std::vector<std::uint8_t> row(w);
                    for (std::size_t x = 0; x < w; ++x)
                        row[x] = noise.word(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(t)) < thr[x];
                    p = dyn == Dynamics::Oriented ? step_odb(p, rates, row) : step_db(p, rates, row);
                }
            }
        }
    }
}

TEST(FlatRing, IndependentOfWorkers)
{
    const auto rates = sample_ring_rates(make_power_edge(1.0), 50, 4);
    const auto a = run_flat_ring(rates, Dynamics::Oriented, geometric_checkpoints(300), 0, 9, 8, 1);
    const auto b = run_flat_ring(rates, Dynamics::Oriented, geometric_checkpoints(300), 0, 9, 8, 3);
    EXPECT_EQ(a.series, b.series);
}

TEST(FlatRing, Validation)
{
    EXPECT_THROW(run_flat_ring(std::vector<double>{0.5}, Dynamics::Oriented, {1}, 0, 1, 1), DomainError);
    EXPECT_THROW(run_flat_ring(std::vector<double>{0.5, 0.5}, Dynamics::Oriented, {1}, 2, 1, 1), DomainError);
}

TEST(StalkDistribution, ConstantRateMatchesPathLength)
{
    // Distributional cross-check with independent noise streams on each side.
    const double p = 0.35;
    const int m = 6, n = 5;
    const std::vector<double> rates(n, p);
    const auto env = make_environment(rates, 0.5);
    const auto thr = column_thresholds(env.p);
    const std::int64_t t = m + n - 1;
    const std::vector<Checkpoint> cps{{t, n - 1}};
    constexpr int kTrials = 20000;
    std::vector<int> a(m + 1, 0), b(m + 1, 0);
    for (int k = 0; k < kTrials; ++k) {
        ++a[static_cast<std::size_t>(run_stalk(rates, t, 1000, static_cast<std::uint64_t>(k), cps)[0].h)];
        ++b[static_cast<std::size_t>(sample_longest_path(thr, m, 2000, static_cast<std::uint64_t>(k)))];
    }
    double ca = 0, cb = 0;
    for (int h = 0; h <= m; ++h) {
        ca += a[static_cast<std::size_t>(h)];
        cb += b[static_cast<std::size_t>(h)];
        const double f = 0.5 * (ca + cb) / kTrials;
        const double se = std::sqrt(std::max(f * (1 - f), 1e-4) * 2.0 / kTrials);
        EXPECT_NEAR(ca / kTrials, cb / kTrials, 4 * se) << "h=" << h;
    }
}
