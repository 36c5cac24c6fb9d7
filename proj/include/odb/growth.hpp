#ifndef ODB_GROWTH_HPP
#define ODB_GROWTH_HPP

// Discrete-time Oriented Digital Boiling (ODB) and two-sided Digital Boiling
// (DB) under quenched column rates.
//
//   ODB: h_{t+1}(x) = max{h_t(x-1), h_t(x) + eps_{x,t}}
//   DB : h_{t+1}(x) = max{h_t(x-1), h_t(x+1), h_t(x) + eps_{x,t}}
//
// with P(eps_{x,t} = 1) = p_x.  Updates are synchronous.  Heights below the
// light cone of a stalk are the sentinel kNegInf, which is absorbing under
// bump() and loses every max.

#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/parallel.hpp"
#include "odb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace odb {

using Height = std::int64_t;
inline constexpr Height kNegInf = std::numeric_limits<Height>::min();

/// h + e with -inf absorbing.
constexpr Height bump(Height h, int e) noexcept
{
    return h == kNegInf ? h : h + e;
}

enum class Topology { HalfLine, Ring };
enum class Dynamics { Oriented, TwoSided };

inline const char* dynamics_name(Dynamics d)
{
    return d == Dynamics::Oriented ? "odb" : "db";
}

struct HeightProfile {
    Topology topology = Topology::HalfLine;
    std::vector<Height> heights;
    std::int64_t time = 0;

    std::size_t width() const noexcept { return heights.size(); }
};

/// Stalk on sites 0..width-1: height 0 at the origin, -inf elsewhere.
inline HeightProfile stalk_profile(std::size_t width)
{
    HeightProfile p;
    p.topology = Topology::HalfLine;
    p.heights.assign(width, kNegInf);
    if (width > 0)
        p.heights[0] = 0;
    return p;
}

/// Flat ring h_0 = 0 on width sites.
inline HeightProfile flat_ring(std::size_t width)
{
    HeightProfile p;
    p.topology = Topology::Ring;
    p.heights.assign(width, 0);
    return p;
}

namespace detail {

    inline void check_step_dims(const HeightProfile& profile, std::size_t rates, std::size_t noise)
    {
        if (profile.width() != rates || profile.width() != noise)
            throw DomainError("profile, rates and noise row differ in length (" + std::to_string(profile.width()) + ", "
                              + std::to_string(rates) + ", " + std::to_string(noise) + ")");
    }

    inline Height left_of(const HeightProfile& p, std::size_t x) noexcept
    {
        if (x > 0)
            return p.heights[x - 1];
        return p.topology == Topology::Ring ? p.heights.back() : kNegInf;
    }

    inline Height right_of(const HeightProfile& p, std::size_t x) noexcept
    {
        if (x + 1 < p.width())
            return p.heights[x + 1];
        return p.topology == Topology::Ring ? p.heights.front() : kNegInf;
    }

} // namespace detail

/// One synchronous ODB update.  noise[x] is eps_{x,t} in {0,1}; rates are
/// carried for the dimension contract only since the coin flips are already drawn.
inline HeightProfile step_odb(const HeightProfile& profile, std::span<const double> rates, std::span<const std::uint8_t> noise)
{
    detail::check_step_dims(profile, rates.size(), noise.size());
    HeightProfile next = profile;
    for (std::size_t x = 0; x < profile.width(); ++x)
        next.heights[x] = std::max(detail::left_of(profile, x), bump(profile.heights[x], noise[x]));
    ++next.time;
    return next;
}

inline HeightProfile step_db(const HeightProfile& profile, std::span<const double> rates, std::span<const std::uint8_t> noise)
{
    detail::check_step_dims(profile, rates.size(), noise.size());
    HeightProfile next = profile;
    for (std::size_t x = 0; x < profile.width(); ++x)
        next.heights[x] = std::max({detail::left_of(profile, x), detail::right_of(profile, x), bump(profile.heights[x], noise[x])});
    ++next.time;
    return next;
}

/// eps_{x,t} of a stalk run.  The stalk coin at (site x, time t) is the matrix
/// entry a(t-x+1, x+1), which makes h_t(x) = H(t-x, x+1) hold pathwise.
inline std::uint8_t stalk_coin(const CounterStream& noise, std::uint64_t threshold, std::int64_t t, std::size_t x) noexcept
{
    const auto row = static_cast<std::uint32_t>(t - static_cast<std::int64_t>(x) + 1);
    const auto col = static_cast<std::uint32_t>(x + 1);
    return noise.word(col, row) < threshold ? 1 : 0;
}

struct Checkpoint {
    std::int64_t t;
    std::int64_t x;
};

struct TracePoint {
    std::int64_t t;
    std::int64_t x;
    Height h;
};

/// ODB from the stalk on sites x = 0..n-1 carrying rates[x] (environment order
/// p_1 at the origin).  Returns h_t(x) at the requested checkpoints, in the
/// order given; checkpoints outside the simulated region report kNegInf.
inline std::vector<TracePoint> run_stalk(std::span<const double> rates, std::int64_t t_max, std::uint64_t seed,
                                         std::uint64_t trial, std::span<const Checkpoint> checkpoints)
{
    if (t_max < 0)
        throw DomainError("t_max must be nonnegative");
    const std::size_t n = rates.size();
    const CounterStream noise(seed, StreamTag::MatrixNoise, trial);
    std::vector<std::uint64_t> threshold(n);
    for (std::size_t x = 0; x < n; ++x)
        threshold[x] = bernoulli_threshold(rates[x]);

    std::vector<TracePoint> out(checkpoints.size());
    std::vector<std::vector<std::size_t>> due(static_cast<std::size_t>(t_max) + 1);
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
        const auto& c = checkpoints[k];
        out[k] = {c.t, c.x, kNegInf};
        if (c.t >= 0 && c.t <= t_max && c.x >= 0 && static_cast<std::size_t>(c.x) < n)
            due[static_cast<std::size_t>(c.t)].push_back(k);
    }

    std::vector<Height> h(n, kNegInf);
    if (n > 0)
        h[0] = 0;
    for (std::int64_t t = 0;; ++t) {
        for (std::size_t k : due[static_cast<std::size_t>(t)])
            out[k].h = h[static_cast<std::size_t>(checkpoints[k].x)];
        if (t == t_max)
            break;
        // In place, right to left, so h[x-1] is still the time-t value.
        const std::size_t reach = std::min<std::size_t>(n, static_cast<std::size_t>(t) + 2);
        for (std::size_t x = reach; x-- > 0;) {
            const Height left = x > 0 ? h[x - 1] : kNegInf;
            const Height self = h[x] == kNegInf ? kNegInf : h[x] + stalk_coin(noise, threshold[x], t, x);
            h[x] = std::max(left, self);
        }
    }
    return out;
}

/// Full stalk history h_t(x) for t = 0..t_max, x = 0..n-1 (row-major by t).
inline std::vector<Height> stalk_history(std::span<const double> rates, std::int64_t t_max, std::uint64_t seed, std::uint64_t trial)
{
    const std::size_t n = rates.size();
    const CounterStream noise(seed, StreamTag::MatrixNoise, trial);
    std::vector<std::uint64_t> threshold(n);
    for (std::size_t x = 0; x < n; ++x)
        threshold[x] = bernoulli_threshold(rates[x]);
    HeightProfile prof = stalk_profile(n);
    std::vector<Height> history;
    history.reserve(static_cast<std::size_t>(t_max + 1) * n);
    std::vector<std::uint8_t> row(n);
    std::vector<double> r(rates.begin(), rates.end());
    for (std::int64_t t = 0;; ++t) {
        history.insert(history.end(), prof.heights.begin(), prof.heights.end());
        if (t == t_max)
            break;
        for (std::size_t x = 0; x < n; ++x)
            row[x] = static_cast<std::int64_t>(x) <= t ? stalk_coin(noise, threshold[x], t, x) : 0;
        prof = step_odb(prof, r, row);
    }
    return history;
}

/// Checkpoint times t_k = ceil(t_max * 2^-k), ascending, >= 1.
inline std::vector<std::int64_t> geometric_checkpoints(std::int64_t t_max)
{
    std::set<std::int64_t> ts;
    for (int k = 0; k < 63; ++k) {
        const auto t = static_cast<std::int64_t>(std::ceil(static_cast<double>(t_max) * std::ldexp(1.0, -k)));
        if (t < 1)
            break;
        ts.insert(t);
        if (t == 1)
            break;
    }
    return {ts.begin(), ts.end()};
}

/// Log-spaced integer times, `per_decade` per factor of ten, from 1 to t_max.
inline std::vector<std::int64_t> dense_checkpoints(std::int64_t t_max, int per_decade = 20)
{
    std::set<std::int64_t> ts;
    const double steps = std::log10(static_cast<double>(t_max)) * per_decade;
    for (int k = 0; k <= static_cast<int>(std::ceil(steps)); ++k) {
        auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, k / static_cast<double>(per_decade))));
        ts.insert(std::clamp<std::int64_t>(t, 1, t_max));
    }
    ts.insert(t_max);
    return {ts.begin(), ts.end()};
}

/// Quenched ring time series: series[trial][k] = h_{times[k]}(x0).
struct RingSeries {
    std::vector<std::int64_t> times;
    std::vector<std::vector<Height>> series;
};

/// Flat ring h_0 = 0 with fixed site rates; noise redrawn per trial.  Coin
/// flips are keyed by (site, time, trial) on the ring stream of `seed`.
inline RingSeries run_flat_ring(std::span<const double> rates, Dynamics dynamics, std::vector<std::int64_t> times,
                                std::size_t x0, std::size_t trials, std::uint64_t seed, unsigned workers = 1)
{
    const std::size_t width = rates.size();
    if (width < 2)
        throw DomainError("ring width must be at least 2");
    if (x0 >= width)
        throw DomainError("observation site outside the ring");
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (!times.empty() && times.front() < 0)
        throw DomainError("checkpoint times must be nonnegative");
    const std::int64_t t_max = times.empty() ? 0 : times.back();

    std::vector<std::uint64_t> threshold(width);
    for (std::size_t x = 0; x < width; ++x)
        threshold[x] = bernoulli_threshold(rates[x]);

    RingSeries result;
    result.times = times;
    result.series.assign(trials, std::vector<Height>(times.size(), 0));

    parallel_for(trials, workers, [&](std::size_t trial) {
        const CounterStream noise(seed, StreamTag::RingNoise, trial);
        std::vector<Height> h(width, 0);
        std::vector<Height> prev(width, 0);
        std::vector<std::array<std::uint32_t, 4>> words(width);
        std::size_t next_checkpoint = 0;
        auto& out = result.series[trial];
        for (std::int64_t t = 0;; ++t) {
            while (next_checkpoint < times.size() && times[next_checkpoint] == t)
                out[next_checkpoint++] = h[x0];
            if (t == t_max)
                break;
            const auto lane = static_cast<std::size_t>(t & 3);
            if (lane == 0)
                for (std::size_t x = 0; x < width; ++x)
                    words[x] = noise.block(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(t >> 2));
            if (dynamics == Dynamics::Oriented) {
                const Height last = h[width - 1];
                for (std::size_t x = width - 1; x > 0; --x)
                    h[x] = std::max(h[x - 1], h[x] + (words[x][lane] < threshold[x]));
                h[0] = std::max(last, h[0] + (words[0][lane] < threshold[0]));
            } else {
                prev.swap(h);
                for (std::size_t x = 0; x < width; ++x) {
                    const Height l = prev[x == 0 ? width - 1 : x - 1];
                    const Height r = prev[x + 1 == width ? 0 : x + 1];
                    h[x] = std::max({l, r, prev[x] + (words[x][lane] < threshold[x])});
                }
            }
        }
    });
    return result;
}

/// Per-site rates of a ring of the given width, i.i.d. from the model.
inline std::vector<double> sample_ring_rates(const DisorderModel& model, std::size_t width, std::uint64_t seed)
{
    return sample_rates(model, width, CounterStream(seed, StreamTag::RingRates, 0));
}

} // namespace odb

#endif // ODB_GROWTH_HPP
