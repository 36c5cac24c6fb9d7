#ifndef ODB_EXPERIMENTS_HPP
#define ODB_EXPERIMENTS_HPP

// Monte Carlo studies.  Every trial writes into its own slot and all
// reductions run afterwards in trial order, so results do not depend on the
// worker count.
//
// Streams: environment k of a study is sample_environment(model, n, seed, k);
// matrix trial k uses the MatrixNoise stream (seed, k); ring rates come from
// the RingRates stream of seed and ring trial k from RingNoise (seed, k).
// Any single trial can be replayed from (seed, k) alone.

#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/growth.hpp"
#include "odb/limits.hpp"
#include "odb/parallel.hpp"
#include "odb/paths.hpp"
#include "odb/quenched.hpp"
#include "odb/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace odb {

inline constexpr std::uint64_t kDefaultSeed = 20011208;

struct DisorderSpec {
    Family family = Family::PowerEdge;
    double eta = 3.0;
    double b = 0.5;
    double p0 = 0.25;          // point mass
    std::vector<Atom> atoms;   // tabulated
};

inline DisorderModel make_model(const DisorderSpec& spec)
{
    switch (spec.family) {
    case Family::PowerEdge: return DisorderModel::power_edge(spec.eta, spec.b);
    case Family::PointMass: return DisorderModel::point_mass(spec.p0);
    case Family::Tabulated: return DisorderModel::tabulated(spec.atoms);
    }
    throw DomainError("unknown disorder family");
}

enum class Study { QuenchedGaussian, AnnealedExtremal, Pure, LargestRate, Exponent, TimeConstant, Speed };

inline const char* study_name(Study s)
{
    switch (s) {
    case Study::QuenchedGaussian: return "theorem1";
    case Study::AnnealedExtremal: return "theorem2";
    case Study::Pure: return "pure";
    case Study::LargestRate: return "lemma33";
    case Study::Exponent: return "exponent";
    case Study::TimeConstant: return "time-constant";
    case Study::Speed: return "speed";
    }
    return "?";
}

struct ExperimentConfig {
    Study study = Study::QuenchedGaussian;
    DisorderSpec disorder;
    double alpha = 0.25;
    int m = 4000;
    std::int64_t trials = 1000;
    /// Fixed environment across trials (quenched) or a fresh one per trial;
    /// unset means the study's own semantics.
    std::optional<bool> quenched;
    std::vector<double> s_grid{0.5, 1.0, 2.0};
    std::uint64_t seed = kDefaultSeed;
    int workers = 0;
    /// Index of the environment used by quenched matrix studies.
    std::uint64_t environment = 0;
    /// The largest-rate study uses n directly (no matrix); 0 means floor(alpha m).
    int columns = 0;

    // ring studies
    Dynamics dynamics = Dynamics::Oriented;
    std::size_t width = 600;
    std::int64_t t_max = 10000;
    std::size_t x0 = 0;
    bool dense_checkpoints = true;
    /// Exponent fits use checkpoints t >= fit_from (the first decade is transient).
    std::int64_t fit_from = 10;

    /// n = floor(alpha m).
    int n() const
    {
        if (columns > 0)
            return columns;
        return static_cast<int>(std::floor(alpha * static_cast<double>(m)));
    }
};

struct EnvironmentDigest {
    double q1 = 0.0;
    double q2 = 0.0;
    double r1 = 0.0;
};

struct GridRow {
    double s = 0.0;
    double threshold = 0.0;
    double fraction = 0.0;
    double reference = 0.0;
};

struct CurvePoint {
    std::int64_t t = 0;
    double mean = 0.0;
    double value = 0.0;  // std-dev (exponent) or mean h/t (speed)
    bool fitted = false;
};

struct ExperimentReport {
    Study study = Study::QuenchedGaussian;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    int m = 0;
    int n = 0;
    double alpha = 0.0;
    /// Raw observable per trial, in trial order (H or h_t(x0)).
    std::vector<std::int64_t> observations;
    /// Standardized statistic per trial, in trial order.
    std::vector<double> statistics;
    /// Sorted statistics and the reference law at each of them.
    std::vector<double> samples;
    std::vector<double> reference;
    double ks = std::numeric_limits<double>::quiet_NaN();
    std::vector<GridRow> grid;
    std::vector<CurvePoint> curve;
    std::optional<LineFit> fit;
    std::optional<EnvironmentDigest> environment;
    /// Named scalar results in a fixed order.
    std::vector<std::pair<std::string, double>> metrics;
    double wall_seconds = 0.0;

    double metric(const std::string& key) const
    {
        for (const auto& [k, v] : metrics)
            if (k == key)
                return v;
        throw DomainError("report has no metric '" + key + "'");
    }
};

namespace detail {

    inline void require_trials(const ExperimentConfig& cfg)
    {
        if (cfg.trials < 2)
            throw ConfigError("trials must be at least 2");
    }

    inline void require_semantics(const ExperimentConfig& cfg, bool quenched)
    {
        if (cfg.quenched.value_or(quenched) != quenched)
            throw ConfigError(std::string(study_name(cfg.study)) + " is " + (quenched ? "quenched" : "annealed") + " by definition; quenched="
                              + (quenched ? "false" : "true") + " is not supported");
    }

    inline void require_matrix(const ExperimentConfig& cfg)
    {
        if (cfg.m < 1)
            throw ConfigError("m must be positive");
        if (cfg.n() < 1)
            throw ConfigError("n = floor(alpha m) must be positive");
    }

    inline EnvironmentDigest digest(const Environment& env)
    {
        EnvironmentDigest d;
        d.q1 = env.q.empty() ? 0.0 : env.q[0];
        d.q2 = env.q.size() > 1 ? env.q[1] : d.q1;
        d.r1 = env.r.empty() ? 0.0 : env.r[0];
        return d;
    }

    /// Sorts the statistics and attaches Phi and the KS distance.
    inline void attach_normal_law(ExperimentReport& rep)
    {
        rep.samples = rep.statistics;
        std::sort(rep.samples.begin(), rep.samples.end());
        rep.reference.resize(rep.samples.size());
        for (std::size_t i = 0; i < rep.samples.size(); ++i)
            rep.reference[i] = normal_cdf(rep.samples[i]);
        rep.ks = ks_distance(rep.samples, normal_cdf);
    }

    /// H for `trials` fresh environments (annealed).
    inline std::vector<std::int64_t> annealed_heights(const DisorderModel& model, const ExperimentConfig& cfg, unsigned workers)
    {
        const auto n = static_cast<std::size_t>(cfg.n());
        std::vector<std::int64_t> h(static_cast<std::size_t>(cfg.trials));
        parallel_for(h.size(), workers, [&](std::size_t k) {
            const auto env = sample_environment(model, n, cfg.seed, k);
            h[k] = sample_longest_path(column_thresholds(env.p), cfg.m, cfg.seed, k);
        });
        return h;
    }

    inline std::vector<double> heights_over(const std::vector<std::int64_t>& h, double scale)
    {
        std::vector<double> out(h.size());
        for (std::size_t k = 0; k < h.size(); ++k)
            out[k] = static_cast<double>(h[k]) / scale;
        return out;
    }

    class Stopwatch {
    public:
        double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

    private:
        std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    };

    inline LimitConstants composite_or_throw(const DisorderModel& model, double alpha, const char* study)
    {
        if (regime_classify(model, alpha) != Regime::Composite) {
            const auto cv = critical_values(model);
            throw RegimeError(std::string(study) + " needs the composite regime 0 < alpha < alpha_c' (alpha_c' = " + std::to_string(cv.alpha_c_prime)
                              + ", alpha = " + std::to_string(alpha) + ")");
        }
        return composite_constants(model, alpha);
    }

} // namespace detail

/// One environment, `trials` noise draws; (H - c_n m + 2 tau sqrt n)/(tau sqrt n) against Phi.
inline ExperimentReport quenched_gaussian_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, true);
    detail::require_matrix(cfg);
    const auto model = make_model(cfg.disorder);
    const auto limits = detail::composite_or_throw(model, cfg.alpha, "the quenched Gaussian study");
    if (!(limits.tau > 0.0))
        throw RegimeError("tau = 0: the quenched statistic is undefined");
    const int n = cfg.n();
    const auto env = sample_environment(model, static_cast<std::size_t>(n), cfg.seed, cfg.environment);
    const auto qc = solve_un(env, cfg.alpha);
    if (!qc.exists)
        throw RegimeError("saddle root u_n does not exist for this environment: (alpha/n) sum r_j >= 1");

    ExperimentReport rep;
    rep.study = Study::QuenchedGaussian;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.m = cfg.m;
    rep.n = n;
    rep.alpha = cfg.alpha;
    rep.environment = detail::digest(env);

    const unsigned workers = resolve_workers(cfg.workers);
    const auto thresholds = column_thresholds(env.p);
    rep.observations.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for(rep.observations.size(), workers,
                 [&](std::size_t k) { rep.observations[k] = sample_longest_path(thresholds, cfg.m, cfg.seed, k); });

    const double centre = qc.c * cfg.m;
    const double scale = limits.tau * std::sqrt(static_cast<double>(n));
    const double shift = 2.0 * scale;
    std::vector<double> unshifted(rep.observations.size());
    rep.statistics.resize(rep.observations.size());
    for (std::size_t k = 0; k < rep.observations.size(); ++k) {
        const double h = static_cast<double>(rep.observations[k]);
        rep.statistics[k] = (h - centre + shift) / scale;
        unshifted[k] = (h - centre) / scale;
    }
    detail::attach_normal_law(rep);
    std::sort(unshifted.begin(), unshifted.end());
    const double ks_unshifted = ks_distance(unshifted, normal_cdf);

    rep.metrics = {{"c_n", qc.c},
                   {"u_n", qc.u},
                   {"c", limits.c},
                   {"tau", limits.tau},
                   {"ks", rep.ks},
                   {"ks_unshifted", ks_unshifted},
                   {"median", sorted_median(rep.samples)},
                   {"mean", sample_moments(rep.statistics).mean},
                   {"variance", sample_moments(rep.statistics).variance}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Fresh environment per trial; P(H <= floor(cm - theta m G^{-1}(s/n))) against e^{-s}.
inline ExperimentReport annealed_extremal_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, false);
    detail::require_matrix(cfg);
    const auto model = make_model(cfg.disorder);
    const auto limits = detail::composite_or_throw(model, cfg.alpha, "the annealed extremal study");
    const int n = cfg.n();

    ExperimentReport rep;
    rep.study = Study::AnnealedExtremal;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.m = cfg.m;
    rep.n = n;
    rep.alpha = cfg.alpha;
    rep.observations = detail::annealed_heights(model, cfg, resolve_workers(cfg.workers));

    double worst = 0.0;
    for (double s : cfg.s_grid) {
        if (!(s >= 0.0))
            throw ConfigError("s values must be nonnegative");
        GridRow row;
        row.s = s;
        const double y = std::min(1.0, s / n);
        row.threshold = std::floor(limits.c * cfg.m - limits.theta * cfg.m * g_inverse(model, y));
        std::int64_t below = 0;
        for (auto h : rep.observations)
            below += static_cast<double>(h) <= row.threshold ? 1 : 0;
        row.fraction = static_cast<double>(below) / static_cast<double>(cfg.trials);
        row.reference = std::exp(-s);
        worst = std::max(worst, std::abs(row.fraction - row.reference));
        rep.grid.push_back(row);
    }
    rep.metrics = {{"c", limits.c}, {"theta", limits.theta}, {"max_abs_error", worst}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Pure regime, annealed: (H - cm)/(tau0 sqrt(alpha m)) against Phi.
inline ExperimentReport pure_gaussian_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, false);
    detail::require_matrix(cfg);
    const auto model = make_model(cfg.disorder);
    if (!(model.edge() > 0.0))
        throw DomainError("degenerate family: support edge b = 0");
    if (regime_classify(model, cfg.alpha) != Regime::Pure) {
        const auto cv = critical_values(model);
        throw RegimeError("the pure Gaussian study needs the pure regime alpha_c' < alpha < alpha_c (alpha_c' = " + std::to_string(cv.alpha_c_prime)
                          + ", alpha_c = " + std::to_string(cv.alpha_c) + ", alpha = " + std::to_string(cfg.alpha) + ")");
    }
    const auto limits = limit_constants(model, cfg.alpha);
    if (!(limits.tau0 > 0.0))
        throw RegimeError("tau_0 = 0 (no disorder): the pure-regime statistic is undefined");
    const int n = cfg.n();

    ExperimentReport rep;
    rep.study = Study::Pure;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.m = cfg.m;
    rep.n = n;
    rep.alpha = cfg.alpha;
    rep.observations = detail::annealed_heights(model, cfg, resolve_workers(cfg.workers));
    const double scale = limits.tau0 * std::sqrt(cfg.alpha * cfg.m);
    rep.statistics.resize(rep.observations.size());
    for (std::size_t k = 0; k < rep.observations.size(); ++k)
        rep.statistics[k] = (static_cast<double>(rep.observations[k]) - limits.c * cfg.m) / scale;
    detail::attach_normal_law(rep);
    const auto hm = sample_moments(detail::heights_over(rep.observations, std::sqrt(static_cast<double>(cfg.m))));
    rep.metrics = {{"c", limits.c},
                   {"a", limits.a},
                   {"tau0", limits.tau0},
                   {"ks", rep.ks},
                   {"variance_ratio", hm.variance / (limits.tau0 * limits.tau0 * cfg.alpha)}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Fresh environments of size n; P(q_1 <= G^{-1}(s/n)) against 1 - e^{-s}.
inline ExperimentReport largest_rate_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    const auto model = make_model(cfg.disorder);
    const int n = cfg.n();
    if (n < 1)
        throw ConfigError("n must be positive");

    ExperimentReport rep;
    rep.study = Study::LargestRate;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.n = n;
    rep.alpha = cfg.alpha;
    std::vector<double> q1(static_cast<std::size_t>(cfg.trials));
    parallel_for(q1.size(), resolve_workers(cfg.workers), [&](std::size_t k) {
        const auto p = sample_rates(model, static_cast<std::size_t>(n), CounterStream(cfg.seed, StreamTag::Environment, k));
        q1[k] = model.edge() - *std::max_element(p.begin(), p.end());
    });
    double worst = 0.0;
    for (double s : cfg.s_grid) {
        if (!(s >= 0.0))
            throw ConfigError("s values must be nonnegative");
        GridRow row;
        row.s = s;
        row.threshold = g_inverse(model, std::min(1.0, s / n));
        std::int64_t hits = 0;
        for (double q : q1)
            hits += q <= row.threshold ? 1 : 0;
        row.fraction = static_cast<double>(hits) / static_cast<double>(cfg.trials);
        row.reference = 1.0 - std::exp(-s);
        worst = std::max(worst, std::abs(row.fraction - row.reference));
        rep.grid.push_back(row);
    }
    rep.metrics = {{"max_abs_error", worst}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Quenched ring: std-dev of h_t(x0) over noise at log-spaced t, log-log slope.
inline ExperimentReport exponent_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, true);
    if (cfg.width < 2)
        throw ConfigError("ring width must be at least 2");
    if (cfg.t_max < 1)
        throw ConfigError("t_max must be positive");
    const auto model = make_model(cfg.disorder);
    const auto rates = sample_ring_rates(model, cfg.width, cfg.seed);
    auto times = cfg.dense_checkpoints ? dense_checkpoints(cfg.t_max) : geometric_checkpoints(cfg.t_max);
    const auto ring = run_flat_ring(rates, cfg.dynamics, times, cfg.x0, static_cast<std::size_t>(cfg.trials), cfg.seed,
                                    resolve_workers(cfg.workers));

    ExperimentReport rep;
    rep.study = Study::Exponent;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    std::vector<std::pair<double, double>> points;
    std::vector<double> column(ring.series.size());
    for (std::size_t k = 0; k < ring.times.size(); ++k) {
        for (std::size_t tr = 0; tr < ring.series.size(); ++tr)
            column[tr] = static_cast<double>(ring.series[tr][k]);
        const auto mom = sample_moments(column);
        CurvePoint pt{ring.times[k], mom.mean, std::sqrt(mom.variance), false};
        if (pt.t >= cfg.fit_from && pt.value > 0.0) {
            pt.fitted = true;
            points.emplace_back(static_cast<double>(pt.t), pt.value);
        }
        rep.curve.push_back(pt);
    }
    for (const auto& series : ring.series)
        rep.observations.push_back(series.back());
    rep.fit = fit_loglog(points);
    rep.metrics = {{"slope", rep.fit->slope}, {"intercept", rep.fit->intercept}, {"r2", rep.fit->r2}, {"fit_points", static_cast<double>(rep.fit->points)}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Annealed mean of H/m against c(alpha, F).
inline ExperimentReport time_constant_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, false);
    detail::require_matrix(cfg);
    const auto model = make_model(cfg.disorder);
    const double c = time_constant(model, cfg.alpha);

    ExperimentReport rep;
    rep.study = Study::TimeConstant;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.m = cfg.m;
    rep.n = cfg.n();
    rep.alpha = cfg.alpha;
    rep.observations = detail::annealed_heights(model, cfg, resolve_workers(cfg.workers));
    rep.statistics = detail::heights_over(rep.observations, static_cast<double>(cfg.m));
    const auto mom = sample_moments(rep.statistics);
    rep.metrics = {{"c", c},
                   {"mean_h_over_m", mom.mean},
                   {"std_error", std::sqrt(mom.variance / static_cast<double>(cfg.trials))},
                   {"relative_error", std::abs(mom.mean - c) / c}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

/// Flat ring speed h_t(x0)/t against sup_alpha c(alpha)/(1+alpha), both for
/// the model and for the empirical law of the ring's own rates.
inline ExperimentReport speed_study(const ExperimentConfig& cfg)
{
    detail::Stopwatch clock;
    detail::require_trials(cfg);
    detail::require_semantics(cfg, true);
    if (cfg.dynamics != Dynamics::Oriented)
        throw ConfigError("the speed formula holds for oriented dynamics only");
    if (cfg.width < 2)
        throw ConfigError("ring width must be at least 2");
    const auto model = make_model(cfg.disorder);
    const auto rates = sample_ring_rates(model, cfg.width, cfg.seed);
    auto times = geometric_checkpoints(cfg.t_max);
    const auto ring = run_flat_ring(rates, cfg.dynamics, times, cfg.x0, static_cast<std::size_t>(cfg.trials), cfg.seed,
                                    resolve_workers(cfg.workers));

    std::vector<Atom> atoms;
    for (double p : rates)
        atoms.push_back({p, 1.0 / static_cast<double>(rates.size())});
    const auto ring_model = DisorderModel::tabulated(atoms);

    ExperimentReport rep;
    rep.study = Study::Speed;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    std::vector<double> column(ring.series.size());
    for (std::size_t k = 0; k < ring.times.size(); ++k) {
        for (std::size_t tr = 0; tr < ring.series.size(); ++tr)
            column[tr] = static_cast<double>(ring.series[tr][k]);
        const auto mom = sample_moments(column);
        const double t = static_cast<double>(std::max<std::int64_t>(ring.times[k], 1));
        rep.curve.push_back({ring.times[k], mom.mean, mom.mean / t, false});
    }
    for (const auto& series : ring.series)
        rep.observations.push_back(series.back());
    const double measured = rep.curve.back().value;
    const double ring_speed = flat_speed(ring_model);
    rep.metrics = {{"speed", measured},
                   {"ring_speed", ring_speed},
                   {"model_speed", flat_speed(model)},
                   {"relative_error", std::abs(measured - ring_speed) / ring_speed}};
    rep.wall_seconds = clock.seconds();
    return rep;
}

inline ExperimentReport run_study(const ExperimentConfig& cfg)
{
    switch (cfg.study) {
    case Study::QuenchedGaussian: return quenched_gaussian_study(cfg);
    case Study::AnnealedExtremal: return annealed_extremal_study(cfg);
    case Study::Pure: return pure_gaussian_study(cfg);
    case Study::LargestRate: return largest_rate_study(cfg);
    case Study::Exponent: return exponent_study(cfg);
    case Study::TimeConstant: return time_constant_study(cfg);
    case Study::Speed: return speed_study(cfg);
    }
    throw DomainError("unknown study");
}

} // namespace odb

#endif // ODB_EXPERIMENTS_HPP
