#ifndef ODB_CLI_HPP
#define ODB_CLI_HPP

// Command-line front end.  Every subcommand has a flat list of settings with
// defaults; a --config file and then --<key> flags override them.  Each run
// writes CSVs plus <out-dir>/<subcommand>.manifest, which can be fed back
// through --config to reproduce the outputs.
//
// Exit status: 0 ok, 2 configuration error, 3 regime or precondition
// violation, 4 numerical alarm, 1 anything else.

#include "odb/config.hpp"
#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/experiments.hpp"
#include "odb/fredholm.hpp"
#include "odb/growth.hpp"
#include "odb/limits.hpp"
#include "odb/quenched.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace odb::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kPrecondition = 3, kAlarm = 4 };

struct Key {
    std::string name;
    std::string fallback;
    std::string help;
};

inline std::vector<Key> common_keys()
{
    return {{"seed", std::to_string(kDefaultSeed), "master seed"},
            {"out-dir", "odb-out", "directory for CSV files and the manifest"},
            {"workers", "0", "worker threads (0: $ODB_WORKERS or all cores)"}};
}

inline std::vector<Key> disorder_keys()
{
    return {{"family", "power", "rate law: power | point | tabulated"},
            {"eta", "3", "power-edge exponent"},
            {"b", "0.5", "power-edge support edge"},
            {"p0", "0.25", "point-mass value"},
            {"atoms", "", "tabulated law as value:weight,value:weight,..."}};
}

inline const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names{"constants",      "quenched",       "exact-cdf",     "simulate",
                                                "study-theorem1", "study-theorem2", "study-pure",    "study-lemma33",
                                                "study-exponent", "study-speed",    "study-time-constant"};
    return names;
}

inline std::string describe(const std::string& sub)
{
    static const std::map<std::string, std::string> text{
        {"constants", "critical values, time constant and fluctuation constants"},
        {"quenched", "saddle point u_n and centering c_n of one sampled environment"},
        {"exact-cdf", "exact P(H <= h) from Fredholm determinants"},
        {"simulate", "stalk or flat-ring growth trace"},
        {"study-theorem1", "quenched Gaussian fluctuations in the composite regime"},
        {"study-theorem2", "annealed extremal law in the composite regime"},
        {"study-pure", "annealed Gaussian fluctuations in the pure regime"},
        {"study-lemma33", "law of the largest rate"},
        {"study-exponent", "quenched fluctuation exponent on a ring"},
        {"study-speed", "flat ring speed"},
        {"study-time-constant", "annealed mean of H/m"}};
    return text.at(sub);
}

/// All settings of a subcommand with their defaults.
inline std::vector<Key> schema(const std::string& sub)
{
    std::vector<Key> keys = common_keys();
    const auto d = disorder_keys();
    keys.insert(keys.end(), d.begin(), d.end());
    auto add = [&keys](std::initializer_list<Key> more) { keys.insert(keys.end(), more.begin(), more.end()); };
    if (sub == "constants")
        add({{"alpha", "0.25", "aspect ratio n/m"}});
    else if (sub == "quenched")
        add({{"alpha", "0.25", "aspect ratio n/m"}, {"n", "1000", "columns"}, {"environment", "0", "environment index"}});
    else if (sub == "exact-cdf")
        add({{"m", "50", "rows"},
             {"n", "20", "columns (ignored when rates are given)"},
             {"environment", "0", "environment index"},
             {"rates", "", "explicit column rates p_1,...,p_n"}});
    else if (sub == "simulate")
        add({{"topology", "stalk", "stalk | ring"},
             {"dynamics", "odb", "odb | db (ring only)"},
             {"width", "600", "number of sites"},
             {"t-max", "1000", "last time step"},
             {"trials", "1", "independent noise realizations"},
             {"x", "0", "observed site"}});
    else if (sub == "study-theorem1")
        add({{"alpha", "0.25", "aspect ratio"}, {"m", "4000", "rows"}, {"trials", "1000", "noise realizations"}, {"environment", "0", "environment index"}});
    else if (sub == "study-theorem2")
        add({{"alpha", "0.25", "aspect ratio"}, {"m", "4000", "rows"}, {"trials", "2000", "fresh environments"}, {"s-grid", "0.5,1,2", "s values"}});
    else if (sub == "study-pure")
        add({{"alpha", "0.6", "aspect ratio"}, {"m", "4000", "rows"}, {"trials", "1000", "fresh environments"}});
    else if (sub == "study-lemma33")
        add({{"n", "10000", "environment size"}, {"trials", "10000", "environments"}, {"s-grid", "0.5,1,2", "s values"}});
    else if (sub == "study-exponent")
        add({{"dynamics", "odb", "odb | db"},
             {"width", "600", "ring width"},
             {"t-max", "10000", "last time"},
             {"trials", "1000", "noise realizations"},
             {"x", "0", "observed site"},
             {"checkpoints", "dense", "dense (20 per decade) | geometric"},
             {"fit-from", "10", "first time used in the fit"}});
    else if (sub == "study-speed")
        add({{"width", "600", "ring width"}, {"t-max", "10000", "last time"}, {"trials", "100", "noise realizations"}, {"x", "0", "observed site"}});
    else if (sub == "study-time-constant")
        add({{"alpha", "0.25", "aspect ratio"}, {"m", "10000", "rows"}, {"trials", "200", "fresh environments"}});
    else
        throw ConfigError("unknown subcommand '" + sub + "'");
    return keys;
}

inline Settings default_settings(const std::string& sub)
{
    Settings s;
    for (const auto& k : schema(sub))
        s.declare(k.name, k.fallback);
    return s;
}

inline std::vector<Atom> parse_atoms(const std::string& text)
{
    std::vector<Atom> atoms;
    for (const auto& item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("atom '" + item + "' must be value:weight");
        atoms.push_back({parse_double("atoms", item.substr(0, colon)), parse_double("atoms", item.substr(colon + 1))});
    }
    return atoms;
}

inline DisorderSpec disorder_from(const Settings& s)
{
    DisorderSpec d;
    const std::string family = s.get("family");
    if (family == "power")
        d.family = Family::PowerEdge;
    else if (family == "point")
        d.family = Family::PointMass;
    else if (family == "tabulated")
        d.family = Family::Tabulated;
    else
        throw ConfigError("family must be power, point or tabulated, got '" + family + "'");
    d.eta = s.number("eta");
    d.b = s.number("b");
    d.p0 = s.number("p0");
    if (d.family == Family::Tabulated)
        d.atoms = parse_atoms(s.get("atoms"));
    return d;
}

inline Dynamics dynamics_from(const Settings& s)
{
    const std::string v = s.get("dynamics");
    if (v == "odb")
        return Dynamics::Oriented;
    if (v == "db")
        return Dynamics::TwoSided;
    throw ConfigError("dynamics must be odb or db, got '" + v + "'");
}

inline int positive_int(const Settings& s, const std::string& key)
{
    const auto v = s.integer(key);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw ConfigError("'" + key + "' must be a positive integer");
    return static_cast<int>(v);
}

inline ExperimentConfig experiment_from(const std::string& sub, const Settings& s)
{
    ExperimentConfig cfg;
    static const std::map<std::string, Study> studies{{"study-theorem1", Study::QuenchedGaussian}, {"study-theorem2", Study::AnnealedExtremal},
                                                      {"study-pure", Study::Pure},         {"study-lemma33", Study::LargestRate},
                                                      {"study-exponent", Study::Exponent}, {"study-speed", Study::Speed},
                                                      {"study-time-constant", Study::TimeConstant}};
    cfg.study = studies.at(sub);
    cfg.disorder = disorder_from(s);
    cfg.seed = s.unsigned_integer("seed");
    cfg.workers = static_cast<int>(s.integer("workers"));
    cfg.trials = s.integer("trials");
    if (s.has("alpha"))
        cfg.alpha = s.number("alpha");
    if (s.has("m"))
        cfg.m = positive_int(s, "m");
    if (s.has("environment"))
        cfg.environment = s.unsigned_integer("environment");
    if (s.has("s-grid"))
        cfg.s_grid = s.numbers("s-grid");
    if (sub == "study-lemma33")
        cfg.columns = positive_int(s, "n");
    if (s.has("dynamics"))
        cfg.dynamics = dynamics_from(s);
    if (s.has("width"))
        cfg.width = static_cast<std::size_t>(positive_int(s, "width"));
    if (s.has("t-max"))
        cfg.t_max = s.integer("t-max");
    if (s.has("x"))
        cfg.x0 = static_cast<std::size_t>(s.unsigned_integer("x"));
    if (s.has("checkpoints")) {
        const auto v = s.get("checkpoints");
        if (v != "dense" && v != "geometric")
            throw ConfigError("checkpoints must be dense or geometric");
        cfg.dense_checkpoints = v == "dense";
    }
    if (s.has("fit-from"))
        cfg.fit_from = s.integer("fit-from");
    if (cfg.x0 >= cfg.width)
        throw ConfigError("observed site x must be below the width");
    return cfg;
}

inline std::string fmt(double v) { return format_double(v); }
inline std::string fmt(std::int64_t v) { return std::to_string(v); }

inline std::string height_text(Height h) { return h == kNegInf ? "-inf" : std::to_string(h); }

/// CSV tables of a study report, named by file stem.
inline std::vector<std::pair<std::string, CsvTable>> report_tables(const ExperimentReport& rep)
{
    std::vector<std::pair<std::string, CsvTable>> out;
    const std::string stem = study_name(rep.study);

    CsvTable summary({"key", "value"});
    summary.add_row({"study", stem});
    summary.add_row({"seed", std::to_string(rep.seed)});
    summary.add_row({"trials", fmt(rep.trials)});
    if (rep.m > 0)
        summary.add_row({"m", std::to_string(rep.m)});
    if (rep.n > 0)
        summary.add_row({"n", std::to_string(rep.n)});
    if (rep.alpha > 0)
        summary.add_row({"alpha", fmt(rep.alpha)});
    for (const auto& [k, v] : rep.metrics)
        summary.add_row({k, fmt(v)});
    if (rep.environment) {
        summary.add_row({"q1", fmt(rep.environment->q1)});
        summary.add_row({"q2", fmt(rep.environment->q2)});
        summary.add_row({"r1", fmt(rep.environment->r1)});
    }
    out.emplace_back(stem + "-summary", std::move(summary));

    if (!rep.observations.empty() && rep.study != Study::Exponent && rep.study != Study::Speed) {
        const bool with_stat = rep.statistics.size() == rep.observations.size();
        CsvTable t(with_stat ? std::vector<std::string>{"trial", "H", "statistic"} : std::vector<std::string>{"trial", "H"});
        for (std::size_t k = 0; k < rep.observations.size(); ++k) {
            if (with_stat)
                t.add_row({std::to_string(k), fmt(rep.observations[k]), fmt(rep.statistics[k])});
            else
                t.add_row({std::to_string(k), fmt(rep.observations[k])});
        }
        out.emplace_back(stem + "-samples", std::move(t));
    }
    if (!rep.samples.empty()) {
        CsvTable t({"rank", "statistic", "empirical", "reference"});
        const auto n = static_cast<double>(rep.samples.size());
        for (std::size_t i = 0; i < rep.samples.size(); ++i)
            t.add_row({std::to_string(i + 1), fmt(rep.samples[i]), fmt((static_cast<double>(i) + 1.0) / n), fmt(rep.reference[i])});
        out.emplace_back(stem + "-cdf", std::move(t));
    }
    if (!rep.grid.empty()) {
        CsvTable t({"s", "threshold", "fraction", "reference"});
        for (const auto& g : rep.grid)
            t.add_row({fmt(g.s), fmt(g.threshold), fmt(g.fraction), fmt(g.reference)});
        out.emplace_back(stem + "-grid", std::move(t));
    }
    if (!rep.curve.empty()) {
        const bool exponent = rep.study == Study::Exponent;
        CsvTable t(exponent ? std::vector<std::string>{"t", "mean", "stddev", "fitted"} : std::vector<std::string>{"t", "mean", "mean_over_t"});
        for (const auto& c : rep.curve) {
            if (exponent)
                t.add_row({fmt(c.t), fmt(c.mean), fmt(c.value), c.fitted ? "1" : "0"});
            else
                t.add_row({fmt(c.t), fmt(c.mean), fmt(c.value)});
        }
        out.emplace_back(stem + "-curve", std::move(t));
    }
    return out;
}

/// Output of one subcommand body.
struct RunResult {
    std::vector<std::pair<std::string, CsvTable>> tables;
    std::vector<std::string> lines;  // key=value lines for stdout
    int status = kOk;
};

namespace detail {

    inline std::string kv_line(const std::vector<std::pair<std::string, std::string>>& items)
    {
        std::string line;
        for (const auto& [k, v] : items) {
            if (!line.empty())
                line += ' ';
            line += k + "=" + v;
        }
        return line;
    }

    inline std::string short_num(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    inline RunResult run_constants(const Settings& s)
    {
        const auto model = make_model(disorder_from(s));
        const double alpha = s.number("alpha");
        const auto k = limit_constants(model, alpha);
        RunResult r;
        CsvTable t({"key", "value"});
        std::vector<std::pair<std::string, std::string>> line;
        auto put = [&](const std::string& key, double v) {
            t.add_row({key, fmt(v)});
            line.emplace_back(key, short_num(v));
        };
        put("alpha", alpha);
        put("alpha_c", k.alpha_c);
        put("alpha_c_prime", k.alpha_c_prime);
        put("c", k.c);
        if (k.regime == Regime::Composite) {
            const double b = model.edge();
            put("theta", k.theta);
            put("tau2", b * (1.0 - b) * (1.0 / alpha - 1.0 / k.alpha_c_prime));
            put("beta2", (1.0 - b) * alpha / (b * b * b * k.theta));
        }
        if (k.regime == Regime::Pure) {
            put("a", k.a);
            put("tau0", k.tau0);
        }
        put("xi", k.xi);
        put("flat_speed", flat_speed(model));
        t.add_row({"regime", regime_name(k.regime)});
        line.emplace_back("regime", regime_name(k.regime));
        r.tables.emplace_back("constants", std::move(t));
        r.lines.push_back(kv_line(line));
        return r;
    }

    inline RunResult run_quenched(const Settings& s)
    {
        const auto model = make_model(disorder_from(s));
        const double alpha = s.number("alpha");
        const auto env = sample_environment(model, static_cast<std::size_t>(positive_int(s, "n")), s.unsigned_integer("seed"),
                                            s.unsigned_integer("environment"));
        const auto qc = solve_un(env, alpha);
        if (!qc.exists)
            throw RegimeError("saddle root u_n does not exist: needs r_1 > 0 and (alpha/n) sum r_j < 1");
        RunResult r;
        CsvTable t({"key", "value"});
        std::vector<std::pair<std::string, std::string>> line;
        auto put = [&](const std::string& key, double v) {
            t.add_row({key, fmt(v)});
            line.emplace_back(key, short_num(v));
        };
        put("n", static_cast<double>(env.size()));
        put("u_n", qc.u);
        put("delta", qc.delta);
        put("c_n", qc.c);
        put("sigma1", qc.sigma1_residual);
        put("sigma2", qc.sigma2_residual);
        put("q1", env.q.front());
        put("r1", env.r.front());
        if (regime_classify(model, alpha) == Regime::Composite) {
            const auto limits = composite_constants(model, alpha);
            const auto a = saddle_asymptotics(env, qc, limits);
            put("c", limits.c);
            put("pole_gap_ratio", a.pole_gap_ratio);
            put("centering_ratio", a.centering_ratio);
        }
        r.tables.emplace_back("quenched", std::move(t));
        r.lines.push_back(kv_line(line));
        return r;
    }

    inline RunResult run_exact_cdf(const Settings& s)
    {
        const auto model = make_model(disorder_from(s));
        Environment env;
        if (!s.get("rates").empty()) {
            const auto rates = s.numbers("rates");
            for (double p : rates)
                if (!(p >= 0.0 && p <= 1.0))
                    throw DomainError("rates must lie in [0,1]");
            double top = 0.0;
            for (double p : rates)
                top = std::max(top, p);
            env = make_environment(rates, std::max(top, model.edge()));
        } else {
            env = sample_environment(model, static_cast<std::size_t>(positive_int(s, "n")), s.unsigned_integer("seed"),
                                     s.unsigned_integer("environment"));
        }
        const int m = positive_int(s, "m");
        const auto rep = exact_cdf_report(env, m, resolve_workers(static_cast<int>(s.integer("workers"))));
        RunResult r;
        CsvTable t({"h", "probability", "provenance", "flagged"});
        std::size_t flagged = 0;
        for (int h = 0; h <= m; ++h) {
            const auto i = static_cast<std::size_t>(h);
            t.add_row({std::to_string(h), fmt(rep.table.values[i]), provenance_name(rep.table.provenance), rep.table.flagged[i] ? "1" : "0"});
            flagged += rep.table.flagged[i] ? 1 : 0;
        }
        r.tables.emplace_back("exact-cdf", std::move(t));
        r.lines.push_back(kv_line({{"m", std::to_string(m)},
                                   {"n", std::to_string(env.size())},
                                   {"precision_bits", std::to_string(rep.precision_bits)},
                                   {"resolution", std::to_string(rep.resolution)},
                                   {"reciprocal_defect", short_num(rep.reciprocal_defect)},
                                   {"max_growth", short_num(rep.max_growth)},
                                   {"flagged", std::to_string(flagged)}}));
        if (flagged > 0) {
            r.lines.push_back("conditioning alarm: " + std::to_string(flagged) + " entries have pivot growth above 1e8");
            r.status = kAlarm;
        }
        return r;
    }

    inline RunResult run_simulate(const Settings& s)
    {
        const auto model = make_model(disorder_from(s));
        const auto width = static_cast<std::size_t>(positive_int(s, "width"));
        const auto t_max = s.integer("t-max");
        const auto trials = s.integer("trials");
        const auto x = s.unsigned_integer("x");
        const auto seed = s.unsigned_integer("seed");
        if (t_max < 0)
            throw ConfigError("t-max must be nonnegative");
        if (trials < 1)
            throw ConfigError("trials must be positive");
        if (x >= width)
            throw ConfigError("observed site x must be below the width");
        const auto rates = sample_ring_rates(model, width, seed);
        auto times = geometric_checkpoints(std::max<std::int64_t>(t_max, 1));
        if (t_max == 0)
            times = {0};
        else
            times.insert(times.begin(), 0);

        RunResult r;
        CsvTable t({"trial", "t", "x", "h"});
        const std::string topology = s.get("topology");
        if (topology == "stalk") {
            if (s.get("dynamics") != "odb")
                throw ConfigError("stalk runs use odb dynamics");
            std::vector<Checkpoint> cps;
            for (auto tt : times)
                cps.push_back({tt, static_cast<std::int64_t>(x)});
            for (std::int64_t k = 0; k < trials; ++k)
                for (const auto& p : run_stalk(rates, t_max, seed, static_cast<std::uint64_t>(k), cps))
                    t.add_row({std::to_string(k), fmt(p.t), fmt(p.x), height_text(p.h)});
        } else if (topology == "ring") {
            const auto ring = run_flat_ring(rates, dynamics_from(s), times, x, static_cast<std::size_t>(trials), seed,
                                            resolve_workers(static_cast<int>(s.integer("workers"))));
            for (std::size_t k = 0; k < ring.series.size(); ++k)
                for (std::size_t i = 0; i < ring.times.size(); ++i)
                    t.add_row({std::to_string(k), fmt(ring.times[i]), std::to_string(x), height_text(ring.series[k][i])});
        } else {
            throw ConfigError("topology must be stalk or ring, got '" + topology + "'");
        }
        r.lines.push_back(kv_line({{"topology", topology}, {"rows", std::to_string(t.size())}}));
        r.tables.emplace_back("simulate", std::move(t));
        return r;
    }

    inline RunResult run_study_command(const std::string& sub, const Settings& s)
    {
        const auto cfg = experiment_from(sub, s);
        const auto rep = run_study(cfg);
        RunResult r;
        r.tables = report_tables(rep);
        std::vector<std::pair<std::string, std::string>> line{{"study", study_name(rep.study)}};
        for (const auto& [k, v] : rep.metrics)
            line.emplace_back(k, short_num(v));
        for (const auto& g : rep.grid)
            line.emplace_back("fraction[s=" + short_num(g.s) + "]", short_num(g.fraction));
        line.emplace_back("wall_seconds", short_num(rep.wall_seconds));
        r.lines.push_back(kv_line(line));
        return r;
    }

} // namespace detail

/// Runs one subcommand on resolved settings, writing CSVs and the manifest.
inline int execute(const std::string& sub, const Settings& settings, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    const std::filesystem::path dir = settings.get("out-dir");
    RunManifest manifest(sub, settings, dir / (sub + ".manifest"));
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    int status = kOk;
    try {
        manifest.begin();
        RunResult r;
        if (sub == "constants")
            r = detail::run_constants(settings);
        else if (sub == "quenched")
            r = detail::run_quenched(settings);
        else if (sub == "exact-cdf")
            r = detail::run_exact_cdf(settings);
        else if (sub == "simulate")
            r = detail::run_simulate(settings);
        else
            r = detail::run_study_command(sub, settings);
        for (const auto& [stem, table] : r.tables)
            manifest.emit(dir / (stem + ".csv"), table);
        for (const auto& line : r.lines)
            out << line << "\n";
        status = r.status;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        status = kConfig;
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << "\n";
        status = kPrecondition;
    } catch (const DomainError& e) {
        err << "precondition violated: " << e.what() << "\n";
        status = kPrecondition;
    } catch (const NumericalAlarm& e) {
        err << "numerical alarm: " << e.what() << "\n";
        status = kAlarm;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        status = kFailure;
    }
    try {
        manifest.finish(status == kOk ? "complete" : "failed:" + std::to_string(status), elapsed());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        if (status == kOk)
            status = kConfig;
    }
    return status;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Disordered oriented digital boiling: constants, exact distributions and Monte Carlo studies", "odb"};
    app.require_subcommand(1, 1);

    struct Bound {
        CLI::App* app = nullptr;
        std::string config;
        std::vector<std::pair<std::string, std::unique_ptr<std::string>>> values;
        std::vector<CLI::Option*> options;
    };
    std::map<std::string, Bound> bound;
    for (const auto& sub : subcommands()) {
        auto& b = bound[sub];
        b.app = app.add_subcommand(sub, describe(sub));
        b.app->add_option("--config", b.config, "key=value settings file (a manifest works too)");
        for (const auto& k : schema(sub)) {
            auto holder = std::make_unique<std::string>();
            b.options.push_back(b.app->add_option("--" + k.name, *holder, k.help + " [" + k.fallback + "]"));
            b.values.emplace_back(k.name, std::move(holder));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << "\n\n" << app.help();
        return kConfig;
    }

    const auto chosen = app.get_subcommands();
    const std::string sub = chosen.front()->get_name();
    auto& b = bound.at(sub);
    Settings settings = default_settings(sub);
    try {
        if (!b.config.empty())
            settings.merge_file(b.config);
        for (std::size_t i = 0; i < b.values.size(); ++i)
            if (b.options[i]->count() > 0)
                settings.set(b.values[i].first, *b.values[i].second);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    }
    return execute(sub, settings, out, err);
}

} // namespace odb::cli

#endif // ODB_CLI_HPP
