// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   acceptance            all criteria
//   acceptance 3 5 9      a subset
//
// A criterion passes only if its check holds and it finishes inside its
// runtime budget.

#include "odb/cli.hpp"
#include "odb/odb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace odb;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Verdict()> check;
};

std::string num(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Longest path by explicit enumeration of chains, independent of the DP.
int enumerate_paths(const BernoulliMatrix& a)
{
    std::function<int(int, int)> from = [&](int i, int j) {
        int best = 0;
        for (int i2 = i + 1; i2 <= a.rows(); ++i2)
            for (int j2 = j; j2 <= a.cols(); ++j2)
                if (a(i2, j2))
                    best = std::max(best, from(i2, j2));
        return 1 + best;
    };
    int best = 0;
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a(i, j))
                best = std::max(best, from(i, j));
    return best;
}

Verdict coupling()
{
    std::mt19937_64 g(kDefaultSeed);
    std::uniform_int_distribution<int> size(1, 30);
    std::uniform_real_distribution<double> rate(0.0, 1.0);
    std::int64_t checked = 0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        const int m = size(g);
        const int n = size(g);
        std::vector<double> p(static_cast<std::size_t>(n));
        for (auto& v : p) {
            // a few degenerate columns among the random ones
            const double u = rate(g);
            v = u < 0.05 ? 0.0 : (u > 0.95 ? 1.0 : rate(g));
        }
        const auto res = coupling_check(make_environment(p, 1.0), m, kDefaultSeed, k);
        checked += res.checked;
        if (!res.holds)
            return {false, "instance " + std::to_string(k) + " breaks at t=" + std::to_string(res.t) + " x=" + std::to_string(res.x)};
    }
    return {true, "10000 instances, " + std::to_string(checked) + " in-cone sites"};
}

Verdict oracle_equivalence()
{
    // DP against chain enumeration on every matrix with mn <= 12
    std::int64_t matrices = 0;
    for (int m = 1; m <= 12; ++m)
        for (int n = 1; m * n <= 12; ++n)
            for (std::uint32_t mask = 0; mask < (1u << (m * n)); ++mask) {
                BernoulliMatrix a(m, n);
                for (int c = 0; c < m * n; ++c)
                    a.set(c / n + 1, c % n + 1, (mask >> c) & 1u);
                ++matrices;
                if (longest_path(a) != enumerate_paths(a))
                    return {false, "DP differs from enumeration for " + std::to_string(m) + "x" + std::to_string(n) + " mask " + std::to_string(mask)};
            }

    // determinant against brute force on a fixed environment grid
    const double levels[] = {0.0, 0.05, 0.2, 0.35, 0.45, 0.49};
    double worst = 0.0;
    int environments = 0;
    for (int m = 1; m <= 12; ++m)
        for (int n = 1; m * n <= 12; ++n)
            for (int shift = 0; shift < 6; ++shift) {
                std::vector<double> p(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                    p[static_cast<std::size_t>(j)] = levels[(shift + 2 * j + m) % 6];
                const auto env = make_environment(p, 0.5);
                const auto exact = exact_cdf(env, m);
                const auto brute = brute_force_cdf(env, m);
                for (int h = 0; h <= m; ++h)
                    worst = std::max(worst, std::abs(exact.at(h) - brute.at(h)));
                ++environments;
            }
    return {worst <= 1e-8, std::to_string(matrices) + " matrices; " + std::to_string(environments) + " environments, max |det - brute| = " + num(worst)};
}

Verdict determinant_vs_monte_carlo()
{
    const int m = 50;
    const int n = 20;
    const auto env = sample_environment(make_power_edge(3.0), n, kDefaultSeed, 0);
    const auto exact = exact_cdf(env, m);
    const std::int64_t trials = 100000;
    const auto thr = column_thresholds(env.p);
    std::vector<std::int64_t> h(static_cast<std::size_t>(trials));
    parallel_for(h.size(), resolve_workers(0), [&](std::size_t k) { h[k] = sample_longest_path(thr, m, kDefaultSeed, k); });
    const auto mc = empirical_cdf(h, m, n);
    double worst = 0.0;
    int worst_h = 0;
    for (int k = 0; k <= m; ++k) {
        const double f = exact.at(k);
        // divide after the root: f(1-f)/N underflows for f near the denormal range
        const double se = std::sqrt(f * (1.0 - f)) / std::sqrt(static_cast<double>(trials));
        const double diff = std::abs(mc.at(k) - f);
        const double z = diff == 0.0 ? 0.0 : (se > 0.0 ? diff / se : kInf);
        if (z > worst) {
            worst = z;
            worst_h = k;
        }
    }
    return {worst <= 3.0, "max |F_mc - F_det| / SE = " + num(worst) + " at h=" + std::to_string(worst_h)};
}

Verdict closed_form_constants()
{
    const auto model = make_power_edge(3.0);
    const auto cv = critical_values(model);
    const auto k = composite_constants(model, 0.25);
    const double e1 = std::abs(cv.alpha_c_prime - 0.5);
    const double e2 = std::abs(k.theta - 0.5);
    const double e3 = std::abs(k.tau * k.tau - 0.5);
    const double e4 = std::abs(k.beta * k.beta - 2.0);
    const double worst = std::max({e1, e2, e3, e4});
    return {worst <= 1e-10, "alpha_c'=" + num(cv.alpha_c_prime, 15) + " theta=" + num(k.theta, 15) + " tau2=" + num(k.tau * k.tau, 15)
                                + " beta2=" + num(k.beta * k.beta, 15) + " max err " + num(worst)};
}

Verdict saddle_diagnostics()
{
    const auto model = make_power_edge(3.0);
    const double alpha = 0.25;
    const auto lim = composite_constants(model, alpha);

    std::mt19937_64 g(kDefaultSeed);
    std::uniform_real_distribution<double> expo(3.0, 5.0);
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto n = static_cast<std::size_t>(std::llround(std::pow(10.0, expo(g))));
        const auto env = sample_environment(model, n, kDefaultSeed, k);
        const auto qc = solve_un(env, alpha);
        if (!qc.exists)
            return {false, "no saddle root for environment " + std::to_string(k)};
        worst = std::max({worst, qc.sigma1_residual, qc.sigma2_residual});
    }

    std::vector<double> gap;
    std::vector<double> centering;
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto env = sample_environment(model, 100000, kDefaultSeed, 1000 + k);
        const auto qc = solve_un(env, alpha);
        const auto a = saddle_asymptotics(env, qc, lim);
        gap.push_back(a.pole_gap_ratio);
        centering.push_back(a.centering_ratio);
    }
    std::sort(gap.begin(), gap.end());
    std::sort(centering.begin(), centering.end());
    const double mg = sorted_median(gap);
    const double mc = sorted_median(centering);
    const bool ok = worst <= 1e-9 && mg >= 0.9 && mg <= 1.1 && mc >= 0.9 && mc <= 1.1;
    return {ok, "max sigma residual " + num(worst) + "; median pole-gap ratio " + num(mg) + ", median centering ratio " + num(mc)};
}

ExperimentConfig full_scale(Study study)
{
    ExperimentConfig cfg;
    cfg.study = study;
    cfg.workers = 0;
    return cfg;
}

Verdict quenched_gaussian()
{
    auto cfg = full_scale(Study::QuenchedGaussian);
    cfg.m = 4000;
    cfg.trials = 1000;
    const auto rep = run_study(cfg);
    const double ks = rep.metric("ks");
    const double ks0 = rep.metric("ks_unshifted");
    return {ks <= 0.10 && ks0 - ks >= 0.05, "KS=" + num(ks) + " KS without shift=" + num(ks0)};
}

Verdict annealed_extremal()
{
    auto cfg = full_scale(Study::AnnealedExtremal);
    cfg.m = 4000;
    cfg.trials = 2000;
    cfg.s_grid = {0.5, 1.0, 2.0};
    const auto rep = run_study(cfg);
    std::string detail;
    bool ok = true;
    for (const auto& row : rep.grid) {
        ok = ok && std::abs(row.fraction - row.reference) <= 0.10;
        detail += "s=" + num(row.s) + ": " + num(row.fraction) + " vs " + num(row.reference) + "; ";
    }
    return {ok, detail};
}

Verdict largest_rate()
{
    auto cfg = full_scale(Study::LargestRate);
    cfg.columns = 10000;
    cfg.trials = 10000;
    cfg.s_grid = {1.0};
    const auto rep = run_study(cfg);
    const double err = std::abs(rep.grid[0].fraction - rep.grid[0].reference);
    return {err <= 0.02, "fraction " + num(rep.grid[0].fraction) + " vs " + num(rep.grid[0].reference)};
}

Verdict exponents()
{
    struct Case {
        double eta;
        double target;
        std::int64_t t_max;
        std::int64_t trials;
        double tol;
        const char* label;
    };
    const Case cases[] = {{1.0, 0.339, 3000, 300, 0.08, "reduced eta=1"},
                          {3.0, 0.517, 3000, 300, 0.08, "reduced eta=3"},
                          {1.0, 0.339, 10000, 1000, 0.06, "full eta=1"},
                          {3.0, 0.517, 10000, 1000, 0.06, "full eta=3"}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto start = std::chrono::steady_clock::now();
        auto cfg = full_scale(Study::Exponent);
        cfg.disorder.eta = c.eta;
        cfg.width = 600;
        cfg.t_max = c.t_max;
        cfg.trials = c.trials;
        const auto rep = run_study(cfg);
        const double slope = rep.metric("slope");
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = std::abs(slope - c.target) <= c.tol;
        // the reduced preset has its own 10 minute budget
        if (c.t_max == 3000)
            pass = pass && secs < 600.0;
        ok = ok && pass;
        detail += std::string(c.label) + " slope " + num(slope) + (pass ? "" : " (out)") + " [" + num(secs, 3) + " s]; ";
    }
    return {ok, detail};
}

Verdict time_constant_check()
{
    auto cfg = full_scale(Study::TimeConstant);
    cfg.alpha = 0.25;
    cfg.m = 10000;
    cfg.trials = 200;
    const auto rep = run_study(cfg);
    const double rel = rep.metric("relative_error");
    return {rel <= 0.01, "mean H/m " + num(rep.metric("mean_h_over_m"), 6) + " vs c " + num(rep.metric("c"), 6) + ", relative error " + num(rel)
                             + " (SE " + num(rep.metric("std_error")) + ")"};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int call_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "odb");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Verdict reproducibility()
{
    const auto root = fs::temp_directory_path() / "odb-acceptance-rerun";
    fs::remove_all(root);
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {"study-theorem1", {"--m", "400", "--trials", "60"}},
        {"study-theorem2", {"--m", "400", "--trials", "60"}},
        {"study-pure", {"--m", "400", "--trials", "60"}},
        {"study-lemma33", {"--n", "1000", "--trials", "500"}},
        {"study-exponent", {"--width", "60", "--t-max", "400", "--trials", "40"}},
        {"study-speed", {"--width", "60", "--t-max", "400", "--trials", "8"}},
        {"study-time-constant", {"--m", "400", "--trials", "20"}},
        {"exact-cdf", {"--m", "20", "--n", "8"}},
        {"simulate", {"--topology", "ring", "--width", "50", "--t-max", "200", "--trials", "4"}}};
    std::size_t files = 0;
    for (const auto& [sub, extra] : runs) {
        const auto a = root / (sub + "-a");
        const auto b = root / (sub + "-b");
        auto args = std::vector<std::string>{sub, "--workers", "1", "--out-dir", a.string()};
        args.insert(args.end(), extra.begin(), extra.end());
        if (call_cli(args) != 0)
            return {false, sub + " failed"};
        const auto manifest = a / (sub + ".manifest");
        if (call_cli({sub, "--config", manifest.string(), "--workers", "4", "--out-dir", b.string()}) != 0)
            return {false, sub + " rerun failed"};
        std::istringstream in(slurp(manifest));
        std::string line;
        std::size_t listed = 0;
        while (std::getline(in, line)) {
            if (!line.starts_with("manifest.output."))
                continue;
            const auto name = line.substr(line.find('=') + 1);
            ++listed;
            if (slurp(a / name) != slurp(b / name) || slurp(a / name).empty())
                return {false, sub + ": " + name + " differs between worker counts"};
        }
        if (listed == 0)
            return {false, sub + ": manifest lists no outputs"};
        files += listed;
    }
    fs::remove_all(root);
    return {true, std::to_string(runs.size()) + " subcommands, " + std::to_string(files) + " CSVs identical for 1 and 4 workers"};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria{
        {1, "coupling identity", 60, coupling},
        {2, "oracle equivalence", 300, oracle_equivalence},
        {3, "determinant vs Monte Carlo", 300, determinant_vs_monte_carlo},
        {4, "closed-form constants", 10, closed_form_constants},
        {5, "saddle diagnostics", 600, saddle_diagnostics},
        {6, "quenched Gaussian law", 1800, quenched_gaussian},
        {7, "annealed extremal law", 3600, annealed_extremal},
        {8, "largest rate law", 60, largest_rate},
        {9, "roughness exponents", 3600, exponents},
        {10, "time constant", 600, time_constant_check},
        {11, "manifest reproducibility", 600, reproducibility},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i)
        wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && !wanted.contains(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = v.pass && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail << " [" << num(secs, 4) << " s of "
                  << num(c.budget_seconds, 4) << " s" << (in_time ? "" : ", over budget") << "]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
