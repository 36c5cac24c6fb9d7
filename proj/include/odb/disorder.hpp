#ifndef ODB_DISORDER_HPP
#define ODB_DISORDER_HPP

// Rate distributions F on [0,b), b<1, and quenched environments drawn from them.
//
// Two representations are supported:
//   * power-edge: F(s) = 1 - ((b-s)/b)^eta on [0,b], so the edge tail is
//     G(x) = (x/b)^eta.  With b = 1/2 this is F(s) = 1-(1-2s)^eta.
//   * atoms: finitely many (value, probability) pairs; a point mass is the
//     one-atom case.
//
// Moment functionals <f(p)> are integrals against dF.  For the power-edge
// family the bracket functionals that carry an endpoint singularity at p=b
// have closed forms; everything else goes through tanh-sinh quadrature after
// the substitution q = b*s^(1/eta), which turns dF into ds on [0,1].

#include "odb/error.hpp"
#include "odb/numeric.hpp"
#include "odb/rng.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace odb {

enum class Family { PowerEdge, PointMass, Tabulated };

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::PowerEdge: return "power";
    case Family::PointMass: return "point";
    case Family::Tabulated: return "table";
    }
    return "?";
}

struct Atom {
    double value;
    double probability;
};

class DisorderModel {
public:
    /// F(s) = 1 - ((b-s)/b)^eta.  The weak (a)-(c) and strong (a')-(b') tail
    /// conditions both hold exactly when eta > 2.
    static DisorderModel power_edge(double eta, double b = 0.5)
    {
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw DomainError("power-edge family needs eta > 0, got " + std::to_string(eta));
        if (!(b > 0.0 && b < 1.0))
            throw DomainError("power-edge family needs 0 < b < 1, got " + std::to_string(b));
        DisorderModel m;
        m.family_ = Family::PowerEdge;
        m.eta_ = eta;
        m.b_ = b;
        m.weak_ = eta > 2.0;
        m.strong_ = eta > 2.0;
        return m;
    }

    static DisorderModel point_mass(double p0)
    {
        auto m = tabulated({{p0, 1.0}});
        m.family_ = Family::PointMass;
        return m;
    }

    /// Discrete family.  Probabilities must be positive and sum to 1 (within 1e-9,
    /// then renormalized); values must lie in [0,1).  Equal values are merged.
    static DisorderModel tabulated(std::vector<Atom> atoms)
    {
        if (atoms.empty())
            throw DomainError("tabulated family needs at least one atom");
        double total = 0.0;
        for (const auto& a : atoms) {
            if (!(a.value >= 0.0 && a.value < 1.0))
                throw DomainError("atom value must lie in [0,1), got " + std::to_string(a.value));
            if (!(a.probability > 0.0))
                throw DomainError("atom probability must be positive");
            total += a.probability;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("atom probabilities sum to " + std::to_string(total) + ", not 1");
        std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.value > y.value; });
        std::vector<Atom> merged;
        for (const auto& a : atoms) {
            if (!merged.empty() && merged.back().value == a.value)
                merged.back().probability += a.probability / total;
            else
                merged.push_back({a.value, a.probability / total});
        }
        DisorderModel m;
        m.family_ = Family::Tabulated;
        m.b_ = merged.front().value;
        m.atoms_ = std::move(merged);
        // An atom at the edge gives G(0) > 0, which violates every tail condition.
        m.weak_ = false;
        m.strong_ = false;
        return m;
    }

    Family family() const noexcept { return family_; }
    double edge() const noexcept { return b_; }
    double eta() const noexcept { return eta_; }
    /// Atoms sorted by descending value (ascending distance to the edge).
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    bool is_discrete() const noexcept { return family_ != Family::PowerEdge; }
    bool weak_conditions() const noexcept { return weak_; }
    bool strong_conditions() const noexcept { return strong_; }

    /// F(s) = P(p <= s).
    double cdf(double s) const
    {
        if (family_ == Family::PowerEdge) {
            if (s < 0.0)
                return 0.0;
            if (s >= b_)
                return 1.0;
            return 1.0 - std::pow((b_ - s) / b_, eta_);
        }
        double acc = 0.0;
        for (const auto& a : atoms_)
            if (a.value <= s)
                acc += a.probability;
        return std::min(acc, 1.0);
    }

private:
    DisorderModel() = default;

    Family family_ = Family::PowerEdge;
    double b_ = 0.5;
    double eta_ = 0.0;
    std::vector<Atom> atoms_;
    bool weak_ = false;
    bool strong_ = false;
};

inline DisorderModel make_power_edge(double eta, double b = 0.5)
{
    return DisorderModel::power_edge(eta, b);
}

/// G(x) = 1 - F((b-x)-) = P(b - p <= x), for 0 <= x <= b.
inline double g_tail(const DisorderModel& model, double x)
{
    const double b = model.edge();
    if (!(x >= 0.0 && x <= b))
        throw DomainError("g_tail argument must lie in [0,b]");
    if (model.family() == Family::PowerEdge)
        return std::pow(x / b, model.eta());
    double acc = 0.0;
    for (const auto& a : model.atoms())
        if (b - a.value <= x)
            acc += a.probability;
    return std::min(acc, 1.0);
}

/// Left-continuous inverse G^{-1}(y) = sup{x : G(x) < y}, with G^{-1}(0) = 0.
inline double g_inverse(const DisorderModel& model, double y)
{
    if (!(y >= 0.0 && y <= 1.0))
        throw DomainError("g_inverse argument must lie in [0,1]");
    const double b = model.edge();
    if (model.family() == Family::PowerEdge)
        return y >= 1.0 ? b : b * std::pow(y, 1.0 / model.eta());
    if (y <= 0.0)
        return 0.0;
    double acc = 0.0;
    for (const auto& a : model.atoms()) {
        acc += a.probability;
        if (acc >= y * (1.0 - 1e-15))
            return b - a.value;
    }
    return b - model.atoms().back().value;
}

/// The bracket functionals of the growth model.
enum class Bracket {
    RateRatio,          // p/(1-p)
    EdgeCurvature,      // p(1-p)/(b-p)^2
    EdgeShift,          // p/(b-p)
    Curvature,          // p(1-p)/(a-p)^2, a >= b
    Shift,              // p/(a-p), a >= b
};

namespace detail {

    /// Integrand in terms of (p, q = b - p) so that a - p = (a - b) + q keeps
    /// full relative accuracy near the edge.
    inline double bracket_value(Bracket kind, double p, double q, double gap)
    {
        if (p == 0.0)
            return 0.0;
        switch (kind) {
        case Bracket::RateRatio: return p / (1.0 - p);
        case Bracket::EdgeCurvature: return p * (1.0 - p) / (q * q);
        case Bracket::EdgeShift: return p / q;
        case Bracket::Curvature: return p * (1.0 - p) / ((gap + q) * (gap + q));
        case Bracket::Shift: return p / (gap + q);
        }
        return 0.0;
    }

    /// E[q^k] under G(x) = (x/b)^eta; infinite when eta + k <= 0.
    inline double power_edge_q_moment(double eta, double b, int k)
    {
        if (eta + k <= 0.0)
            return kInf;
        return eta * std::pow(b, k) / (eta + k);
    }

    /// Integral over s in (0,1) of g(s); infinite when tanh-sinh cannot converge.
    template <class G>
    double unit_interval_integral(G&& g)
    {
        thread_local boost::math::quadrature::tanh_sinh<double> integrator;
        double error = 0.0;
        double l1 = 0.0;
        double value = 0.0;
        try {
            value = integrator.integrate(g, 0.0, 1.0, 1e-13, &error, &l1);
        } catch (const std::exception&) {
            return kInf;
        }
        if (!std::isfinite(value) || error > 1e-10 * std::max(1.0, std::abs(value)))
            return kInf;
        return value;
    }

    template <class F>
    double power_edge_expectation(const DisorderModel& model, F&& f_of_pq)
    {
        const double b = model.edge();
        const double inv_eta = 1.0 / model.eta();
        return unit_interval_integral([&](double s) {
            const double q = b * std::pow(s, inv_eta);
            return f_of_pq(b - q, q);
        });
    }

} // namespace detail

/// <f(p)> for one of the bracket functionals.  `a` is required for the
/// a-parameterized brackets and must satisfy a >= b; at a == b they reduce to
/// the edge brackets.  Divergent integrals return +infinity.
inline double moment(const DisorderModel& model, Bracket kind, double a = kInf)
{
    const double b = model.edge();
    if (kind == Bracket::Curvature || kind == Bracket::Shift) {
        if (!(a >= b) || !std::isfinite(a))
            throw DomainError("bracket parameter a must satisfy b <= a < inf");
        if (a == b)
            kind = kind == Bracket::Curvature ? Bracket::EdgeCurvature : Bracket::EdgeShift;
    }
    const double gap = std::isfinite(a) ? a - b : 0.0;

    if (model.is_discrete()) {
        CompensatedSum acc;
        for (const auto& atom : model.atoms()) {
            const double q = b - atom.value;
            const double v = detail::bracket_value(kind, atom.value, q, gap);
            if (!std::isfinite(v))
                return kInf;
            acc += atom.probability * v;
        }
        return acc.value();
    }

    const double eta = model.eta();
    if (kind == Bracket::EdgeCurvature) {
        // (b-q)(1-b+q) = b(1-b) + (2b-1) q - q^2
        if (eta <= 2.0)
            return kInf;
        using detail::power_edge_q_moment;
        return b * (1.0 - b) * power_edge_q_moment(eta, b, -2) + (2.0 * b - 1.0) * power_edge_q_moment(eta, b, -1) - 1.0;
    }
    if (kind == Bracket::EdgeShift) {
        if (eta <= 1.0)
            return kInf;
        return 1.0 / (eta - 1.0);
    }
    return detail::power_edge_expectation(
        model, [&](double p, double q) { return detail::bracket_value(kind, p, q, gap); });
}

/// <f(p)> for an arbitrary integrand.  Divergence is detected by quadrature
/// non-convergence (continuous families) or a non-finite atom value.
inline double moment(const DisorderModel& model, const std::function<double(double)>& f)
{
    if (model.is_discrete()) {
        CompensatedSum acc;
        for (const auto& atom : model.atoms()) {
            const double v = f(atom.value);
            if (!std::isfinite(v))
                return kInf;
            acc += atom.probability * v;
        }
        return acc.value();
    }
    return detail::power_edge_expectation(model, [&](double p, double) { return f(p); });
}

/// Ordered quenched sample p_1 >= ... >= p_n together with q_j = b - p_j and r_j = p_j/(1-p_j).
struct Environment {
    std::vector<double> p;
    std::vector<double> q;
    std::vector<double> r;
    double b = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    std::size_t size() const noexcept { return p.size(); }
};

/// Sorts the rates and derives q and r.  Rates must lie in [0,b].
inline Environment make_environment(std::vector<double> rates, double b)
{
    for (double v : rates)
        if (!(v >= 0.0 && v <= b))
            throw DomainError("environment rate outside [0,b]");
    std::sort(rates.begin(), rates.end(), std::greater<>());
    Environment env;
    env.b = b;
    env.q.reserve(rates.size());
    env.r.reserve(rates.size());
    for (double v : rates) {
        env.q.push_back(b - v);
        env.r.push_back(v / (1.0 - v));
    }
    env.p = std::move(rates);
    return env;
}

/// n i.i.d. draws p = b - G^{-1}(U), unsorted (site order).
inline std::vector<double> sample_rates(const DisorderModel& model, std::size_t n, const CounterStream& stream)
{
    std::vector<double> p(n);
    const double b = model.edge();
    for (std::size_t j = 0; j < n; ++j) {
        const double u = stream.uniform(static_cast<std::uint32_t>(j));
        p[j] = std::max(0.0, b - g_inverse(model, u));
    }
    return p;
}

/// Ordered environment of size n; environment `index` of the given seed.
inline Environment sample_environment(const DisorderModel& model, std::size_t n, std::uint64_t seed, std::uint64_t index = 0)
{
    if (n == 0)
        throw DomainError("environment size must be positive");
    Environment env = make_environment(sample_rates(model, n, CounterStream(seed, StreamTag::Environment, index)), model.edge());
    env.seed = seed;
    env.index = index;
    return env;
}

} // namespace odb

#endif // ODB_DISORDER_HPP
