#ifndef ODB_CDF_HPP
#define ODB_CDF_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace odb {

enum class Provenance { Determinant, BruteForce, Empirical };

inline const char* provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::Determinant: return "determinant";
    case Provenance::BruteForce: return "brute-force";
    case Provenance::Empirical: return "empirical";
    }
    return "?";
}

/// Distribution function h -> P(H <= h) for h = 0..m of the longest path in an m x n matrix.
struct CdfTable {
    int m = 0;
    int n = 0;
    std::vector<double> values;
    Provenance provenance = Provenance::Empirical;
    /// Determinant entries: pivot growth factor of the factorization (1 elsewhere).
    std::vector<double> growth;
    /// Entries whose factorization tripped the conditioning alarm.
    std::vector<bool> flagged;

    double at(int h) const
    {
        if (h < 0)
            return 0.0;
        if (h >= static_cast<int>(values.size()))
            return 1.0;
        return values[static_cast<std::size_t>(h)];
    }
};

/// Empirical CDF of integer samples in [0, m].
inline CdfTable empirical_cdf(std::span<const std::int64_t> samples, int m, int n)
{
    CdfTable t;
    t.m = m;
    t.n = n;
    t.provenance = Provenance::Empirical;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(m) + 1, 0);
    for (auto v : samples)
        ++counts[static_cast<std::size_t>(std::clamp<std::int64_t>(v, 0, m))];
    t.values.resize(counts.size());
    std::int64_t acc = 0;
    for (std::size_t h = 0; h < counts.size(); ++h) {
        acc += counts[h];
        t.values[h] = samples.empty() ? 0.0 : static_cast<double>(acc) / static_cast<double>(samples.size());
    }
    t.growth.assign(t.values.size(), 1.0);
    t.flagged.assign(t.values.size(), false);
    return t;
}

} // namespace odb

#endif // ODB_CDF_HPP
