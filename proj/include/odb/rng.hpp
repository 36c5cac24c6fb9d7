#ifndef ODB_RNG_HPP
#define ODB_RNG_HPP

// Counter-based random numbers.
//
// Every random quantity in the toolkit is a pure function of
// (seed, stream tag, trial, two coordinates).  Nothing carries state between
// draws, so any single trial (or a single matrix entry) can be regenerated in
// isolation and results do not depend on how trials are scheduled.
//
// Counter layout for one Philox4x32-10 block:
//   word 0 : first coordinate  (matrix column / ring site / sample index)
//   word 1 : second coordinate (matrix row / time), divided by 4
//   word 2 : trial id
//   word 3 : stream tag
// The four output words serve four consecutive values of the second
// coordinate, so DP sweeps and ring updates pay one block per 4 cells.

#include <array>
#include <cstdint>

namespace odb {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Stream tags keep independent uses of one master seed apart.
enum class StreamTag : std::uint32_t {
    MatrixNoise = 1,  // Bernoulli entries a(i,j); shared by paths and stalk growth
    RingNoise = 2,    // coin flips on the periodic ring, keyed by (site, time)
    Environment = 3,  // disorder draws p_j
    RingRates = 4,    // per-site rates of a ring
};

/// A keyed family of uniform words: value(first, second) for one (seed, tag, trial).
class CounterStream {
public:
    constexpr CounterStream(std::uint64_t seed, StreamTag tag, std::uint64_t trial) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_(static_cast<std::uint32_t>(trial)),
          tag_(static_cast<std::uint32_t>(tag) | (static_cast<std::uint32_t>(trial >> 32) << 8))
    {
    }

    /// Four consecutive words for second coordinates 4*block .. 4*block+3.
    constexpr Philox4x32::Counter block(std::uint32_t first, std::uint32_t second_block) const noexcept
    {
        return Philox4x32::generate({first, second_block, trial_, tag_}, key_);
    }

    constexpr std::uint32_t word(std::uint32_t first, std::uint32_t second) const noexcept
    {
        return block(first, second >> 2)[second & 3u];
    }

    /// Uniform double in the open interval (0,1) with 53 random bits.
    double uniform(std::uint32_t index) const noexcept
    {
        const auto w = block(index, 0);
        const std::uint64_t bits = (std::uint64_t{w[0]} << 21) ^ (std::uint64_t{w[1]} >> 11);
        return (static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) + 0.5) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
    std::uint32_t trial_;
    std::uint32_t tag_;
};

/// Threshold such that P(word < threshold) equals p up to 2^-32.  p=0 and p=1 are exact.
inline std::uint64_t bernoulli_threshold(double p) noexcept
{
    if (!(p > 0.0))
        return 0;
    if (p >= 1.0)
        return std::uint64_t{1} << 32;
    return static_cast<std::uint64_t>(p * 0x1.0p32 + 0.5);
}

} // namespace odb

#endif // ODB_RNG_HPP
