#ifndef KMPP_RNG_HPP
#define KMPP_RNG_HPP

#include <cstddef>
#include <cstdint>

namespace kmpp {

/**
 * Deterministic 64-bit random stream (splitmix64).
 *
 * The state is a counter advanced by a fixed odd increment and hashed on
 * output, so the sequence for a given seed is reproducible across platforms
 * and independent of how many values were drawn elsewhere. Full period 2^64.
 *
 * A stream is single-owner: the coordinator draws all randomness, workers
 * never touch it.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform real in [0, 1), 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). n must be >= 1.
    std::size_t uniform_index(std::size_t n) {
        auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace kmpp

#endif // KMPP_RNG_HPP
