#pragma once

#include <cstdint>
#include <random>

namespace scoda {

/// Seedable generator with a fully specified output sequence.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so bounded integers
/// and doubles are derived here instead; a given seed therefore replays the
/// same draws on every platform and standard library.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's multiply-shift with rejection of the biased low region.
        unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe to pass to log().
    double uniform_open_zero() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the index-th independent trial of an experiment seeded with master.
/// Depends only on (master, index), so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index));
}

/// Fresh seed from system entropy, for runs where the user gave none.
std::uint64_t entropy_seed();

}  // namespace scoda
