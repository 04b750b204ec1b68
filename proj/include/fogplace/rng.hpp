#pragma once

#include <cstdint>
#include <random>

namespace fogplace {

/// Mixes a 64-bit value through the splitmix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a (stream, index) pair.
/// Used to split one scenario seed into independent per-repetition /
/// per-purpose streams so parallel execution order cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ splitmix64(stream + 1)) + index);
}

/// Seedable deterministic generator. The engine (mt19937_64) and the value
/// mappings below are fully specified, so sequences are identical on every
/// platform — std::uniform_*_distribution is implementation-defined and is
/// deliberately not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint32_t uniform_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    /// Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + unit * (hi - lo);
    }

    /// Bernoulli draw with probability p.
    bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace fogplace
