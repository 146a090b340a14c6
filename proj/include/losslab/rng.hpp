#ifndef LOSSLAB_RNG_HPP
#define LOSSLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace losslab {

/// SplitMix64 finalizer; used to derive independent engine seeds from a
/// (seed, stream) pair so replications get disjoint streams.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic random stream: stream k of seed s drives a mersenne twister
/// seeded with splitmix64(splitmix64(s) + k). Variates are generated from raw
/// 53-bit uniforms (no library distribution objects), so output is identical
/// across standard-library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(splitmix64(splitmix64(seed) + stream)) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Exponential with the given rate via inversion; uses -log1p(-u) so the
    /// u = 0 draw maps to 0 rather than to a NaN.
    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace losslab

#endif
