#pragma once

#include <cstdint>
#include <random>

namespace mobnet {

/// Independent random streams derived from one root seed. Keeping them
/// apart means changing the traffic load never perturbs node trajectories.
enum class Stream : std::uint64_t {
    Init = 1,
    Motion = 2,
    Traffic = 3,
};

/// Thin wrapper over mt19937_64. The distributions are written out by hand
/// instead of using <random>'s, whose output is implementation-defined; this
/// keeps runs bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seeds a stream from (root, stream) through splitmix64 so that nearby
    /// root seeds give unrelated streams.
    static Rng derive(std::uint64_t root, Stream stream);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n); n must be positive. Lemire's method.
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mobnet
