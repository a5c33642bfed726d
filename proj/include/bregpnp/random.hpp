#pragma once

#include <cstdint>
#include <random>

namespace bregpnp {

/// Seeded generator with distribution code of our own, so that sample streams
/// are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller, both variates used).
    double normal();
    /// Poisson variate: inversion for mean < 10, PTRS transformed rejection otherwise.
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace bregpnp
