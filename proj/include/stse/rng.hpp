// rng.hpp
// Portable random streams. std::normal_distribution and friends are
// implementation-defined, so the variates are derived here from the raw
// mt19937_64 output, which the standard pins down bit for bit.

#pragma once

#include <cstdint>
#include <random>

namespace stse {

std::uint64_t splitmix64(std::uint64_t x);

// Independent seed for sub-stream `index` of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1), 53 random bits.
    double uniform();

    // Standard normal via Box-Muller; caches the second variate.
    double normal();

    // Uniform integer in [0, n), n > 0, unbiased (Lemire's method).
    std::uint64_t below(std::uint64_t n);

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace stse
