#pragma once

#include <cstdint>
#include <random>

namespace fracbvp::prop {

// Fixed-seed generator for property tests; every run sees the same cases.
class Gen {
public:
    explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    /// Uniform on (lo, hi], for half-open ranges such as alpha in (2, 3].
    double open_closed(double lo, double hi) {
        return hi - (uniform(lo, hi) - lo);
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

} // namespace fracbvp::prop
