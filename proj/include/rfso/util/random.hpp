#pragma once

#include <cstdint>
#include <random>

namespace rfso::util {

// Deterministic random stream. All variate transforms are implemented here
// (not via std:: distributions, whose algorithms differ across standard
// libraries), so a fixed seed yields identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Derives an independent stream for shard `index` from a master seed
    // (splitmix64 of seed + index + 1).
    static Rng shard_stream(std::uint64_t master_seed, std::uint64_t index);

    double uniform();            // (0, 1)
    double normal();             // standard normal, Box-Muller
    double exponential();        // rate 1
    double gamma(double shape);  // unit scale, Marsaglia-Tsang

private:
    std::mt19937_64 eng_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace rfso::util
