#pragma once

#include <cstdint>

namespace orthocp {

/// Counter-based seeded generator. Every draw is a hash of (key, counter),
/// so derived streams never share state and any draw sequence replays
/// exactly from the seed. Streams for independent work items (one per
/// extraction, one per sweep instance) make parallel runs reproducible.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    /// Derives an independent stream; identical (seed, id) pairs give
    /// identical streams.
    SeededRng stream(std::uint64_t id) const;

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n); unbiased via rejection.
    std::uint64_t uniform_index(std::uint64_t n);
    /// Standard normal (Box-Muller, pairwise).
    double normal();

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace orthocp
