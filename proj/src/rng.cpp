#include "orthocp/rng.hpp"

#include <cmath>
#include <numbers>

namespace orthocp {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

SeededRng SeededRng::stream(std::uint64_t id) const {
    SeededRng child(0);
    child.key_ = mix64(key_ ^ mix64(id + 0xA0761D6478BD642Full));
    child.counter_ = 0;
    child.has_spare_ = false;
    return child;
}

std::uint64_t SeededRng::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double SeededRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t SeededRng::uniform_index(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t u;
    do {
        u = next_u64();
    } while (u >= bound);
    return u % n;
}

double SeededRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Box-Muller; u1 is kept away from zero so the log is finite.
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace orthocp
