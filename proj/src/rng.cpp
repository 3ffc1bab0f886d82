#include "conjopt/rng.hpp"

#include <cmath>

namespace conjopt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

RandomSource RandomSource::substream(std::uint64_t index) const {
    // Substream identity depends only on (seed, index), never on the
    // current draw position.
    std::uint64_t child = mix64(seed_ + kGolden * (index + 1)) ^ mix64(seed_ ^ kGolden);
    return RandomSource(child);
}

std::uint64_t RandomSource::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RandomSource::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::next_index(std::uint64_t bound) {
    // Multiply-shift mapping; bias is O(bound / 2^64), irrelevant here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

cplx RandomSource::next_complex_gaussian() {
    double u1 = 1.0 - next_double(); // (0, 1]
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    return cplx(r * std::cos(t), r * std::sin(t));
}

} // namespace conjopt
