#ifndef CONJOPT_RNG_HPP
#define CONJOPT_RNG_HPP

#include <cstdint>

#include "conjopt/complex_vec.hpp"

namespace conjopt {

// Seeded deterministic stream of uniform draws.
//
// Reproducibility contract: the sequence of draws is a pure function of the
// seed, and substream(k) is a pure function of (seed, k). Parallel code
// assigns one substream per trial index, so results are independent of
// thread scheduling and thread count.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    // Derives the substream identified by (seed, index). Independent of how
    // many draws were already taken from this stream.
    RandomSource substream(std::uint64_t index) const;

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53 bits of precision.
    double next_double();

    // Uniform on {0, 1, ..., bound-1}.
    std::uint64_t next_index(std::uint64_t bound);

    // Standard complex Gaussian: independent N(0, 1/... ) parts scaled so
    // that E|z|^2 = 2 (Re and Im each standard normal). One Box-Muller pair
    // per call, nothing cached.
    cplx next_complex_gaussian();

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace conjopt

#endif
