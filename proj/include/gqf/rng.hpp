// SPDX-License-Identifier: Apache-2.0
#pragma once

// Self-contained RNG so Monte Carlo results are bit-reproducible across
// platforms and standard library versions (std::normal_distribution is not
// pinned by the standard). splitmix64 streams, one per batch, keyed by
// hashing the user seed with the batch index; normal pairs by the Marsaglia
// polar method.

#include <cstdint>
#include <cmath>
#include <utility>

namespace gqf {

struct SplitMix64 {
    std::uint64_t state{};

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Decorrelate (seed, stream) pairs: two mixing rounds are plenty for distinct
// streams from consecutive indices.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + stream * 0x106689d45497fdb5ULL));
    g.next();
    return g.next();
}

// Two independent standard normals (polar method; rejection rate ~21%).
inline std::pair<double, double> normal_pair(SplitMix64& g) {
    for (;;) {
        const double u = 2.0 * g.next_unit() - 1.0;
        const double v = 2.0 * g.next_unit() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            const double f = std::sqrt(-2.0 * std::log(s) / s);
            return {u * f, v * f};
        }
    }
}

} // namespace gqf
