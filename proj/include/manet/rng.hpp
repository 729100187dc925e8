#ifndef MANET_RNG_HPP
#define MANET_RNG_HPP

#include <cstdint>
#include <string_view>

namespace manet {

/// SplitMix64 generator (Steele, Lea, Vigna). Chosen over std:: engines and
/// distributions because its output is bit-identical on every platform and
/// compiler, which the golden-CSV tests depend on.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double nextDouble() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi].
    double nextRange(double lo, double hi) {
        return lo + nextDouble() * (hi - lo);
    }

    /// Uniform integer in [0, bound) by rejection; bound must be > 0.
    uint64_t nextBelow(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

  private:
    uint64_t state;
};

/// FNV-1a over the label, mixed with the master seed. Every randomized
/// quantity (placement, energies, traffic) draws from its own named stream
/// so that changing the protocol arm can never perturb another stream.
inline uint64_t streamSeed(uint64_t masterSeed, std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h ^= masterSeed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return SplitMix64(h).next();
}

} // namespace manet

#endif
