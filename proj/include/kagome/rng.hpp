// rng.hpp
// Counter-based deterministic RNG.  Each draw hashes (seed, counter) with the
// splitmix64 finalizer, so streams are reproducible across platforms and
// independent of call order between differently-seeded generators.

#pragma once

#include <cstdint>

namespace kagome {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * ++ctr_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) without modulo bias (rejection from the top).
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do
            v = next_u64();
        while (v >= lim);
        return v % n;
    }

    double next_unit() {  // uniform in [0,1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    Rng fork(std::uint64_t stream) const {  // independent substream
        Rng r(seed_ ^ (0x6a09e667f3bcc909ULL + stream * 0x510e527fade682d1ULL));
        return r;
    }

  private:
    std::uint64_t seed_;
    std::uint64_t ctr_ = 0;
};

}  // namespace kagome
