#ifndef PEA_RNG_HPP
#define PEA_RNG_HPP

#include <cstdint>

namespace pea {

// splitmix64: deterministic across platforms, good enough for sampling
// perturbation coefficients. Every randomized step records its seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform integer in [lo, hi], inclusive
    long range(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    // small nonzero integer in [-k, k] \ {0}
    long small_nonzero(long k) {
        long v = range(1, 2 * k);
        return v <= k ? v : k - v;  // 1..k, -1..-k
    }

  private:
    std::uint64_t state_;
};

}  // namespace pea

#endif
