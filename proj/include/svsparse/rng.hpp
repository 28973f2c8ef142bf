#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace svsparse {

// Splittable counter-based PRNG. One 64-bit master seed determines every
// random choice; child streams are derived by hashing (seed, label) so that
// independent pipeline stages are reproducible regardless of execution order.
// Bounded sampling is hand-rolled (Lemire) because the standard library's
// distributions are implementation-defined and would break byte-stable output.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(mix(seed)) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Derives an independent stream; label picks the branch.
    Rng child(uint64_t label) const {
        return Rng(mix(state_ ^ mix(label ^ 0xA0761D6478BD642Full)));
    }

    // Uniform in [0, bound) without modulo bias; bound >= 1.
    uint64_t bounded(uint64_t bound) {
        for (;;) {
            uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            uint64_t lo = static_cast<uint64_t>(m);
            if (lo >= bound || lo >= static_cast<uint64_t>(-bound) % bound)
                return static_cast<uint64_t>(m >> 64);
        }
    }

    bool coin() { return (next() >> 63) != 0; }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
        return z ^ (z >> 33);
    }

    uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.bounded(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace svsparse
