#pragma once

#include <cstdint>

namespace mvd {

// PCG-XSH-RR 64/32 (O'Neill). Fixed algorithm so that seeded runs are
// reproducible across platforms and library versions.
class Pcg32 {
  public:
    static constexpr uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

    explicit Pcg32(uint64_t seed, uint64_t stream = kDefaultStream) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next();
        state_ += seed;
        next();
    }

    uint32_t next() {
        const uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        const uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    // Unbiased bounded draw in [0, bound), bound >= 1.
    uint32_t bounded(uint32_t bound) {
        const uint32_t threshold = (-bound) % bound;
        for (;;) {
            const uint32_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 32 bits of randomness.
    double uniform() { return next() * 0x1.0p-32; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    uint64_t state_;
    uint64_t inc_;
};

}  // namespace mvd
