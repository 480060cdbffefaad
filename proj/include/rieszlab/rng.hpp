#pragma once

#include <cmath>
#include <cstdint>

#include "rieszlab/rational.hpp"

namespace rieszlab {

/// Small counter-style generator (splitmix64 core). Deterministic for a
/// given (seed, stream) on every platform; streams are independent, which
/// is what the Monte Carlo workers rely on.
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : state_(mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1))) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0,1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in {0,...,n-1}, n > 0. Rejection sampling, unbiased.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    long int_in(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    /// Exponential with the given rate, by inversion.
    double exponential(double rate) {
        return -std::log1p(-next_double()) / rate;
    }

    /// Rational in [-bound,bound] with denominator <= max_den.
    Rational rational_in(long bound, long max_den) {
        long den = int_in(1, max_den);
        long num = int_in(-bound * den, bound * den);
        Rational q(num, den);
        return q;
    }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    uint64_t state_;
};

}  // namespace rieszlab
