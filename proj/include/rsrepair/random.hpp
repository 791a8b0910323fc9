#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "rsrepair/field.hpp"
#include "rsrepair/rs_code.hpp"

namespace rsrepair {

/// Deterministic stream keyed by (seed, stream). mt19937_64's output is fixed
/// by the standard, and bounded draws use plain rejection instead of
/// std::uniform_int_distribution, whose algorithm is implementation-defined.
class Rng {
  public:
    explicit Rng(u64 seed, u64 stream = 0) : engine_(make_seq(seed, stream)) {}

    u64 next() { return engine_(); }

    /// Uniform in [0, bound).
    u64 below(u64 bound) {
        const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
        u64 x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

  private:
    static std::mt19937_64 make_seq(u64 seed, u64 stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 engine_;
};

inline Polynomial random_polynomial(const PrimeField& F, std::size_t k, Rng& rng) {
    std::vector<u64> c(k);
    for (u64& x : c) x = rng.below(F.modulus());
    return Polynomial(F, std::move(c));
}

} // namespace rsrepair
