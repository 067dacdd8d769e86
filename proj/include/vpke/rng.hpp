#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>

namespace vpke {

/// Deterministic randomness source. Every randomized operation in the
/// library takes one of these explicitly; there is no hidden global state,
/// so a fixed seed reproduces a run bit for bit.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    /// Seeds from OS entropy.
    RandomSource() {
        std::random_device rd;
        gen_.seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    }

    std::uint64_t word() { return gen_(); }

    /// Uniform in [0, bound). bound must be positive.
    mpz_class below(const mpz_class& bound);

    /// Uniform in [lo, hi).
    mpz_class range(const mpz_class& lo, const mpz_class& hi) {
        return lo + below(hi - lo);
    }

    /// Uniform value of exactly `bits` bits (top bit set). bits >= 1.
    mpz_class exact_bits(std::size_t bits);

private:
    mpz_class raw_bits(std::size_t bits);

    std::mt19937_64 gen_;
};

}  // namespace vpke
