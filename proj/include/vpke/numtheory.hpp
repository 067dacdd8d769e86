#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "vpke/errors.hpp"
#include "vpke/rng.hpp"

namespace vpke {

/// Naturals are non-negative arbitrary-precision integers, represented as
/// mpz_class throughout. GMP keeps them canonical (no leading zero limbs);
/// the canonical text form lives in to_hex/from_hex.

std::size_t bit_length(const mpz_class& n);

/// Lowercase big-endian hex, no leading zeros, "0" for zero.
std::string to_hex(const mpz_class& n);

/// Strict inverse of to_hex: rejects uppercase, leading zeros, empty input
/// and non-hex characters.
mpz_class from_hex(std::string_view s);

/// base^exponent mod modulus by square-and-multiply.
mpz_class mod_pow(const mpz_class& base, const mpz_class& exponent,
                  const mpz_class& modulus);

/// Modular inverse in [1, modulus) via extended Euclid.
/// Throws NotCoprime (carrying the gcd) when no inverse exists.
mpz_class mod_inv(const mpz_class& a, const mpz_class& modulus);

/// Miller-Rabin. Deterministic (fixed witness set) for n < 2^64; above
/// that, `rounds` witnesses derived deterministically from n, so the
/// answer is reproducible. Error probability <= 4^-rounds.
bool is_probable_prime(const mpz_class& n, unsigned rounds = 32);

/// Unique x in [0, m1*m2) with x = r1 (mod m1) and x = r2 (mod m2).
mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1,
                   const mpz_class& r2, const mpz_class& m2);

constexpr std::uint64_t kDefaultRhoFactorBudget = 1ull << 26;

/// Largest prime dividing n, by trial division plus Brent's rho.
/// Desk-scale only; throws WorkBudgetExceeded once the rho iteration
/// budget is spent (callers with a generation-time witness fall back to it).
mpz_class largest_prime_factor(const mpz_class& n,
                               std::uint64_t rho_iteration_budget =
                                   kDefaultRhoFactorBudget);

}  // namespace vpke
