#pragma once

#include <gmpxx.h>

#include <optional>
#include <string_view>
#include <utility>

#include "vpke/numtheory.hpp"
#include "vpke/rng.hpp"

namespace vpke {

enum class ResidueProfile { P3mod8, Q7mod8 };

struct SystemParams {
    unsigned modulus_bits = 64;
    unsigned mr_rounds = 32;
    /// Minimum bit length of the required prime factor of (p+1)/4 / (q+1)/8.
    unsigned factor_threshold_bits = 16;
    bool strict_plus_form = true;

    /// Named profiles: toy (16-bit N), desk (64), bench (96), production (768).
    static SystemParams profile(std::string_view name);

    /// Generic parameter set for a given modulus size; threshold scales as
    /// modulus_bits/4 (with a floor of 2).
    static SystemParams for_bits(unsigned modulus_bits);
};

struct PublicKey {
    mpz_class n;  // modulus N = p*q
    mpz_class y;  // 16^S mod N
};

struct PrivateKey {
    mpz_class p;  // prime, 3 mod 8, (p-1)/2 prime
    mpz_class q;  // prime, 7 mod 8, (q-1)/2 prime
    mpz_class s;  // secret exponent, 1 <= s < p'*q'
    // prime witnesses that (p+1)/4 and (q+1)/8 have a large prime factor,
    // kept from generation because recomputing them means factoring
    std::optional<mpz_class> plus_witness_p;
    std::optional<mpz_class> plus_witness_q;
};

struct FormPrime {
    mpz_class value;
    std::optional<mpz_class> plus_witness;
};

/// Random prime of exactly `bits` bits with r = 3 (mod 8) [P3mod8] or
/// r = 7 (mod 8) [Q7mod8] and (r-1)/2 prime. Under strict_plus_form the
/// candidates are drawn from an arithmetic progression that plants a prime
/// witness of factor_threshold_bits bits inside (r+1)/4 resp. (r+1)/8.
FormPrime generate_form_prime(unsigned bits, ResidueProfile profile,
                              const SystemParams& params, RandomSource& rng);

struct ModulusParts {
    FormPrime p;
    FormPrime q;
};

ModulusParts generate_modulus(const SystemParams& params, RandomSource& rng);

/// Checks the form invariants on (p, q), samples S uniform in [1, p'q'),
/// and returns the keypair. Throws InvalidPrimeForm on bad inputs.
std::pair<PublicKey, PrivateKey> key_gen(const mpz_class& p, const mpz_class& q,
                                         RandomSource& rng);

/// key_gen with a caller-chosen secret exponent (test vectors, rekey).
std::pair<PublicKey, PrivateKey> key_from_secret(const mpz_class& p,
                                                 const mpz_class& q,
                                                 const mpz_class& s);

/// Fresh S' != S over the same (p, q, N). The escrow deposit is untouched.
std::pair<PublicKey, PrivateKey> rekey(const PrivateKey& key, RandomSource& rng);

/// generate_modulus + key_gen, carrying the plus-form witnesses into the key.
std::pair<PublicKey, PrivateKey> generate_keypair(const SystemParams& params,
                                                  RandomSource& rng);

}  // namespace vpke
