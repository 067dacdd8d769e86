#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "vpke/keygen.hpp"
#include "vpke/numtheory.hpp"
#include "vpke/rng.hpp"

namespace vpke {

/// ElGamal-style encryption in the subgroup of Z*_N generated by 16,
/// N = pq of the special form produced by keygen. Raw single-block
/// integers only; no padding or hybrid mode.

struct Plaintext {
    mpz_class m;  // 1 <= m < N, gcd(m, N) = 1
};

struct Ciphertext {
    mpz_class u;  // 16^k mod N
    mpz_class t;  // m * y^k mod N
};

/// Big-endian byte interpretation of the message. Rejects values that are
/// zero, too large for the modulus, or share a factor with it.
Plaintext encode_message(const std::vector<std::uint8_t>& bytes,
                         const mpz_class& n);

/// Inverse of encode_message (no leading zero byte).
std::vector<std::uint8_t> decode_message(const Plaintext& m);

/// Samples ephemeral k over the full modulus width (the encryptor cannot
/// know ord(16) without factoring N; oversampling is harmless since u
/// depends only on k mod p'q').
Ciphertext encrypt(const PublicKey& pub, const Plaintext& m, RandomSource& rng);

/// encrypt with a fixed ephemeral exponent; used by the CLI's seeded mode
/// and by test vectors.
Ciphertext encrypt_with_ephemeral(const PublicKey& pub, const Plaintext& m,
                                  const mpz_class& k);

/// m = t * (u^s)^-1 mod n. Needs only the exponent and the modulus, which
/// is exactly what escrow recovery reproduces.
Plaintext decrypt_with_exponent(const mpz_class& s, const mpz_class& n,
                                const Ciphertext& ct);

Plaintext decrypt(const PrivateKey& priv, const PublicKey& pub,
                  const Ciphertext& ct);

}  // namespace vpke
