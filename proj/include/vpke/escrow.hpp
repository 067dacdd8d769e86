#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "vpke/dlog.hpp"
#include "vpke/keygen.hpp"
#include "vpke/mccurley.hpp"

namespace vpke {

/// The deposit held by the trusted third party: the public modulus plus one
/// prime factor. The secret exponent is never part of it; recovery costs
/// two subgroup discrete logs.
struct EscrowPackage {
    mpz_class n;
    mpz_class factor;  // by convention the 3-mod-8 prime
    std::optional<mpz_class> plus_witness_p;
    std::optional<mpz_class> plus_witness_q;
};

enum class CheckCode {
    FACTOR_NONTRIVIAL,
    FACTOR_DIVIDES,
    P_PRIME,
    Q_PRIME,
    P_RESIDUE,
    Q_RESIDUE,
    P_SAFE,
    Q_SAFE,
    P_PLUS_FORM,
    Q_PLUS_FORM,
    SIZE_BOUNDS,
    Y_IN_SUBGROUP,
};

const char* check_code_name(CheckCode code);

struct CheckResult {
    CheckCode code;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall = false;

    const CheckResult* find(CheckCode code) const;
};

enum class VerifyPolicy { Basic, Strict };

enum class RecoveryAlgorithm { Exhaustive, Bsgs, Rho };

struct RecoveredSecret {
    mpz_class s_mod_order;  // S mod p'q'; fully determines decryption
    mpz_class order;        // p'q'
};

/// Builds the TTP deposit from a consistent keypair.
EscrowPackage create_escrow(const PrivateKey& priv, const PublicKey& pub);

/// Honesty check over arbitrary (possibly hostile) input. Basic policy is
/// the N = pq test plus primality; Strict adds the form, size and subgroup
/// conditions that the recovery-time guarantee silently depends on, and is
/// the recommended TTP default. Never throws: bad input means a failing
/// report.
VerificationReport verify_escrow(const EscrowPackage& pkg, const PublicKey& pub,
                                 VerifyPolicy policy, const SystemParams& params);

struct RecoveryStats {
    double p_side_ms = 0;
    double q_side_ms = 0;
    std::uint64_t p_side_ops = 0;
    std::uint64_t q_side_ops = 0;
};

/// The TTP recovery: two subgroup discrete logs combined by CRT.
/// Inputs are the deposit and the public key only; the two sides run
/// concurrently.
RecoveredSecret recover_secret(const EscrowPackage& pkg, const PublicKey& pub,
                               RecoveryAlgorithm algorithm, RandomSource& rng,
                               const DlogLimits& limits = {},
                               RecoveryStats* stats = nullptr);

/// End-to-end court-order flow: recover, then decrypt.
Plaintext recover_and_decrypt(const EscrowPackage& pkg, const PublicKey& pub,
                              const Ciphertext& ct, RecoveryAlgorithm algorithm,
                              RandomSource& rng, const DlogLimits& limits = {});

}  // namespace vpke
