#include "vpke/escrow.hpp"

#include <chrono>
#include <future>

namespace vpke {

const char* check_code_name(CheckCode code) {
    switch (code) {
        case CheckCode::FACTOR_NONTRIVIAL: return "FACTOR_NONTRIVIAL";
        case CheckCode::FACTOR_DIVIDES: return "FACTOR_DIVIDES";
        case CheckCode::P_PRIME: return "P_PRIME";
        case CheckCode::Q_PRIME: return "Q_PRIME";
        case CheckCode::P_RESIDUE: return "P_RESIDUE";
        case CheckCode::Q_RESIDUE: return "Q_RESIDUE";
        case CheckCode::P_SAFE: return "P_SAFE";
        case CheckCode::Q_SAFE: return "Q_SAFE";
        case CheckCode::P_PLUS_FORM: return "P_PLUS_FORM";
        case CheckCode::Q_PLUS_FORM: return "Q_PLUS_FORM";
        case CheckCode::SIZE_BOUNDS: return "SIZE_BOUNDS";
        case CheckCode::Y_IN_SUBGROUP: return "Y_IN_SUBGROUP";
    }
    return "?";
}

const CheckResult* VerificationReport::find(CheckCode code) const {
    for (const auto& c : checks)
        if (c.code == code) return &c;
    return nullptr;
}

EscrowPackage create_escrow(const PrivateKey& priv, const PublicKey& pub) {
    if (priv.p * priv.q != pub.n)
        throw KeyMismatch("p*q does not equal the public modulus");
    if (mod_pow(16, priv.s, pub.n) != pub.y)
        throw KeyMismatch("y does not equal 16^S mod N");
    return {pub.n, priv.p, priv.plus_witness_p, priv.plus_witness_q};
}

namespace {

// (r+1)/divisor must contain a prime factor of >= threshold bits. The
// generation-time witness makes this cheap; without one we factor within
// the rho budget and report a skip on overrun.
CheckResult plus_form_check(CheckCode code, const mpz_class& r,
                            unsigned divisor_log2,
                            const std::optional<mpz_class>& witness,
                            unsigned threshold_bits, unsigned mr_rounds) {
    mpz_class divisor = mpz_class(1) << divisor_log2;
    if (!mpz_divisible_p(mpz_class(r + 1).get_mpz_t(), divisor.get_mpz_t()))
        return {code, false, "(r+1) not divisible by " + divisor.get_str()};
    mpz_class body = (r + 1) / divisor;
    if (witness) {
        bool ok = bit_length(*witness) >= threshold_bits &&
                  is_probable_prime(*witness, mr_rounds) &&
                  mpz_divisible_p(body.get_mpz_t(), witness->get_mpz_t());
        if (ok)
            return {code, true,
                    "witness " + to_hex(*witness) + " (" +
                        std::to_string(bit_length(*witness)) + " bits)"};
    }
    try {
        if (body < 2)
            return {code, false, "(r+1)/" + divisor.get_str() + " below 2"};
        mpz_class lpf = largest_prime_factor(body);
        if (bit_length(lpf) >= threshold_bits)
            return {code, true,
                    "largest prime factor has " +
                        std::to_string(bit_length(lpf)) + " bits"};
        return {code, false,
                "largest prime factor has only " +
                    std::to_string(bit_length(lpf)) + " bits (need " +
                    std::to_string(threshold_bits) + ")"};
    } catch (const WorkBudgetExceeded&) {
        return {code, false, "SKIPPED: no valid witness and factoring over budget"};
    }
}

}  // namespace

VerificationReport verify_escrow(const EscrowPackage& pkg, const PublicKey& pub,
                                 VerifyPolicy policy,
                                 const SystemParams& params) {
    VerificationReport report;
    auto add = [&](CheckCode code, bool pass, std::string detail) {
        report.checks.push_back({code, pass, std::move(detail)});
        return pass;
    };

    bool nontrivial = add(CheckCode::FACTOR_NONTRIVIAL,
                          pkg.factor > 1 && pkg.factor < pkg.n,
                          "factor must lie strictly between 1 and n");
    if (!nontrivial) return report;

    bool divides =
        add(CheckCode::FACTOR_DIVIDES,
            mpz_divisible_p(pkg.n.get_mpz_t(), pkg.factor.get_mpz_t()),
            "n = p*q with the deposited factor");
    if (!divides) return report;  // no cofactor, later checks meaningless

    const mpz_class p = pkg.factor;
    const mpz_class q = pkg.n / pkg.factor;

    add(CheckCode::P_PRIME, is_probable_prime(p, params.mr_rounds),
        "deposited factor is prime");
    add(CheckCode::Q_PRIME, is_probable_prime(q, params.mr_rounds),
        "cofactor n/factor is prime");

    if (policy == VerifyPolicy::Strict) {
        add(CheckCode::P_RESIDUE, p % 8 == 3, "p = 3 (mod 8)");
        add(CheckCode::Q_RESIDUE, q % 8 == 7, "q = 7 (mod 8)");
        add(CheckCode::P_SAFE, p > 4 && is_probable_prime((p - 1) / 2, params.mr_rounds),
            "(p-1)/2 is prime");
        add(CheckCode::Q_SAFE, q > 4 && is_probable_prime((q - 1) / 2, params.mr_rounds),
            "(q-1)/2 is prime");
        report.checks.push_back(plus_form_check(
            CheckCode::P_PLUS_FORM, p, 2, pkg.plus_witness_p,
            params.factor_threshold_bits, params.mr_rounds));
        report.checks.push_back(plus_form_check(
            CheckCode::Q_PLUS_FORM, q, 3, pkg.plus_witness_q,
            params.factor_threshold_bits, params.mr_rounds));

        unsigned half = params.modulus_bits / 2;
        auto within = [&](const mpz_class& r) {
            std::size_t b = bit_length(r);
            return b + 1 >= half && b <= half + 1;
        };
        add(CheckCode::SIZE_BOUNDS, within(p) && within(q),
            "both primes within 1 bit of " + std::to_string(half));

        mpz_class g;
        mpz_gcd(g.get_mpz_t(), pub.y.get_mpz_t(), pub.n.get_mpz_t());
        bool y_ok = pub.y > 1 && pub.y < pub.n && g == 1 && pub.n == pkg.n &&
                    mod_pow(pub.y, ((p - 1) / 2) * ((q - 1) / 2), pub.n) == 1;
        add(CheckCode::Y_IN_SUBGROUP, y_ok,
            "y^(p'q') = 1 (mod n) with 1 < y < n");
    }

    report.overall = true;
    for (const auto& c : report.checks) report.overall &= c.pass;
    return report;
}

namespace {

DlogResult solve(const DlogInstance& inst, RecoveryAlgorithm algorithm,
                 RandomSource& rng, const DlogLimits& limits) {
    switch (algorithm) {
        case RecoveryAlgorithm::Exhaustive: return dlog_exhaustive(inst);
        case RecoveryAlgorithm::Bsgs: return dlog_bsgs(inst, limits);
        case RecoveryAlgorithm::Rho: return dlog_pollard_rho(inst, rng, limits);
    }
    throw InvalidInput("unknown recovery algorithm");
}

}  // namespace

RecoveredSecret recover_secret(const EscrowPackage& pkg, const PublicKey& pub,
                               RecoveryAlgorithm algorithm, RandomSource& rng,
                               const DlogLimits& limits, RecoveryStats* stats) {
    SystemParams params = SystemParams::for_bits(
        std::max<unsigned>(16, static_cast<unsigned>(bit_length(pkg.n))));
    VerificationReport basic =
        verify_escrow(pkg, pub, VerifyPolicy::Basic, params);
    if (!basic.overall)
        throw InvalidEscrow("escrow package fails basic verification");

    const mpz_class p = pkg.factor;
    const mpz_class q = pkg.n / pkg.factor;
    auto profile_of = [](const mpz_class& r) {
        if (r % 8 == 3) return ResidueProfile::P3mod8;
        if (r % 8 == 7) return ResidueProfile::Q7mod8;
        throw NotFormPrime("factor is neither 3 nor 7 mod 8");
    };
    mpz_class p_prime = subgroup_order(p, profile_of(p));
    mpz_class q_prime = subgroup_order(q, profile_of(q));

    mpz_class y_p = pub.y % p;
    mpz_class y_q = pub.y % q;
    if (y_p == 0 || y_q == 0)
        throw MalformedPublicValue("y shares a factor with n");

    DlogInstance inst_p{mpz_class(16 % p), y_p, p, p_prime};
    DlogInstance inst_q{mpz_class(16 % q), y_q, q, q_prime};

    // independent child sources so the two sides can run concurrently
    RandomSource rng_p(rng.word());
    RandomSource rng_q(rng.word());

    try {
        auto timed = [&](const DlogInstance& inst, RandomSource& src,
                         double& ms_out) {
            auto start = std::chrono::steady_clock::now();
            DlogResult res = solve(inst, algorithm, src, limits);
            ms_out = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
            return res;
        };
        double p_ms = 0, q_ms = 0;
        auto p_side = std::async(std::launch::async, [&] {
            return timed(inst_p, rng_p, p_ms);
        });
        DlogResult e_q = timed(inst_q, rng_q, q_ms);
        DlogResult e_p = p_side.get();
        if (stats) *stats = {p_ms, q_ms, e_p.group_ops, e_q.group_ops};

        mpz_class s = crt_pair(e_p.exponent, p_prime, e_q.exponent, q_prime);
        if (mod_pow(16, s, pub.n) != pub.y)
            throw MalformedPublicValue("recovered exponent fails 16^s = y");
        return {std::move(s), p_prime * q_prime};
    } catch (const NotInSubgroup&) {
        throw MalformedPublicValue("y is not a power of 16 modulo a factor");
    }
}

Plaintext recover_and_decrypt(const EscrowPackage& pkg, const PublicKey& pub,
                              const Ciphertext& ct, RecoveryAlgorithm algorithm,
                              RandomSource& rng, const DlogLimits& limits) {
    RecoveredSecret secret = recover_secret(pkg, pub, algorithm, rng, limits);
    return decrypt_with_exponent(secret.s_mod_order, pub.n, ct);
}

}  // namespace vpke
