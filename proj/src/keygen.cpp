#include "vpke/keygen.hpp"

#include <string>

namespace vpke {

namespace {

constexpr unsigned kGenerationAttemptCap = 500000;

mpz_class random_threshold_prime(unsigned bits, unsigned mr_rounds,
                                 RandomSource& rng) {
    // The witness multiplies into (r+1)/4 via a stride of 8w, so w must be
    // odd; at the 2-bit floor that leaves only 3.
    if (bits <= 2) return 3;
    for (;;) {
        mpz_class w = rng.exact_bits(bits);
        mpz_setbit(w.get_mpz_t(), 0);
        if (is_probable_prime(w, mr_rounds)) return w;
    }
}

}  // namespace

SystemParams SystemParams::profile(std::string_view name) {
    if (name == "toy") return {16, 32, 2, true};
    if (name == "desk") return {64, 32, 16, true};
    if (name == "bench") return {96, 32, 24, true};
    if (name == "production") return {768, 64, 192, true};
    throw InvalidInput("unknown profile: " + std::string(name));
}

SystemParams SystemParams::for_bits(unsigned modulus_bits) {
    if (modulus_bits < 16)
        throw InvalidInput("modulus_bits must be >= 16");
    SystemParams p;
    p.modulus_bits = modulus_bits;
    p.mr_rounds = modulus_bits >= 512 ? 64 : 32;
    p.factor_threshold_bits = std::max(2u, modulus_bits / 4);
    p.strict_plus_form = true;
    return p;
}

FormPrime generate_form_prime(unsigned bits, ResidueProfile profile,
                              const SystemParams& params, RandomSource& rng) {
    if (bits < 4)
        throw GenerationExhausted("prime size below 4 bits is infeasible");

    const unsigned residue = profile == ResidueProfile::P3mod8 ? 3 : 7;
    mpz_class lo = mpz_class(1) << (bits - 1);
    mpz_class hi = mpz_class(1) << bits;

    for (unsigned attempt = 0; attempt < kGenerationAttemptCap; ++attempt) {
        mpz_class candidate;
        std::optional<mpz_class> witness;

        if (params.strict_plus_form) {
            // Plant the witness during construction: for p = 8wi + 4w - 1 we
            // get (p+1)/4 = w(2i+1); for q = 8wj - 1, (q+1)/8 = wj.
            mpz_class w =
                random_threshold_prime(params.factor_threshold_bits,
                                       params.mr_rounds, rng);
            mpz_class stride = 8 * w;
            mpz_class offset = profile == ResidueProfile::P3mod8
                                   ? mpz_class(4 * w - 1)
                                   : mpz_class(stride - 1);
            mpz_class i_min = (lo - offset + stride - 1) / stride;
            if (i_min < 0) i_min = 0;
            mpz_class i_max = (hi - 1 - offset) / stride;
            if (i_max < i_min) continue;  // threshold too big for this size
            candidate = offset + stride * rng.range(i_min, i_max + 1);
            witness = w;
        } else {
            candidate = rng.exact_bits(bits);
            // force the residue class mod 8
            mpz_fdiv_q_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), 3);
            candidate = (candidate << 3) + residue;
            if (bit_length(candidate) != bits) continue;
        }

        if (!is_probable_prime(candidate, params.mr_rounds)) continue;
        mpz_class half = (candidate - 1) / 2;
        if (!is_probable_prime(half, params.mr_rounds)) continue;
        return {candidate, witness};
    }
    throw GenerationExhausted("no form prime of " + std::to_string(bits) +
                              " bits within the attempt cap");
}

ModulusParts generate_modulus(const SystemParams& params, RandomSource& rng) {
    unsigned half_bits = params.modulus_bits / 2;
    FormPrime p = generate_form_prime(half_bits, ResidueProfile::P3mod8,
                                      params, rng);
    FormPrime q = generate_form_prime(half_bits, ResidueProfile::Q7mod8,
                                      params, rng);
    // distinct residues mod 8 make p == q impossible
    return {std::move(p), std::move(q)};
}

namespace {

void check_prime_form(const mpz_class& p, const mpz_class& q) {
    if (p % 8 != 3) throw InvalidPrimeForm("p is not 3 mod 8");
    if (q % 8 != 7) throw InvalidPrimeForm("q is not 7 mod 8");
    if (!is_probable_prime(p)) throw InvalidPrimeForm("p is not prime");
    if (!is_probable_prime(q)) throw InvalidPrimeForm("q is not prime");
    if (!is_probable_prime((p - 1) / 2))
        throw InvalidPrimeForm("(p-1)/2 is not prime");
    if (!is_probable_prime((q - 1) / 2))
        throw InvalidPrimeForm("(q-1)/2 is not prime");
}

}  // namespace

std::pair<PublicKey, PrivateKey> key_from_secret(const mpz_class& p,
                                                 const mpz_class& q,
                                                 const mpz_class& s) {
    check_prime_form(p, q);
    mpz_class order = ((p - 1) / 2) * ((q - 1) / 2);
    if (s < 1 || s >= order)
        throw InvalidInput("secret exponent out of range [1, p'q')");
    mpz_class n = p * q;
    PublicKey pub{n, mod_pow(16, s, n)};
    PrivateKey priv{p, q, s, std::nullopt, std::nullopt};
    return {std::move(pub), std::move(priv)};
}

std::pair<PublicKey, PrivateKey> key_gen(const mpz_class& p, const mpz_class& q,
                                         RandomSource& rng) {
    check_prime_form(p, q);
    mpz_class order = ((p - 1) / 2) * ((q - 1) / 2);
    mpz_class s = rng.range(1, order);
    return key_from_secret(p, q, s);
}

std::pair<PublicKey, PrivateKey> rekey(const PrivateKey& key, RandomSource& rng) {
    mpz_class order = ((key.p - 1) / 2) * ((key.q - 1) / 2);
    mpz_class fresh;
    do {
        fresh = rng.range(1, order);
    } while (fresh == key.s);
    auto [pub, priv] = key_from_secret(key.p, key.q, fresh);
    priv.plus_witness_p = key.plus_witness_p;
    priv.plus_witness_q = key.plus_witness_q;
    return {std::move(pub), std::move(priv)};
}

std::pair<PublicKey, PrivateKey> generate_keypair(const SystemParams& params,
                                                  RandomSource& rng) {
    ModulusParts parts = generate_modulus(params, rng);
    auto [pub, priv] = key_gen(parts.p.value, parts.q.value, rng);
    priv.plus_witness_p = parts.p.plus_witness;
    priv.plus_witness_q = parts.q.plus_witness;
    return {std::move(pub), std::move(priv)};
}

}  // namespace vpke
