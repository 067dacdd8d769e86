#include "vpke/mccurley.hpp"

namespace vpke {

namespace {

void check_plaintext(const mpz_class& m, const mpz_class& n) {
    if (m == 0) throw ZeroMessage();
    if (m >= n) throw MessageTooLarge();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    if (g != 1) throw MessageNotCoprime(g);
}

}  // namespace

Plaintext encode_message(const std::vector<std::uint8_t>& bytes,
                         const mpz_class& n) {
    if (bytes.empty()) throw InvalidInput("empty message");
    mpz_class m;
    mpz_import(m.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
    check_plaintext(m, n);
    return {m};
}

std::vector<std::uint8_t> decode_message(const Plaintext& m) {
    std::size_t count = 0;
    std::vector<std::uint8_t> out((bit_length(m.m) + 7) / 8);
    mpz_export(out.data(), &count, 1, 1, 0, 0, m.m.get_mpz_t());
    out.resize(count);
    return out;
}

Ciphertext encrypt_with_ephemeral(const PublicKey& pub, const Plaintext& m,
                                  const mpz_class& k) {
    check_plaintext(m.m, pub.n);
    mpz_class u = mod_pow(16, k, pub.n);
    mpz_class t = (m.m * mod_pow(pub.y, k, pub.n)) % pub.n;
    return {std::move(u), std::move(t)};
}

Ciphertext encrypt(const PublicKey& pub, const Plaintext& m, RandomSource& rng) {
    mpz_class k = rng.range(1, mpz_class(1) << bit_length(pub.n));
    return encrypt_with_ephemeral(pub, m, k);
}

Plaintext decrypt_with_exponent(const mpz_class& s, const mpz_class& n,
                                const Ciphertext& ct) {
    for (const mpz_class& part : {ct.u, ct.t}) {
        if (part < 1 || part >= n)
            throw MalformedCiphertext(mpz_class(0));
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), part.get_mpz_t(), n.get_mpz_t());
        if (g != 1) throw MalformedCiphertext(g);
    }
    mpz_class m = (ct.t * mod_inv(mod_pow(ct.u, s, n), n)) % n;
    return {std::move(m)};
}

Plaintext decrypt(const PrivateKey& priv, const PublicKey& pub,
                  const Ciphertext& ct) {
    return decrypt_with_exponent(priv.s, pub.n, ct);
}

}  // namespace vpke
