#include <doctest.h>

#include "oracles.hpp"
#include "vpke/mccurley.hpp"

using namespace vpke;

namespace {

const mpz_class kN = 253;

PublicKey toy_public() { return {kN, 179}; }  // S = 7

// encryption by repeated multiplication only
Ciphertext naive_encrypt(const PublicKey& pub, const mpz_class& m,
                         const mpz_class& k) {
    mpz_class u = oracle::naive_mod_pow(16, k, pub.n);
    mpz_class t = (m * oracle::naive_mod_pow(pub.y, k, pub.n)) % pub.n;
    return {u, t};
}

mpz_class naive_decrypt(const mpz_class& s, const mpz_class& n,
                        const Ciphertext& ct) {
    mpz_class us = oracle::naive_mod_pow(ct.u, s, n);
    return (ct.t * *oracle::naive_mod_inv(us, n)) % n;
}

}  // namespace

TEST_CASE("encode_message interprets bytes big-endian and validates") {
    CHECK(encode_message({0x64}, kN).m == 100);
    CHECK_THROWS_AS(encode_message({0x0b}, kN), MessageNotCoprime);
    try {
        encode_message({0x0b}, kN);
    } catch (const MessageNotCoprime& e) {
        CHECK(e.gcd == 11);
    }
    CHECK_THROWS_AS(encode_message({0xff, 0xff}, kN), MessageTooLarge);
    CHECK_THROWS_AS(encode_message({0x00}, kN), ZeroMessage);
    CHECK_THROWS_AS(encode_message({}, kN), InvalidInput);
}

TEST_CASE("decode_message is the inverse of encode_message") {
    CHECK(decode_message({100}) == std::vector<std::uint8_t>{0x64});
    CHECK(decode_message({1}) == std::vector<std::uint8_t>{0x01});
    RandomSource rng(21);
    mpz_class big = mpz_class(1) << 128;
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint8_t> bytes;
        std::size_t len = 1 + rng.word() % 12;
        for (std::size_t j = 0; j < len; ++j)
            bytes.push_back(static_cast<std::uint8_t>(rng.word()));
        if (bytes[0] == 0) bytes[0] = 1;  // no leading zero byte
        mpz_class v;
        mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), big.get_mpz_t());
        if (g != 1) continue;
        CHECK(decode_message(encode_message(bytes, big)) == bytes);
    }
}

TEST_CASE("toy worked example: k = 3 encrypts m = 100 to (48, 104)") {
    PublicKey pub = toy_public();
    Ciphertext naive = naive_encrypt(pub, 100, 3);
    CHECK(naive.u == 48);
    CHECK(naive.t == 104);

    Ciphertext ct = encrypt_with_ephemeral(pub, {100}, 3);
    CHECK(ct.u == 48);
    CHECK(ct.t == 104);

    Ciphertext unit = encrypt_with_ephemeral(pub, {1}, 3);
    CHECK(unit.u == 48);
    CHECK(unit.t == 82);  // y^3 mod 253
}

TEST_CASE("toy worked example: decryption recovers 100") {
    CHECK(naive_decrypt(7, kN, {48, 104}) == 100);
    CHECK(decrypt_with_exponent(7, kN, {48, 104}).m == 100);

    PrivateKey priv{11, 23, 7, std::nullopt, std::nullopt};
    CHECK(decrypt(priv, toy_public(), {48, 104}).m == 100);
    CHECK(decrypt(priv, toy_public(), {48, 82}).m == 1);

    // tampering with t moves the plaintext
    CHECK(decrypt_with_exponent(7, kN, {48, 105}).m != 100);
}

TEST_CASE("decrypt flags ciphertext components sharing a factor with N") {
    CHECK_THROWS_AS(decrypt_with_exponent(7, kN, {22, 104}), MalformedCiphertext);
    try {
        decrypt_with_exponent(7, kN, {22, 104});
    } catch (const MalformedCiphertext& e) {
        CHECK(e.gcd == 11);  // the factor leak
    }
    CHECK_THROWS_AS(decrypt_with_exponent(7, kN, {0, 104}), MalformedCiphertext);
    CHECK_THROWS_AS(decrypt_with_exponent(7, kN, {48, 253}), MalformedCiphertext);
}

TEST_CASE("round trip over every valid plaintext of the toy key") {
    PublicKey pub = toy_public();
    PrivateKey priv{11, 23, 7, std::nullopt, std::nullopt};
    RandomSource rng(22);
    for (mpz_class m = 1; m < kN; ++m) {
        if (m % 11 == 0 || m % 23 == 0) continue;
        Ciphertext ct = encrypt(pub, {m}, rng);
        CHECK(decrypt(priv, pub, ct).m == m);
        // equation check against the oracle path
        Ciphertext ct3 = encrypt_with_ephemeral(pub, {m}, 3);
        Ciphertext naive = naive_encrypt(pub, m, 3);
        CHECK(ct3.u == naive.u);
        CHECK(ct3.t == naive.t);
        CHECK(naive_decrypt(7, kN, ct3) == m);
    }
}

TEST_CASE("decryption depends on S only through S mod p'q'") {
    PublicKey pub = toy_public();
    RandomSource rng(23);
    for (int i = 0; i < 50; ++i) {
        mpz_class m = 1 + rng.below(kN - 1);
        if (m % 11 == 0 || m % 23 == 0) continue;
        Ciphertext ct = encrypt(pub, {m}, rng);
        CHECK(decrypt_with_exponent(7, kN, ct).m ==
              decrypt_with_exponent(7 + 55, kN, ct).m);
        CHECK(decrypt_with_exponent(7, kN, ct).m ==
              decrypt_with_exponent(7 + 3 * 55, kN, ct).m);
    }
}

TEST_CASE("distinct ephemerals give distinct u within one period") {
    PublicKey pub = toy_public();
    Ciphertext a = encrypt_with_ephemeral(pub, {100}, 3);
    Ciphertext b = encrypt_with_ephemeral(pub, {100}, 4);
    CHECK(a.u != b.u);
}

TEST_CASE("encrypt validates the plaintext range") {
    PublicKey pub = toy_public();
    RandomSource rng(24);
    CHECK_THROWS_AS(encrypt(pub, {0}, rng), ZeroMessage);
    CHECK_THROWS_AS(encrypt(pub, {253}, rng), MessageTooLarge);
    CHECK_THROWS_AS(encrypt(pub, {23}, rng), MessageNotCoprime);
}
