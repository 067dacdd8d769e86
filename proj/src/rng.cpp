#include "vpke/rng.hpp"

#include <cassert>

namespace vpke {

mpz_class RandomSource::raw_bits(std::size_t bits) {
    mpz_class out = 0;
    std::size_t words = (bits + 63) / 64;
    for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t v = gen_();
        mpz_class w;
        mpz_import(w.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        out <<= 64;
        out |= w;
    }
    // drop excess high bits
    mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
    return out;
}

mpz_class RandomSource::below(const mpz_class& bound) {
    assert(bound > 0);
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    for (;;) {
        mpz_class c = raw_bits(bits);
        if (c < bound) return c;
    }
}

mpz_class RandomSource::exact_bits(std::size_t bits) {
    assert(bits >= 1);
    mpz_class c = raw_bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    return c;
}

}  // namespace vpke
