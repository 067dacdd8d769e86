#include "vpke/numtheory.hpp"

#include <array>
#include <cctype>
#include <random>
#include <vector>

namespace vpke {

namespace {

constexpr std::array<unsigned, 12> kSmallWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

// Trial-division primes; also used as the fast rejection path in
// is_probable_prime and as the first stage of largest_prime_factor.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 10000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = 2 * i; j <= limit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

// One Miller-Rabin round: n-1 = d*2^s with d odd, s precomputed.
bool mr_round(const mpz_class& n, const mpz_class& witness, const mpz_class& d,
              unsigned long s) {
    mpz_class x = mod_pow(witness, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

mpz_class fold_to_seed_value(const mpz_class& n, std::uint64_t salt) {
    mpz_class folded;
    mpz_fdiv_r_2exp(folded.get_mpz_t(), n.get_mpz_t(), 64);
    return folded ^ mpz_class(static_cast<unsigned long>(salt & 0xffffffffu)) ^
           (mpz_class(static_cast<unsigned long>(salt >> 32)) << 32);
}

}  // namespace

std::size_t bit_length(const mpz_class& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::string to_hex(const mpz_class& n) {
    return n.get_str(16);
}

mpz_class from_hex(std::string_view s) {
    if (s.empty()) throw FormatError("empty hex value");
    if (s.size() > 1 && s.front() == '0')
        throw FormatError("hex value has a leading zero");
    for (char c : s) {
        bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        if (!ok) throw FormatError(std::string("bad hex character '") + c + "'");
    }
    mpz_class out;
    if (mpz_set_str(out.get_mpz_t(), std::string(s).c_str(), 16) != 0)
        throw FormatError("unparseable hex value");
    return out;
}

mpz_class mod_pow(const mpz_class& base, const mpz_class& exponent,
                  const mpz_class& modulus) {
    if (modulus < 2) throw InvalidModulus();
    mpz_class b = base % modulus;
    mpz_class result = 1;
    for (std::size_t i = bit_length(exponent); i-- > 0;) {
        result = (result * result) % modulus;
        if (mpz_tstbit(exponent.get_mpz_t(), i)) result = (result * b) % modulus;
    }
    return result;
}

mpz_class mod_inv(const mpz_class& a, const mpz_class& modulus) {
    if (modulus < 2) throw InvalidModulus();
    // extended Euclid on (a mod m, m), tracking only the coefficient of a
    mpz_class r0 = a % modulus, r1 = modulus;
    mpz_class x0 = 1, x1 = 0;
    while (r1 != 0) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class x2 = x0 - q * x1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
    }
    if (r0 != 1) throw NotCoprime(r0 == 0 ? modulus : r0);
    mpz_class inv = x0 % modulus;
    if (inv < 0) inv += modulus;
    return inv;
}

bool is_probable_prime(const mpz_class& n, unsigned rounds) {
    if (n < 2) return false;
    static constexpr std::array<std::uint32_t, 54> kTrialPrimes = {
        2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
        47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
        109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
        191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};
    for (std::uint32_t p : kTrialPrimes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }

    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // this witness set is a correct deterministic test below 2^64
        for (unsigned w : kSmallWitnesses) {
            if (n == w) return true;
            if (!mr_round(n, w, d, s)) return false;
        }
        return true;
    }

    // Witnesses derived from n itself: reproducible without threading a
    // randomness source through every primality check.
    std::mt19937_64 gen(mpz_get_ui(fold_to_seed_value(n, 0x9e3779b97f4a7c15ull)
                                       .get_mpz_t()));
    RandomSource src(gen());
    mpz_class span = n - 3;
    for (unsigned i = 0; i < rounds; ++i) {
        mpz_class w = 2 + src.below(span);
        if (!mr_round(n, w, d, s)) return false;
    }
    return true;
}

mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1,
                   const mpz_class& r2, const mpz_class& m2) {
    if (m1 < 1 || m2 < 1 || r1 >= m1 || r2 >= m2)
        throw InvalidInput("crt_pair residues must be below their moduli");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    if (g != 1) throw NotCoprimeModuli();
    if (m2 == 1) return r1;
    if (m1 == 1) return r2;
    // x = r1 + m1 * ((r2 - r1) * m1^-1 mod m2)
    mpz_class diff = (r2 - r1) % m2;
    if (diff < 0) diff += m2;
    mpz_class k = (diff * mod_inv(m1, m2)) % m2;
    return r1 + m1 * k;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of n (n odd
// composite, not a prime power of a small prime). Deterministic: the walk
// parameters derive from n and the retry counter.
mpz_class brent_rho(const mpz_class& n, std::uint64_t& budget) {
    for (std::uint64_t attempt = 1;; ++attempt) {
        std::mt19937_64 gen(
            mpz_get_ui(fold_to_seed_value(n, attempt).get_mpz_t()) ^ attempt);
        mpz_class c = 1 + mpz_class(gen() % 1000000);
        mpz_class y = 1 + mpz_class(gen() % 1000000);
        mpz_class g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class lim = mpz_class(r - k) < 128 ? mpz_class(r - k)
                                                       : mpz_class(128);
                for (mpz_class i = 0; i < lim; ++i) {
                    if (budget == 0)
                        throw WorkBudgetExceeded("rho factoring budget spent");
                    --budget;
                    y = (y * y + c) % n;
                    mpz_class diff = x > y ? x - y : y - x;
                    q = (q * diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                if (budget == 0)
                    throw WorkBudgetExceeded("rho factoring budget spent");
                --budget;
                ys = (ys * ys + c) % n;
                mpz_class diff = x > ys ? x - ys : ys - x;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
        // degenerate walk; retry with new parameters
    }
}

void collect_prime_factors(const mpz_class& n, std::uint64_t& budget,
                           mpz_class& best) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        if (n > best) best = n;
        return;
    }
    // perfect squares and higher powers confuse rho's gcd step
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= bit_length(n); ++k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                collect_prime_factors(root, budget, best);
                return;
            }
        }
    }
    mpz_class f = brent_rho(n, budget);
    collect_prime_factors(f, budget, best);
    collect_prime_factors(n / f, budget, best);
}

}  // namespace

mpz_class largest_prime_factor(const mpz_class& n,
                               std::uint64_t rho_iteration_budget) {
    if (n < 2) throw InvalidInput("largest_prime_factor needs n >= 2");
    mpz_class rest = n;
    mpz_class best = 0;
    for (std::uint32_t p : small_primes()) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            best = std::max(best, mpz_class(p));
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
                rest /= p;
        }
        if (rest == 1) return best;
    }
    std::uint64_t budget = rho_iteration_budget;
    collect_prime_factors(rest, budget, best);
    return best;
}

}  // namespace vpke
