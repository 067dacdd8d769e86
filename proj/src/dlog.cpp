#include "vpke/dlog.hpp"

#include <atomic>
#include <unordered_map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vpke {

namespace {

struct MpzHash {
    std::size_t operator()(const mpz_class& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        mpz_srcptr z = v.get_mpz_t();
        for (int i = 0; i < std::abs(z->_mp_size); ++i) {
            h ^= static_cast<std::size_t>(mpz_getlimbn(z, i));
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

void check_instance(const DlogInstance& inst) {
    if (inst.prime_modulus < 2) throw InvalidModulus();
    if (inst.target < 1 || inst.target >= inst.prime_modulus)
        throw InvalidInput("dlog target out of range");
    if (inst.order < 1) throw InvalidInput("dlog order must be positive");
}

DlogResult finish(const DlogInstance& inst, mpz_class e, std::uint64_t ops) {
    // postcondition on every return path
    if (mod_pow(inst.base, e, inst.prime_modulus) != inst.target)
        throw NotInSubgroup();
    return {std::move(e), ops};
}

}  // namespace

mpz_class subgroup_order(const mpz_class& r, ResidueProfile profile) {
    unsigned expect = profile == ResidueProfile::P3mod8 ? 3 : 7;
    if (r < 3 || r % 8 != expect)
        throw NotFormPrime("prime is not " + std::to_string(expect) + " mod 8");
    if (!is_probable_prime(r)) throw NotFormPrime("modulus is not prime");
    mpz_class half = (r - 1) / 2;
    if (!is_probable_prime(half)) throw NotFormPrime("(r-1)/2 is not prime");
    if (mpz_class(16 % r) == 1) throw NotFormPrime("16 is trivial mod r");
    if (mod_pow(16, half, r) != 1)
        throw NotFormPrime("16 does not have order (r-1)/2");
    return half;
}

DlogResult dlog_exhaustive(const DlogInstance& inst) {
    check_instance(inst);
    mpz_class x = 1;
    std::uint64_t ops = 0;
    for (mpz_class e = 0; e < inst.order; ++e) {
        if (x == inst.target) return finish(inst, e, ops);
        x = (x * inst.base) % inst.prime_modulus;
        ++ops;
    }
    throw NotInSubgroup();
}

namespace {

DlogResult bsgs_impl(const DlogInstance& inst, const DlogLimits& limits,
                     bool allow_parallel) {
    check_instance(inst);
    const mpz_class& p = inst.prime_modulus;
    if (inst.target == 1) return finish(inst, 0, 0);

    mpz_class m_z;
    mpz_sqrt(m_z.get_mpz_t(), inst.order.get_mpz_t());
    m_z += 1;  // ceil(sqrt(order))
    if (m_z > limits.bsgs_max_table_entries)
        throw MemoryBudgetExceeded("BSGS table would exceed " +
                                   std::to_string(limits.bsgs_max_table_entries) +
                                   " entries");
    const std::uint64_t m = mpz_get_ui(m_z.get_mpz_t());

    std::atomic<std::uint64_t> ops{0};
    std::uint64_t baby_ops = 0;

    // baby table keyed by group element, smallest exponent wins
    std::unordered_map<mpz_class, std::uint64_t, MpzHash> baby;
    baby.reserve(m);
    {
        mpz_class x = 1;
        for (std::uint64_t i = 0; i < m; ++i) {
            baby.emplace(x, i);
            x = (x * inst.base) % p;
            ++baby_ops;
        }
    }

    // giant steps: target * (base^-m)^j
    mpz_class giant_mul = mod_inv(mod_pow(inst.base, m_z, p), p);
    const std::uint64_t total_j =
        mpz_get_ui(mpz_class((inst.order + m_z - 1) / m_z).get_mpz_t()) + 1;

    mpz_class answer = -1;
    std::atomic<bool> found{false};

#ifdef _OPENMP
    const bool parallel = allow_parallel && total_j >= limits.parallel_threshold;
#else
    const bool parallel = false;
    (void)allow_parallel;
#endif

    if (!parallel) {
        mpz_class gamma = inst.target;
        std::uint64_t local_ops = 0;
        for (std::uint64_t j = 0; j < total_j; ++j) {
            auto it = baby.find(gamma);
            if (it != baby.end()) {
                mpz_class e = mpz_class(j) * m_z + it->second;
                if (e < inst.order)
                    return finish(inst, e, baby_ops + local_ops);
            }
            gamma = (gamma * giant_mul) % p;
            ++local_ops;
        }
        throw NotInSubgroup();
    }

#ifdef _OPENMP
#pragma omp parallel
    {
        const int nthreads = omp_get_num_threads();
        const int tid = omp_get_thread_num();
        const std::uint64_t chunk = (total_j + nthreads - 1) / nthreads;
        const std::uint64_t j_lo = std::min<std::uint64_t>(chunk * tid, total_j);
        const std::uint64_t j_hi = std::min(j_lo + chunk, total_j);

        mpz_class gamma =
            (inst.target * mod_pow(giant_mul, mpz_class(j_lo), p)) % p;
        std::uint64_t local_ops = 0;
        for (std::uint64_t j = j_lo; j < j_hi; ++j) {
            if ((j & 0xff) == 0 && found.load(std::memory_order_relaxed)) break;
            auto it = baby.find(gamma);
            if (it != baby.end()) {
                mpz_class e = mpz_class(j) * m_z + it->second;
                if (e < inst.order) {
                    // the exponent is unique in [0, order), so whichever
                    // thread lands here writes the same value
#pragma omp critical
                    answer = e;
                    found.store(true, std::memory_order_relaxed);
                    break;
                }
            }
            gamma = (gamma * giant_mul) % p;
            ++local_ops;
        }
        ops.fetch_add(local_ops, std::memory_order_relaxed);
    }
    if (!found.load()) throw NotInSubgroup();
    return finish(inst, answer, baby_ops + ops.load());
#else
    throw NotInSubgroup();  // unreachable
#endif
}

}  // namespace

DlogResult dlog_bsgs(const DlogInstance& inst, const DlogLimits& limits) {
    return bsgs_impl(inst, limits, true);
}

DlogResult dlog_bsgs_serial(const DlogInstance& inst, const DlogLimits& limits) {
    return bsgs_impl(inst, limits, false);
}

namespace {

// r-adding walk state: x = base^a * target^b (exponents mod order)
struct WalkState {
    mpz_class x, a, b;
};

class AddingWalk {
public:
    static constexpr unsigned kPartitions = 32;

    AddingWalk(const DlogInstance& inst, RandomSource& rng) : inst_(inst) {
        for (unsigned j = 0; j < kPartitions; ++j) {
            mpz_class a = rng.below(inst.order);
            mpz_class b = rng.below(inst.order);
            mpz_class mul = (mod_pow(inst.base, a, inst.prime_modulus) *
                             mod_pow(inst.target, b, inst.prime_modulus)) %
                            inst.prime_modulus;
            mults_.push_back({std::move(mul), std::move(a), std::move(b)});
        }
    }

    void step(WalkState& s) const {
        const WalkState& m = mults_[mpz_get_ui(s.x.get_mpz_t()) % kPartitions];
        s.x = (s.x * m.x) % inst_.prime_modulus;
        s.a += m.a;
        if (s.a >= inst_.order) s.a -= inst_.order;
        s.b += m.b;
        if (s.b >= inst_.order) s.b -= inst_.order;
    }

private:
    const DlogInstance& inst_;
    std::vector<WalkState> mults_;  // x = multiplier, a/b = its exponents
};

}  // namespace

DlogResult dlog_pollard_rho(const DlogInstance& inst, RandomSource& rng,
                            const DlogLimits& limits) {
    check_instance(inst);
    if (inst.target == 1) return finish(inst, 0, 0);
    if (mod_pow(inst.target, inst.order, inst.prime_modulus) != 1)
        throw NotInSubgroup();

    std::uint64_t ops = 0;
    for (;;) {
        AddingWalk walk(inst, rng);
        mpz_class a0 = rng.below(inst.order);
        WalkState tortoise{mod_pow(inst.base, a0, inst.prime_modulus), a0, 0};
        WalkState hare = tortoise;

        bool collided = false;
        while (!collided) {
            if (ops >= limits.rho_max_iterations)
                throw WorkBudgetExceeded("rho iteration cap exceeded");
            walk.step(tortoise);
            walk.step(hare);
            walk.step(hare);
            ops += 3;
            collided = tortoise.x == hare.x;
        }

        // base^a1 target^b1 = base^a2 target^b2  =>  e = (a1-a2)/(b2-b1)
        mpz_class db = (hare.b - tortoise.b) % inst.order;
        if (db < 0) db += inst.order;
        if (db == 0) continue;  // degenerate collision, fresh walk
        mpz_class da = (tortoise.a - hare.a) % inst.order;
        if (da < 0) da += inst.order;
        mpz_class e = (da * mod_inv(db, inst.order)) % inst.order;
        if (mod_pow(inst.base, e, inst.prime_modulus) == inst.target)
            return finish(inst, e, ops);
        // wrong subgroup relation (order not prime, or unlucky); restart
    }
}

}  // namespace vpke
