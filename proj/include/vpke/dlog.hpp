#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "vpke/keygen.hpp"
#include "vpke/numtheory.hpp"
#include "vpke/rng.hpp"

namespace vpke {

/// Discrete-log solvers over prime-order subgroups of Z*_r. These are the
/// recovery engine: the only composite-order structure (mod N) is handled
/// by CRT over the two per-prime solutions, so Pohlig-Hellman never enters.

struct DlogInstance {
    mpz_class base;
    mpz_class target;         // 1 <= target < prime_modulus
    mpz_class prime_modulus;
    mpz_class order;          // ord(base) mod prime_modulus; prime in escrow use
};

struct DlogLimits {
    std::uint64_t bsgs_max_table_entries = 1ull << 28;
    std::uint64_t rho_max_iterations = 1ull << 40;
    /// Giant-step count above which dlog_bsgs spreads the scan across
    /// OpenMP threads. Small instances stay serial; the returned exponent
    /// is identical either way.
    std::uint64_t parallel_threshold = 1ull << 14;
};

struct DlogResult {
    mpz_class exponent;           // smallest e in [0, order) with base^e = target
    std::uint64_t group_ops = 0;  // modular multiplications performed
};

/// (r-1)/2 for a form prime r, asserting that 16 really has that order.
mpz_class subgroup_order(const mpz_class& r, ResidueProfile profile);

/// Linear-scan reference oracle.
DlogResult dlog_exhaustive(const DlogInstance& inst);

/// Baby-step giant-step, O(sqrt(order)) time and table space. The giant
/// phase runs OpenMP-parallel past limits.parallel_threshold.
DlogResult dlog_bsgs(const DlogInstance& inst, const DlogLimits& limits = {});

/// Serial reference for the parallel giant phase; kept for testing and for
/// reproducible operation counts in the benchmark.
DlogResult dlog_bsgs_serial(const DlogInstance& inst,
                            const DlogLimits& limits = {});

/// Pollard rho with an r-adding walk (32 partitions) and Floyd cycle
/// detection; constant memory. Requires prime order.
DlogResult dlog_pollard_rho(const DlogInstance& inst, RandomSource& rng,
                            const DlogLimits& limits = {});

}  // namespace vpke
