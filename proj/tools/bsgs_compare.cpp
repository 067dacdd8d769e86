// Times the serial BSGS reference against the OpenMP giant-step scan on
// identical instances and checks they return the same exponent.

#include <chrono>
#include <cstdio>
#include <vector>

#include "vpke/dlog.hpp"
#include "vpke/keygen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace vpke;

namespace {

double time_ms(const DlogInstance& inst, bool parallel, mpz_class& out) {
    DlogLimits limits;
    if (parallel) limits.parallel_threshold = 1;  // force the parallel path
    auto start = std::chrono::steady_clock::now();
    DlogResult res = parallel ? dlog_bsgs(inst, limits)
                              : dlog_bsgs_serial(inst, limits);
    out = res.exponent;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    unsigned trials = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 3;
    std::vector<unsigned> sizes = {24, 28, 32, 36};

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial\n");
#endif
    std::printf("%-14s %-10s %12s %12s %8s\n", "subgroup_bits", "trial",
                "serial_ms", "parallel_ms", "speedup");

    RandomSource rng(20260823);
    for (unsigned b : sizes) {
        SystemParams params;
        params.modulus_bits = 2 * (b + 1);
        params.strict_plus_form = false;
        for (unsigned t = 0; t < trials; ++t) {
            mpz_class r =
                generate_form_prime(b + 1, ResidueProfile::P3mod8, params, rng)
                    .value;
            mpz_class order = subgroup_order(r, ResidueProfile::P3mod8);
            mpz_class e = rng.below(order);
            DlogInstance inst{mpz_class(16 % r), mod_pow(16, e, r), r, order};

            mpz_class e_serial, e_parallel;
            double ms_s = time_ms(inst, false, e_serial);
            double ms_p = time_ms(inst, true, e_parallel);
            if (e_serial != e || e_parallel != e) {
                std::fprintf(stderr, "MISMATCH at %u bits trial %u\n", b, t);
                return 1;
            }
            std::printf("%-14u %-10u %12.3f %12.3f %7.2fx\n", b, t, ms_s, ms_p,
                        ms_s / ms_p);
        }
    }
    return 0;
}
