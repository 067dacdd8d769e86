#include "vpke/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>

namespace vpke {

namespace {

const char* algorithm_name(RecoveryAlgorithm a) {
    switch (a) {
        case RecoveryAlgorithm::Exhaustive: return "exhaustive";
        case RecoveryAlgorithm::Bsgs: return "bsgs";
        case RecoveryAlgorithm::Rho: return "rho";
    }
    return "?";
}

template <typename T, typename Get>
T median_of(const std::vector<BenchRecord>& records, unsigned bits, Get get) {
    std::vector<T> vals;
    for (const auto& r : records)
        if (r.subgroup_bits == bits) vals.push_back(get(r));
    if (vals.empty()) throw InvalidInput("no bench records for that size");
    std::sort(vals.begin(), vals.end());
    return vals[vals.size() / 2];
}

}  // namespace

std::vector<BenchRecord> bench_partiality(const std::vector<unsigned>& bits,
                                          unsigned trials,
                                          RecoveryAlgorithm algorithm,
                                          RandomSource& rng,
                                          const DlogLimits& limits) {
    std::vector<BenchRecord> out;
    for (unsigned b : bits) {
        SystemParams params;
        params.modulus_bits = 2 * (b + 1);
        params.strict_plus_form = false;  // plus-form is irrelevant to DL cost
        for (unsigned trial = 0; trial < trials; ++trial) {
            ResidueProfile profile = trial % 2 == 0 ? ResidueProfile::P3mod8
                                                    : ResidueProfile::Q7mod8;
            // (r-1)/2 of a (b+1)-bit prime has exactly b bits
            mpz_class r = generate_form_prime(b + 1, profile, params, rng).value;
            mpz_class order = subgroup_order(r, profile);
            mpz_class exponent = rng.below(order);
            DlogInstance inst{mpz_class(16 % r), mod_pow(16, exponent, r), r,
                              order};

            auto start = std::chrono::steady_clock::now();
            DlogResult res;
            switch (algorithm) {
                case RecoveryAlgorithm::Exhaustive:
                    res = dlog_exhaustive(inst);
                    break;
                case RecoveryAlgorithm::Bsgs:
                    // serial path: group_ops reproducible for a fixed seed
                    res = dlog_bsgs_serial(inst, limits);
                    break;
                case RecoveryAlgorithm::Rho: {
                    RandomSource walk_rng(rng.word());
                    res = dlog_pollard_rho(inst, walk_rng, limits);
                    break;
                }
            }
            auto stop = std::chrono::steady_clock::now();
            if (res.exponent != exponent)
                throw Error("bench solver returned a wrong exponent");

            double ms = std::chrono::duration<double, std::milli>(stop - start)
                            .count();
            out.push_back({b, algorithm_name(algorithm), trial, ms,
                           res.group_ops});
        }
    }
    return out;
}

std::string bench_records_to_csv(const std::vector<BenchRecord>& records) {
    std::string csv = "subgroup_bits,algorithm,trial,wall_time_ms,group_ops\n";
    char line[160];
    for (const auto& r : records) {
        std::snprintf(line, sizeof(line), "%u,%s,%u,%.3f,%" PRIu64 "\n",
                      r.subgroup_bits, r.algorithm.c_str(), r.trial,
                      r.wall_time_ms, r.group_ops);
        csv += line;
    }
    return csv;
}

double median_wall_time_ms(const std::vector<BenchRecord>& records,
                           unsigned bits) {
    return median_of<double>(records, bits,
                             [](const BenchRecord& r) { return r.wall_time_ms; });
}

std::uint64_t median_group_ops(const std::vector<BenchRecord>& records,
                               unsigned bits) {
    return median_of<std::uint64_t>(
        records, bits, [](const BenchRecord& r) { return r.group_ops; });
}

}  // namespace vpke
