#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpke/dlog.hpp"
#include "vpke/escrow.hpp"

namespace vpke {

/// One timed recovery of a fresh discrete-log instance over a form prime
/// whose subgroup order has `subgroup_bits` bits.
struct BenchRecord {
    unsigned subgroup_bits;
    std::string algorithm;
    unsigned trial;
    double wall_time_ms;
    std::uint64_t group_ops;
};

/// Runs the partiality sweep: `trials` instances per subgroup size, timed
/// with the requested solver. Group operations are counted so the
/// sqrt(order) scaling is checkable independent of machine speed.
std::vector<BenchRecord> bench_partiality(const std::vector<unsigned>& bits,
                                          unsigned trials,
                                          RecoveryAlgorithm algorithm,
                                          RandomSource& rng,
                                          const DlogLimits& limits = {});

/// CSV with header `subgroup_bits,algorithm,trial,wall_time_ms,group_ops`.
std::string bench_records_to_csv(const std::vector<BenchRecord>& records);

double median_wall_time_ms(const std::vector<BenchRecord>& records,
                           unsigned bits);
std::uint64_t median_group_ops(const std::vector<BenchRecord>& records,
                               unsigned bits);

}  // namespace vpke
