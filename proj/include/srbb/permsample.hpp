#pragma once

#include "srbb/rng.hpp"

#include <cstdint>
#include <vector>

namespace srbb::permsample {

// Positive cycle weights theta_1..theta_N (theta[k-1] holds theta_k).
struct WeightVector {
    std::vector<double> theta;

    int size() const { return static_cast<int>(theta.size()); }
    void validate(int N) const;
};

// Partition-function table from the cycle-weight recursion
// N Z_N = sum_{k=1..N} theta_k Z_{N-k}, Z_0 = 1. Always carried in the log
// domain; the linear column is filled while representable.
struct ZTable {
    std::vector<double> log_z; // log Z_0 .. log Z_N
    std::vector<double> z;     // linear values; NaN once overflowed
    bool overflowed = false;
};

// Cycle counts l with sum_k k l_k = N.
struct CycleCounts {
    int N = 0;
    std::vector<std::uint32_t> counts; // counts[k-1] = l_k

    std::uint64_t weighted_sum() const; // sum_k k l_k (== N)
};

struct CycleStats {
    double volume = 0.0;
    std::uint64_t n_samples = 0;
    std::vector<double> mean;      // mean of L_k / volume
    std::vector<double> std_error; // standard error of that mean
};

ZTable z_recursion(const WeightVector& theta, int N);

// Exact draw by sequential cycle removal: with m elements left, the cycle
// containing the largest remaining element has length k with probability
// theta_k Z_{m-k} / (m Z_m).
CycleCounts sample_partition(const WeightVector& theta, const ZTable& z, int N, ChunkRng& rng);

// Same draw, returning the cycle lengths in removal order.
std::vector<int> sample_removal_sequence(const WeightVector& theta, const ZTable& z, int N,
                                         ChunkRng& rng);

// Chunk-parallel batch of draws; sample i is identical for any worker count.
std::vector<CycleCounts> sample_partitions(const WeightVector& theta, int N,
                                           std::uint64_t n_samples, const RngSpec& rng,
                                           int workers = 1);

CycleStats cycle_statistics(const std::vector<CycleCounts>& samples, double volume);

// Exact log probability of a partition under the weights (for oracles).
double log_probability(const WeightVector& theta, const ZTable& z, const CycleCounts& l);

} // namespace srbb::permsample
