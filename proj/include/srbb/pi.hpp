#pragma once

#include "srbb/paths.hpp"
#include "srbb/rng.hpp"

#include <cstdint>
#include <vector>

namespace srbb::pi {

// Estimator knobs; legs have unit duration here (the lace analysis is
// normalized to beta = 1).
struct PiParams {
    double alpha = 0.0;
    int d = 3;
    int M = 32;
    paths::PairPotential potential = paths::PairPotential::step_ball(1.0, 1.0);
    RngSpec rng;
    int workers = 1;
};

// Integrated irreducible-graph sum P_N = int Pi_N. Values are signed.
struct PiEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    int N = 0;
    // Contribution per lace edge count of the canonical lace; sums to value.
    std::vector<double> by_lace_size;
};

struct ZEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    int N = 0;
};

struct UnEstimate {
    int n = 0;
    std::vector<std::vector<double>> anchors; // the 2n points x_1..x_2n
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

// One row of the renewal-identity residual table
// r_N = Z_N - sum_{k=1..N} P_k Z_{N-k}  (Z_0 = 1).
struct ResidualRow {
    int N = 0;
    double z = 0.0, z_err = 0.0;
    double p = 0.0, p_err = 0.0;
    double r = 0.0, r_err = 0.0;
};

// Largest N for which the irreducible-graph list is materialized per sample.
constexpr int kPiCap = 7;

// P_N from free paths of duration N: per sample, all pairwise u-factors are
// computed and summed as prod(-U_ij) over the precomputed irreducible graphs.
// N = 1 is exact (Pi_1 = phi, P_1 = 1).
PiEstimate estimate_pi_integrated(const PiParams& p, int N, std::uint64_t n_samples);

// Z_N = E[exp(-alpha H_N)] over free paths. Z_0 = Z_1 = 1 exactly.
ZEstimate estimate_z_free(const PiParams& p, int N, std::uint64_t n_samples);

// Residuals of Z_N = sum_k P_k Z_{N-k} under common random numbers: one set
// of duration-N_max paths, prefixes give every shorter duration. Error bars
// are batch means over RNG chunks.
std::vector<ResidualRow> convolution_identity_check(const PiParams& p, int N_max,
                                                    std::uint64_t n_samples);

// u_n at the 2n anchor points: product of the bridge Gaussian masses times
// the MC mean of prod_{i<n} U(f_i, f_{i+1}) over independent unit bridges
// x_{2i-1} -> x_{2i}.
UnEstimate estimate_u_n(const PiParams& p, const std::vector<std::vector<double>>& anchors,
                        std::uint64_t n_samples);

} // namespace srbb::pi
