#pragma once

#include "srbb/paths.hpp"
#include "srbb/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace srbb::gamma {

// Shared knobs for all bridge-weight estimators.
struct GammaParams {
    double alpha = 0.0;
    double beta = 1.0;
    int d = 3;
    int M = 32;
    paths::PairPotential potential = paths::PairPotential::step_ball(1.0, 1.0);
    RngSpec rng;
    int workers = 1;
};

struct GammaEstimate {
    double value = 0.0;     // units length^-d
    double std_error = 0.0; // standard error of the mean, same units
    std::uint64_t n_samples = 0;
    int k = 0; // duration in legs
};

struct GammaTable {
    GammaParams params;
    std::uint64_t n_samples_per_k = 0;
    std::vector<GammaEstimate> entries; // entries[i] holds k = i+1

    int k_max() const { return static_cast<int>(entries.size()); }
    const GammaEstimate& at(int k) const;
};

struct LambdaBracket {
    double lower = 1.0;          // rigorous up to MC error (submultiplicativity)
    double upper = 1.0;          // e^{alpha * L}
    double point_estimate = 1.0; // log-linear extrapolation
    std::vector<int> k_used;
};

struct RhoCSums {
    std::vector<double> partial;    // S_1..S_K
    std::vector<double> increment;  // lambda^k Gamma_k
    std::vector<double> std_error;  // propagated MC error of S_k
};

struct ExponentFit {
    double slope = 0.0;
    double slope_std_error = 0.0;
    double intercept = 0.0;
    int k_lo = 0;
    int k_hi = 0;
};

// Unbiased estimator of the self-repellent bridge weight at endpoint x:
// Gamma_{alpha,N}(x) = phi_{beta N}(x) * E_bridge[ exp(-alpha H_N) ] with the
// expectation over bridges 0 -> x of duration beta*N. Streams: caller picks
// params.rng.stream (the table builder uses stream = k).
GammaEstimate estimate_gamma_point(const GammaParams& p, int N, const std::vector<double>& x,
                                   std::uint64_t n_samples);

// Dirichlet variant: uniform start x in the centered box of the given side,
// bridge x -> x of duration beta*k, weight exp(-alpha H) * 1{path stays in
// the box}, times the bridge density factor phi_{beta k}(0).
GammaEstimate estimate_gamma_dirichlet(const GammaParams& p, int k, double box_side,
                                       std::uint64_t n_samples);

// Table of Gamma_k(0) for k = 1..K_max, one fresh stream per k.
GammaTable build_table(const GammaParams& p, int K_max, std::uint64_t n_samples);

// Extends an existing table to a larger K_max; rows already present are
// returned unchanged (per-k streams are independent).
GammaTable extend_table(const GammaTable& table, int K_max);

// Exact closed-form free-gas table: Gamma_k = (2 pi beta k)^(-d/2).
GammaTable free_gas_table(int d, double beta, int K_max);

LambdaBracket estimate_lambda_c(const GammaTable& table);
LambdaBracket estimate_lambda_c(const GammaTable& table, int fit_k_lo, int fit_k_hi);

RhoCSums estimate_rho_c(const GammaTable& table, double lambda, int K);

// Least-squares slope of log(lambda^k Gamma_k) against log k on [k_lo, k_hi].
ExponentFit fit_scaling_exponent(const GammaTable& table, double lambda, int k_lo, int k_hi);

} // namespace srbb::gamma
