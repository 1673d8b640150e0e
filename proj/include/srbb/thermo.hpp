#pragma once

#include "srbb/gamma.hpp"

#include <vector>

namespace srbb::thermo {

// Cycle densities per unit volume; p[k-1] is the density of k-cycles.
struct CycleDensity {
    std::vector<double> p;

    int k_max() const { return static_cast<int>(p.size()); }
    double mass() const; // sum_k k p_k
};

struct SolveCResult {
    double c = 0.0;
    bool condensate = false; // rho exceeded the truncated critical density
    double residual = 0.0;   // | sum_k lambda^k Gamma_k e^{-ck} - rho |, subcritical only
    int iterations = 0;
};

struct FreeEnergyResult {
    double closed_form = 0.0; // two-regime formula
    double variational = 0.0; // direct constrained minimization
    double gap = 0.0;
    double c = 0.0;
    bool condensate = false;
    CycleDensity minimizer;
};

// sum_{k<=K_max} lambda^k Gamma_k (the truncated critical density).
double truncated_rho_c(const gamma::GammaTable& gamma, double lambda, int K_max);

// I(p) = sum_k p_k log(p_k k / (Gamma_k e)), with 0 log 0 = 0.
double rate_I(const CycleDensity& p, const gamma::GammaTable& gamma);

// Solves sum_{k<=K_max} lambda^k Gamma_k e^{-ck} = rho for c >= 0 by
// bisection (tolerance is on the rho-residual). If even c = 0 cannot reach
// rho the call returns c = 0 with the condensate flag set.
SolveCResult solve_c(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                     double tol);

// p*_k = (1/k) lambda^k Gamma_k e^{-c(rho) k} below the critical density,
// p*_k = (1/k) lambda^k Gamma_k above it.
CycleDensity minimizer_p_star(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                              double tol = 1e-10);

// J(p) = I(p) + (rho - sum_k k p_k) log lambda - f_value.
double rate_J(const CycleDensity& p, double rho, double lambda, const gamma::GammaTable& gamma,
              double f_value);

// Free energy via the closed two-regime formula and, independently, via
// numeric minimization of I(p) + (rho - sum k p_k) log lambda over the
// truncated constraint set (dual bisection on the mass multiplier with exact
// per-coordinate minimization).
FreeEnergyResult free_energy(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                             double tol = 1e-10);

} // namespace srbb::thermo
