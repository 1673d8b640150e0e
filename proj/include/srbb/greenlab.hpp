#pragma once

#include <functional>
#include <vector>

namespace srbb::greenlab {

// Uniform symmetric grid on [-extent, extent]^d with spacing h; extent must
// be an integer multiple of h so the origin is a grid point.
struct GridSpec {
    int d = 1;
    double extent = 10.0;
    double h = 0.1;

    int half_points() const;       // K with coordinates (i-K)*h
    int points_per_axis() const;   // 2K+1
    std::size_t total_points() const;
    bool operator==(const GridSpec&) const = default;
};

struct GridFn {
    GridSpec spec;
    std::vector<double> values;

    double integral() const; // h^d * sum of values
    double l1_norm() const;  // h^d * sum of |values|
    double max_abs() const;
};

GridFn make_grid(const GridSpec& spec, const std::function<double(const std::vector<double>&)>& f);
GridFn make_radial_grid(const GridSpec& spec, const std::function<double(double)>& f);

// phi_t sampled on the grid.
GridFn heat_kernel_grid(const GridSpec& spec, double t);

GridFn add(const GridFn& a, const GridFn& b);
GridFn subtract(const GridFn& a, const GridFn& b);
GridFn scale(const GridFn& a, double c);

// max(L1, Linf, sup |x|^d |f(x)|) on the grid.
double banach_norm(const GridFn& f);

// Discrete convolution scaled by h^d; contributions from outside the domain
// are truncated.
GridFn convolve(const GridFn& f, const GridFn& g);

// G(x) = sum_{n>=1} phi_n(x), d >= 3. Direct partial sum to
// N0 = max(64, ceil(r^2)) plus an analytic tail (expansion of the Gaussian
// factor against Riemann-zeta tails), certified to well below tol.
double green_G(double r, int d, double tol);

// Leading asymptotic constant: G(x) ~ a_d |x|^(2-d).
double green_asymptotic_constant(int d);

// G_mu(x) = sum_{n>=1} mu^n phi_n(x) for mu in [0,1); mu = 1 falls back to
// green_G (d >= 3 only).
double g_mu_point(double r, double mu, int d, double tol);
GridFn g_mu_grid(const GridSpec& spec, double mu, double tol);

struct DeconvolveResult {
    GridFn S;                 // recovered Green function
    double mu = 0.0;          // integral of the input G_Pi
    double kappa_norm = 0.0;  // Banach norm of rho * G_mu + rho
    int terms = 0;            // Neumann terms used
    double tail_bound = 0.0;  // geometric bound on the dropped series tail
    double residual_l1 = 0.0; // || S - G_Pi - G_Pi * S ||_1
};

// Solves S = G_Pi + G_Pi * S by the shifted Neumann series
// Q = sum_{n>=1} (-1)^n (rho*G_mu + rho)^(*n), S = Q + G_mu + Q*G_mu, with
// mu = integral(G_Pi) and rho = mu*phi - G_Pi.
DeconvolveResult neumann_deconvolve(const GridFn& g_pi, const GridFn& phi, double tol);

// int f(|x|) g(|y-x|) dx over R^d at |y| = r, by a (radius, angle) product
// quadrature valid in any dimension d >= 1.
double radial_convolution(int d, const std::function<double(double)>& f,
                          const std::function<double(double)>& g, double r, double s_max,
                          int n_s, int n_theta);

struct RadialCheck {
    std::vector<double> radius;
    std::vector<double> value; // convolution at each radius
    std::vector<double> ratio; // value / comparison
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

// ratio of int (1+|x|)^-m exp(-h|y-x|^2) dx to (1+|y|)^-m over |y| <= r_max.
RadialCheck gauss_power_ratio(int d, int m, double h, double r_max, int n_r);

// ratio of (F_d * F_d)(y) to F_d(y), F_d(x) = (1+|x|)^(6-3d).
RadialCheck fd_self_convolution(int d, double r_max, int n_r);

// Combined inequality report: Gaussian-mass exactness of the quadrature,
// the power-vs-Gaussian ratio bounds, and the F_d self-convolution constant.
struct FdCheckReport {
    double mass_relative_error = 0.0; // constant-function check vs (pi/h)^(d/2)
    RadialCheck power_ratio;          // bounded above and below
    RadialCheck fd_ratio;             // sup gives the empirical gamma constant
    double fitted_gamma = 0.0;        // sup of fd_ratio
};
FdCheckReport fd_convolution_checks(int d, int m, double h_gauss, double r_max = 30.0,
                                    int n_r = 15);

// int exp(-h|y-x|^2) dx computed by the same quadrature; equals (pi/h)^(d/2)
// for every y (constant-ratio sanity check of the reduction).
double gaussian_mass_by_quadrature(int d, double h, double r);

// sup over grid points of f(x) / G(|x|): the ratio diagnostic against the
// random-walk Green function. d >= 3 only.
double sup_ratio_vs_green(const GridFn& f, double tol);

} // namespace srbb::greenlab
