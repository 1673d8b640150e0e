#include "srbb/thermo.hpp"

#include "srbb/errors.hpp"

#include <cmath>
#include <string>

namespace srbb::thermo {

namespace {

// log(lambda^k Gamma_k) for k = 1..K_max; all sums run through exp of these
// so tiny Gamma_k values cannot underflow intermediate products.
std::vector<double> log_terms(const gamma::GammaTable& gamma, double lambda, int K_max)
{
    if (lambda <= 0.0) throw invalid_argument("thermo: lambda must be > 0");
    if (K_max < 1 || K_max > gamma.k_max())
        throw invalid_argument("thermo: K_max out of table range");
    std::vector<double> t(static_cast<std::size_t>(K_max));
    const double log_lambda = std::log(lambda);
    for (int k = 1; k <= K_max; ++k) {
        const double g = gamma.at(k).value;
        if (g <= 0.0)
            throw invalid_argument("thermo: Gamma_" + std::to_string(k) + " must be positive");
        t[static_cast<std::size_t>(k - 1)] = k * log_lambda + std::log(g);
    }
    return t;
}

double tilted_mass(const std::vector<double>& t, double c)
{
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        s += std::exp(t[i] - c * static_cast<double>(i + 1));
    return s;
}

double tilted_series_over_k(const std::vector<double>& t, double c)
{
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        s += std::exp(t[i] - c * static_cast<double>(i + 1)) / static_cast<double>(i + 1);
    return s;
}

} // namespace

double CycleDensity::mass() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<double>(i + 1) * p[i];
    return s;
}

double truncated_rho_c(const gamma::GammaTable& gamma, double lambda, int K_max)
{
    return tilted_mass(log_terms(gamma, lambda, K_max), 0.0);
}

double rate_I(const CycleDensity& p, const gamma::GammaTable& gamma)
{
    if (p.k_max() > gamma.k_max()) throw invalid_argument("rate_I: p longer than gamma table");
    double s = 0.0;
    for (int k = 1; k <= p.k_max(); ++k) {
        const double pk = p.p[static_cast<std::size_t>(k - 1)];
        if (pk < 0.0) throw invalid_argument("rate_I: p_k must be >= 0");
        if (pk == 0.0) continue;
        const double g = gamma.at(k).value;
        if (g <= 0.0) throw invalid_argument("rate_I: Gamma_k must be positive");
        s += pk * (std::log(pk * k / g) - 1.0);
    }
    return s;
}

SolveCResult solve_c(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                     double tol)
{
    if (rho <= 0.0) throw invalid_argument("solve_c: rho must be > 0");
    if (tol <= 0.0) throw invalid_argument("solve_c: tol must be > 0");
    const auto t = log_terms(gamma, lambda, K_max);

    SolveCResult out;
    const double at_zero = tilted_mass(t, 0.0);
    if (at_zero < rho) {
        out.condensate = true;
        out.residual = at_zero - rho;
        return out;
    }

    // Grow the upper bracket until the tilted mass drops below rho.
    double hi = 1.0;
    int grow = 0;
    while (tilted_mass(t, hi) > rho) {
        hi *= 2.0;
        if (++grow > 200)
            throw numeric_error("solve_c: could not bracket (hi=" + std::to_string(hi) + ")");
    }
    double lo = 0.0;
    int it = 0;
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        const double m = tilted_mass(t, mid);
        if (std::abs(m - rho) < tol) {
            out.c = mid;
            out.residual = m - rho;
            out.iterations = it;
            return out;
        }
        (m > rho ? lo : hi) = mid;
        if (++it > 2000)
            throw numeric_error("solve_c: no convergence, bracket [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "], residual " +
                                std::to_string(tilted_mass(t, 0.5 * (lo + hi)) - rho));
    }
}

CycleDensity minimizer_p_star(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                              double tol)
{
    const auto t = log_terms(gamma, lambda, K_max);
    const SolveCResult sc = solve_c(rho, lambda, gamma, K_max, tol);
    CycleDensity p;
    p.p.resize(static_cast<std::size_t>(K_max));
    for (int k = 1; k <= K_max; ++k)
        p.p[static_cast<std::size_t>(k - 1)] =
            std::exp(t[static_cast<std::size_t>(k - 1)] - sc.c * k) / static_cast<double>(k);
    return p;
}

double rate_J(const CycleDensity& p, double rho, double lambda, const gamma::GammaTable& gamma,
              double f_value)
{
    const double mass = p.mass();
    if (mass > rho * (1.0 + 1e-9) + 1e-12)
        throw invalid_argument("rate_J: p outside the constraint set (mass > rho)");
    return rate_I(p, gamma) + (rho - mass) * std::log(lambda) - f_value;
}

FreeEnergyResult free_energy(double rho, double lambda, const gamma::GammaTable& gamma, int K_max,
                             double tol)
{
    const auto t = log_terms(gamma, lambda, K_max);
    const double log_lambda = std::log(lambda);

    FreeEnergyResult out;
    const SolveCResult sc = solve_c(rho, lambda, gamma, K_max, tol);
    out.c = sc.c;
    out.condensate = sc.condensate;

    if (sc.condensate) {
        out.closed_form = rho * log_lambda - tilted_series_over_k(t, 0.0);
    } else {
        out.closed_form = rho * log_lambda - rho * sc.c - tilted_series_over_k(t, sc.c);
    }

    // Independent route: minimize I(p) + (rho - sum k p_k) log lambda over
    // {p >= 0, sum k p_k <= rho} truncated at K_max. For a fixed multiplier
    // nu on the mass constraint the objective separates, with coordinate
    // minimizer p_k = (1/k) lambda^k Gamma_k e^{-nu k}; bisect nu >= 0 on the
    // complementary-slackness residual.
    auto p_of = [&](double nu) {
        CycleDensity p;
        p.p.resize(static_cast<std::size_t>(K_max));
        for (int k = 1; k <= K_max; ++k)
            p.p[static_cast<std::size_t>(k - 1)] =
                std::exp(t[static_cast<std::size_t>(k - 1)] - nu * k) / static_cast<double>(k);
        return p;
    };

    double nu = 0.0;
    if (p_of(0.0).mass() > rho) {
        double hi = 1.0;
        int grow = 0;
        while (p_of(hi).mass() > rho) {
            hi *= 2.0;
            if (++grow > 200) throw numeric_error("free_energy: multiplier bracket failed");
        }
        double lo = 0.0;
        for (int it = 0; it < 2000; ++it) {
            nu = 0.5 * (lo + hi);
            const double m = p_of(nu).mass();
            if (std::abs(m - rho) < tol) break;
            (m > rho ? lo : hi) = nu;
            if (it == 1999)
                throw numeric_error("free_energy: minimizer did not converge, iterate nu=" +
                                    std::to_string(nu));
        }
    }
    out.minimizer = p_of(nu);
    out.variational = rate_I(out.minimizer, gamma) + (rho - out.minimizer.mass()) * log_lambda;
    out.gap = std::abs(out.closed_form - out.variational);
    return out;
}

} // namespace srbb::thermo
