#include "srbb/thermo.hpp"

#include "srbb/errors.hpp"
#include "srbb/rng.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace srbb;
using namespace srbb::thermo;

namespace {

const gamma::GammaTable& free5()
{
    static const gamma::GammaTable t = gamma::free_gas_table(5, 1.0, 400);
    return t;
}

// random element of X_rho built by rescaling positive noise
CycleDensity random_feasible(double rho, int K, ChunkRng& rng)
{
    CycleDensity p;
    p.p.resize(static_cast<std::size_t>(K));
    double mass = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double v = rng.uniform() * std::exp(-0.3 * k);
        p.p[static_cast<std::size_t>(k - 1)] = v;
        mass += k * v;
    }
    const double target = rho * (0.2 + 0.75 * rng.uniform());
    for (double& v : p.p) v *= target / mass;
    return p;
}

} // namespace

TEST_SUITE_BEGIN("thermo");

TEST_CASE("rate function I")
{
    const auto& g = free5();

    SUBCASE("zero density has zero rate")
    {
        CycleDensity p;
        p.p.assign(50, 0.0);
        CHECK(rate_I(p, g) == 0.0);
    }
    SUBCASE("p_k = Gamma_k / k forces log(1/e)")
    {
        CycleDensity p;
        double expect = 0.0;
        p.p.resize(50);
        for (int k = 1; k <= 50; ++k) {
            p.p[static_cast<std::size_t>(k - 1)] = g.at(k).value / k;
            expect -= g.at(k).value / k;
        }
        CHECK(rate_I(p, g) == doctest::Approx(expect).epsilon(1e-13));
    }
    SUBCASE("convexity probe")
    {
        ChunkRng rng(RngSpec{41}, 0);
        const double rho = 0.01;
        for (int rep = 0; rep < 40; ++rep) {
            const auto p = random_feasible(rho, 60, rng);
            const auto q = random_feasible(rho, 60, rng);
            CycleDensity mid;
            mid.p.resize(60);
            for (int i = 0; i < 60; ++i)
                mid.p[static_cast<std::size_t>(i)] =
                    0.5 * (p.p[static_cast<std::size_t>(i)] + q.p[static_cast<std::size_t>(i)]);
            CHECK(rate_I(mid, g) <= 0.5 * (rate_I(p, g) + rate_I(q, g)) + 1e-12);
        }
    }
}

TEST_CASE("solve_c")
{
    const auto& g = free5();
    const int K = 400;
    const double rho_c = truncated_rho_c(g, 1.0, K);

    SUBCASE("c vanishes at the truncated critical density")
    {
        const auto r = solve_c(rho_c, 1.0, g, K, 1e-12);
        CHECK_FALSE(r.condensate);
        CHECK(r.c <= 1e-8);
    }
    SUBCASE("self-consistency at rho_c / 2")
    {
        const auto r = solve_c(0.5 * rho_c, 1.0, g, K, 1e-12);
        double sum = 0.0;
        for (int k = 1; k <= K; ++k) sum += g.at(k).value * std::exp(-r.c * k);
        CHECK(std::abs(sum - 0.5 * rho_c) < 1e-12);
    }
    SUBCASE("strictly decreasing in rho")
    {
        double prev = -1.0;
        for (int i = 1; i <= 20; ++i) {
            const double rho = rho_c * i / 20.0;
            const auto r = solve_c(rho, 1.0, g, K, 1e-13);
            if (i > 1) CHECK(r.c < prev);
            prev = r.c;
        }
    }
    SUBCASE("supercritical flag")
    {
        const auto r = solve_c(2.0 * rho_c, 1.0, g, K, 1e-12);
        CHECK(r.condensate);
        CHECK(r.c == 0.0);
    }
}

TEST_CASE("minimizer p*")
{
    const auto& g = free5();
    const int K = 400;
    const double rho_c = truncated_rho_c(g, 1.0, K);

    SUBCASE("mass identity both regimes")
    {
        for (double rho : {0.3 * rho_c, 0.9 * rho_c, 1.7 * rho_c}) {
            const auto p = minimizer_p_star(rho, 1.0, g, K, 1e-12);
            CHECK(p.mass() == doctest::Approx(std::min(rho, rho_c)).epsilon(1e-8));
        }
    }
    SUBCASE("supercritical minimizer is independent of rho")
    {
        const auto a = minimizer_p_star(1.5 * rho_c, 1.0, g, K);
        const auto b = minimizer_p_star(3.0 * rho_c, 1.0, g, K);
        CHECK(a.p == b.p);
    }
    SUBCASE("J(p*) = 0 and J >= 0 on random densities")
    {
        const double rho = 0.6 * rho_c;
        const auto fe = free_energy(rho, 1.0, g, K, 1e-12);
        const auto p_star = minimizer_p_star(rho, 1.0, g, K, 1e-12);
        CHECK(std::abs(rate_J(p_star, rho, 1.0, g, fe.closed_form)) < 1e-7);

        ChunkRng rng(RngSpec{42}, 0);
        for (int rep = 0; rep < 200; ++rep) {
            const auto p = random_feasible(rho, K, rng);
            CHECK(rate_J(p, rho, 1.0, g, fe.closed_form) >= -1e-9);
        }
    }
    SUBCASE("membership is enforced")
    {
        CycleDensity p;
        p.p.assign(10, 1.0); // mass 55, far beyond rho
        CHECK_THROWS_AS(rate_J(p, 1e-3, 1.0, g, 0.0), invalid_argument);
    }
}

TEST_CASE("free energy: closed form vs direct minimization")
{
    const auto& g = free5();
    const int K = 400;
    const double rho_c = truncated_rho_c(g, 1.0, K);

    SUBCASE("gap below 1e-6 in both regimes")
    {
        for (double rho : {0.25 * rho_c, 0.8 * rho_c, 1.2 * rho_c, 2.5 * rho_c}) {
            const auto fe = free_energy(rho, 1.0, g, K, 1e-11);
            CHECK(fe.gap < 1e-6);
        }
    }
    SUBCASE("supercritical slope is log lambda")
    {
        // lambda below the free-gas radius of convergence keeps the series tame
        const double lam = 0.9;
        const double rc = truncated_rho_c(g, lam, K);
        const double rho = 1.5 * rc, dr = rc * 1e-3;
        const double f1 = free_energy(rho - dr, lam, g, K).closed_form;
        const double f2 = free_energy(rho + dr, lam, g, K).closed_form;
        CHECK((f2 - f1) / (2 * dr) == doctest::Approx(std::log(lam)).epsilon(1e-9));
    }
    SUBCASE("f vanishes as rho -> 0")
    {
        const auto fe = free_energy(1e-6, 1.0, g, K, 1e-14);
        CHECK(std::abs(fe.closed_form) < 1e-4);
    }
    SUBCASE("J differences do not depend on the f shift")
    {
        ChunkRng rng(RngSpec{43}, 0);
        const double rho = 0.5 * rho_c;
        const auto p = random_feasible(rho, K, rng);
        const auto q = random_feasible(rho, K, rng);
        const double d1 = rate_J(p, rho, 1.0, g, 0.0) - rate_J(q, rho, 1.0, g, 0.0);
        const double d2 = rate_J(p, rho, 1.0, g, 12.5) - rate_J(q, rho, 1.0, g, 12.5);
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
    }
}

TEST_CASE("second derivative changes across the transition")
{
    const auto& g = free5();
    const int K = 400;
    const double rho_c = truncated_rho_c(g, 1.0, K);
    const double dr = rho_c * 1e-3;

    auto f = [&](double rho) { return free_energy(rho, 1.0, g, K, 1e-13).closed_form; };

    // below: f'' = -c'(rho) > 0; above: f linear in rho
    const double below = (f(0.6 * rho_c + dr) - 2 * f(0.6 * rho_c) + f(0.6 * rho_c - dr)) / (dr * dr);
    const double above = (f(1.6 * rho_c + dr) - 2 * f(1.6 * rho_c) + f(1.6 * rho_c - dr)) / (dr * dr);
    CHECK(below > 1.0);
    CHECK(std::abs(above) < 1e-6 * below);

    // C^1 at the transition: one-sided slopes agree
    const double left = (f(rho_c) - f(rho_c - dr)) / dr;
    const double right = (f(rho_c + dr) - f(rho_c)) / dr;
    CHECK(std::abs(left - right) < 1e-3);
}

TEST_CASE("validation")
{
    const auto& g = free5();
    CHECK_THROWS_AS(solve_c(-1.0, 1.0, g, 100, 1e-10), invalid_argument);
    CHECK_THROWS_AS(solve_c(0.01, 1.0, g, 100, -1.0), invalid_argument);
    CHECK_THROWS_AS(solve_c(0.01, -2.0, g, 100, 1e-10), invalid_argument);

    auto bad = gamma::free_gas_table(5, 1.0, 10);
    bad.entries[3].value = 0.0;
    CHECK_THROWS_AS(solve_c(0.01, 1.0, bad, 10, 1e-10), invalid_argument);
}

TEST_SUITE_END();
