// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances are fixed here; seeds are fixed so every run is deterministic.

#include "srbb/gamma.hpp"
#include "srbb/greenlab.hpp"
#include "srbb/heat_kernel.hpp"
#include "srbb/io.hpp"
#include "srbb/laces.hpp"
#include "srbb/permsample.hpp"
#include "srbb/pi.hpp"
#include "srbb/thermo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void criterion(int id, const std::string& name, bool pass, const std::string& detail)
{
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0).count();
    std::printf("C%02d %-4s %-28s %s [%.1fs]\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str(), dt);
    std::fflush(stdout);
    if (!pass) ++g_failures;
    g_t0 = std::chrono::steady_clock::now();
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---------------------------------------------------------------- helpers

double zeta_partial_plus_tail(double s)
{
    // independent of greenlab: direct partial sum with integral tail bracket
    double sum = 0.0;
    const long n0 = 300000;
    for (long n = 1; n <= n0; ++n) sum += std::pow(static_cast<double>(n), -s);
    const double lo = std::pow(n0 + 1.0, 1.0 - s) / (s - 1.0);
    const double hi = std::pow(static_cast<double>(n0), 1.0 - s) / (s - 1.0);
    return sum + 0.5 * (lo + hi);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

// ---------------------------------------------------------------- criteria

void c01_lace_identity()
{
    srbb::ChunkRng rng(srbb::RngSpec{101}, 0);
    double worst = 0.0;
    for (int N = 2; N <= 6; ++N) {
        for (int rep = 0; rep < 1000; ++rep) {
            std::vector<double> u(static_cast<std::size_t>(srbb::laces::edge_slots(N)));
            for (double& v : u) v = rng.uniform();
            worst = std::max(worst, srbb::laces::lace_identity_check(N, u).discrepancy);
        }
    }
    criterion(1, "lace-identity", worst <= 1e-12, "max |lhs-rhs| = " + fmt(worst));
}

void c02_characterization()
{
    std::uint64_t checked = 0, counterexamples = 0;
    for (int N = 2; N <= 6; ++N) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> laces;
        for (const auto& l : srbb::laces::enumerate_laces(N))
            laces.push_back({l.as_graph().edges, srbb::laces::compatible_mask(l)});
        for (const auto& g : srbb::laces::enumerate_irreducible(N)) {
            const std::uint32_t canon = srbb::laces::lace_of(g).as_graph().edges;
            for (const auto& [lm, cm] : laces) {
                if ((g.edges & lm) != lm) continue;
                ++checked;
                const bool rest_compat = (g.edges & ~lm & ~cm) == 0;
                if (rest_compat != (lm == canon)) ++counterexamples;
            }
        }
    }

    std::uint64_t interlace_fail = 0, laces_total = 0;
    for (int N = 2; N <= 8; ++N) {
        for (const auto& l : srbb::laces::enumerate_laces(N)) {
            ++laces_total;
            const auto& e = l.edges;
            const int n = static_cast<int>(e.size());
            bool ok = e.front().first == 1 && e.back().second == N;
            for (int t = 0; t + 1 < n && ok; ++t) {
                ok = e[t].first < e[t + 1].first && e[t + 1].first <= e[t].second &&
                     e[t].second < e[t + 1].second;
                if (ok && t + 2 < n) ok = e[t].second < e[t + 2].first;
            }
            if (!ok) ++interlace_fail;
            if (srbb::laces::lace_of(l.as_graph()).edges != l.edges) ++interlace_fail;
        }
    }
    criterion(2, "lace-characterization", counterexamples == 0 && interlace_fail == 0,
              std::to_string(checked) + " containments, " + std::to_string(laces_total) +
                  " laces to N=8, " + std::to_string(counterexamples + interlace_fail) +
                  " violations");
}

void c03_combinatorial_constants()
{
    using namespace srbb::laces;
    const bool irr5 = enumerate_irreducible(3).size() == 5;
    const auto l3 = enumerate_laces(3);
    const bool two = l3.size() == 2;
    const bool compat_single =
        compatible_set(Lace{3, {{1, 3}}}) == std::vector<Edge>{{1, 2}, {2, 3}};
    const bool compat_chain = compatible_set(Lace{3, {{1, 2}, {2, 3}}}).empty();
    criterion(3, "combinatorial-constants", irr5 && two && compat_single && compat_chain,
              "|J_3|=" + std::to_string(enumerate_irreducible(3).size()) +
                  ", |L_3|=" + std::to_string(l3.size()));
}

void c04_convolution_identity()
{
    srbb::pi::PiParams p;
    p.alpha = 0.5;
    p.d = 3;
    p.M = 32;
    p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
    p.rng = {104, 0, 1024};
    p.workers = 0; // all cores; results identical by chunked reduction
    const auto rows = srbb::pi::convolution_identity_check(p, 5, 100000);

    const bool r1 = rows[0].r == 0.0;
    const bool r2 = std::abs(rows[1].r) <= 1e-14;
    bool rest = true;
    double worst = 0.0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double sig = rows[i].r_err > 0 ? std::abs(rows[i].r) / rows[i].r_err : 1e300;
        worst = std::max(worst, sig);
        rest = rest && sig <= 4.0;
    }
    criterion(4, "convolution-identity", r1 && r2 && rest,
              "r1=" + fmt(rows[0].r) + ", |r2|=" + fmt(std::abs(rows[1].r)) +
                  ", worst |r|/err = " + fmt(worst));
}

void c05_gamma_bounds()
{
    const int d = 3;
    bool exact_ok = true;
    {
        srbb::gamma::GammaParams p;
        p.alpha = 0.0;
        p.d = d;
        p.M = 32;
        p.rng.seed = 105;
        const std::vector<double> origin(d, 0.0);
        for (int N = 1; N <= 40; ++N) {
            p.rng.stream = static_cast<std::uint64_t>(N);
            const auto est = srbb::gamma::estimate_gamma_point(p, N, origin, 50);
            if (est.value != srbb::heat_kernel(d, static_cast<double>(N), 0.0) ||
                est.std_error != 0.0)
                exact_ok = false;
        }
    }

    bool sandwich_ok = true;
    double worst_margin = 0.0;
    {
        srbb::gamma::GammaParams p;
        p.alpha = 0.25;
        p.d = d;
        p.M = 32;
        p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
        p.rng.seed = 1055;
        p.workers = 0;
        const auto table = srbb::gamma::build_table(p, 40, 400);
        for (int N = 1; N <= 40; ++N) {
            const auto& e = table.at(N);
            const double phi = srbb::heat_kernel(d, static_cast<double>(N), 0.0);
            const double lower = std::exp(-0.25 * 1.0 * N * (N - 1) / 2.0) * phi;
            if (e.value > phi + 4 * e.std_error) sandwich_ok = false;
            if (e.value < lower - 4 * e.std_error) sandwich_ok = false;
            worst_margin = std::max(worst_margin, (e.value - phi) / (e.std_error > 0 ? e.std_error : 1.0));
        }
    }
    criterion(5, "gamma-bounds", exact_ok && sandwich_ok,
              std::string("alpha=0 exact: ") + (exact_ok ? "yes" : "NO") +
                  ", worst upper margin " + fmt(worst_margin) + " sigma");
}

void c06_connective_constant()
{
    // alpha = 0: the estimator table equals the closed form, lambda_c = 1.
    const auto free_table = srbb::gamma::free_gas_table(3, 1.0, 40);
    const auto br0 = srbb::gamma::estimate_lambda_c(free_table);
    const bool zero_ok = br0.lower <= 1.0 + 1e-12 && br0.upper >= 1.0 - 1e-12 &&
                         std::abs(br0.point_estimate - 1.0) <= 0.01;

    srbb::gamma::GammaParams p;
    p.alpha = 0.25;
    p.d = 3;
    p.M = 16;
    p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
    p.rng.seed = 106;
    p.workers = 0;
    const auto table = srbb::gamma::build_table(p, 24, 2000);
    const auto br = srbb::gamma::estimate_lambda_c(table);
    const bool pos_ok = 1.0 <= br.lower && br.lower <= br.upper &&
                        br.upper == std::exp(0.25 * 1.0);
    criterion(6, "connective-constant", zero_ok && pos_ok,
              "alpha=0 point " + fmt(br0.point_estimate) + "; alpha=0.25 bracket [" +
                  fmt(br.lower) + ", " + fmt(br.upper) + "]");
}

void c07_free_gas_critical_density()
{
    const auto t5 = srbb::gamma::free_gas_table(5, 1.0, 200);
    const auto s5 = srbb::gamma::estimate_rho_c(t5, 1.0, 200);
    const double oracle = zeta_partial_plus_tail(2.5) * std::pow(kTwoPi, -2.5);
    const double rel = std::abs(s5.partial.back() - oracle) / oracle;

    const auto t2 = srbb::gamma::free_gas_table(2, 1.0, 400);
    const auto s2 = srbb::gamma::estimate_rho_c(t2, 1.0, 400);
    std::vector<double> lk, sk;
    for (int K = 40; K <= 400; K += 20) {
        lk.push_back(std::log(static_cast<double>(K)));
        sk.push_back(s2.partial[static_cast<std::size_t>(K - 1)]);
    }
    const double slope = fit(lk, sk).slope;
    const double want = 1.0 / kTwoPi;
    const bool log_div = std::abs(slope - want) / want <= 0.10;

    criterion(7, "critical-density", rel < 0.01 && log_div,
              "S_200 rel err " + fmt(rel) + ", d=2 slope " + fmt(slope) + " vs " + fmt(want));
}

void c08_thermo_consistency()
{
    const auto g = srbb::gamma::free_gas_table(5, 1.0, 400);
    const int K = 400;
    const double rho_c = srbb::thermo::truncated_rho_c(g, 1.0, K);

    double max_gap = 0.0, max_mass_err = 0.0;
    for (double rho : {0.2 * rho_c, 0.5 * rho_c, 0.95 * rho_c, 1.3 * rho_c, 2.0 * rho_c}) {
        const auto fe = srbb::thermo::free_energy(rho, 1.0, g, K, 1e-12);
        max_gap = std::max(max_gap, fe.gap);
        max_mass_err =
            std::max(max_mass_err, std::abs(fe.minimizer.mass() - std::min(rho, rho_c)));
    }

    bool monotone = true;
    double prev = 1e300;
    for (int i = 1; i <= 50; ++i) {
        const double rho = rho_c * i / 50.0;
        const auto sc = srbb::thermo::solve_c(rho, 1.0, g, K, 1e-13);
        if (!(sc.c < prev)) monotone = false;
        prev = sc.c;
    }

    auto f = [&](double rho) { return srbb::thermo::free_energy(rho, 1.0, g, K, 1e-13).closed_form; };
    const double dr = rho_c * 1e-3;
    const double below =
        (f(0.6 * rho_c + dr) - 2 * f(0.6 * rho_c) + f(0.6 * rho_c - dr)) / (dr * dr);
    const double above =
        (f(1.6 * rho_c + dr) - 2 * f(1.6 * rho_c) + f(1.6 * rho_c - dr)) / (dr * dr);
    const bool curvature = below > 0.0 && std::abs(above) < 1e-4 * below;

    criterion(8, "thermo-consistency",
              max_gap <= 1e-6 && max_mass_err <= 1e-8 && monotone && curvature,
              "gap " + fmt(max_gap) + ", mass err " + fmt(max_mass_err) + ", f'' below/above " +
                  fmt(below) + "/" + fmt(above));
}

void c09_partition_sampler()
{
    // exact distribution on N = 6 with free-gas-flavoured weights
    const int N = 6;
    srbb::permsample::WeightVector theta;
    for (int k = 1; k <= N; ++k)
        theta.theta.push_back(30.0 * srbb::heat_kernel(3, static_cast<double>(k), 0.0));
    const auto z = srbb::permsample::z_recursion(theta, N);

    const std::uint64_t n = 1000000;
    const auto samples = srbb::permsample::sample_partitions(theta, N, n, {109, 0, 8192}, 0);
    std::map<std::vector<std::uint32_t>, std::uint64_t> freq;
    for (const auto& s : samples) ++freq[s.counts];

    // enumerate partitions of 6 and accumulate TV distance
    double tv = 0.0;
    std::vector<std::vector<std::uint32_t>> parts;
    {
        std::vector<std::uint32_t> cur(N, 0);
        std::function<void(int, int)> rec = [&](int rem, int maxp) {
            if (rem == 0) {
                parts.push_back(cur);
                return;
            }
            for (int k = std::min(rem, maxp); k >= 1; --k) {
                ++cur[static_cast<std::size_t>(k - 1)];
                rec(rem - k, k);
                --cur[static_cast<std::size_t>(k - 1)];
            }
        };
        rec(N, N);
    }
    for (const auto& l : parts) {
        const double exact =
            std::exp(srbb::permsample::log_probability(theta, z, {N, l}));
        const double emp = freq.count(l) ? static_cast<double>(freq[l]) / n : 0.0;
        tv += std::abs(exact - emp);
    }
    tv *= 0.5;

    // theta = 1: Z_N = 1 against the exhaustive oracle, E[l_1] = 1
    bool z_ok = true;
    {
        srbb::permsample::WeightVector ones;
        ones.theta.assign(8, 1.0);
        const auto z1 = srbb::permsample::z_recursion(ones, 8);
        for (int m = 0; m <= 8; ++m)
            if (std::abs(z1.z[static_cast<std::size_t>(m)] - 1.0) > 1e-12) z_ok = false;

        const auto s1 = srbb::permsample::sample_partitions(ones, 8, 1000000, {1099, 0, 8192}, 0);
        double mean_l1 = 0.0;
        for (const auto& s : s1) mean_l1 += s.counts[0];
        mean_l1 /= static_cast<double>(s1.size());
        if (std::abs(mean_l1 - 1.0) > 0.005) z_ok = false;
    }

    criterion(9, "partition-sampler", tv < 0.01 && z_ok, "TV = " + fmt(tv) + " over " +
                                                             std::to_string(parts.size()) +
                                                             " partitions");
}

void c10_cycle_statistics_vs_minimizer()
{
    const int N = 2000;
    const auto table = srbb::gamma::free_gas_table(5, 1.0, N);
    const double rho_c = srbb::thermo::truncated_rho_c(table, 1.0, N);

    // subcritical: empirical densities track p* for k <= 5
    bool sub_ok = true;
    double worst_dev = 0.0;
    {
        const double rho = 0.5 * rho_c;
        const double volume = N / rho;
        srbb::permsample::WeightVector theta;
        for (int k = 1; k <= N; ++k) theta.theta.push_back(volume * table.at(k).value);
        const auto samples =
            srbb::permsample::sample_partitions(theta, N, 10000, {110, 0, 1024}, 0);
        const auto st = srbb::permsample::cycle_statistics(samples, volume);
        const auto p_star = srbb::thermo::minimizer_p_star(rho, 1.0, table, N, 1e-12);
        for (int k = 1; k <= 5; ++k) {
            const auto i = static_cast<std::size_t>(k - 1);
            const double dev = std::abs(st.mean[i] - p_star.p[i]) / st.std_error[i];
            worst_dev = std::max(worst_dev, dev);
            if (dev > 4.0) sub_ok = false;
        }
    }

    // supercritical: finite-cycle mass plateaus near rho_c
    bool super_ok = true;
    double plateau = 0.0;
    {
        const double rho = 2.0 * rho_c;
        const double volume = N / rho;
        srbb::permsample::WeightVector theta;
        for (int k = 1; k <= N; ++k) theta.theta.push_back(volume * table.at(k).value);
        const auto samples =
            srbb::permsample::sample_partitions(theta, N, 10000, {111, 0, 1024}, 0);
        const auto st = srbb::permsample::cycle_statistics(samples, volume);
        const int K = 400;
        for (int k = 1; k <= K; ++k) plateau += k * st.mean[static_cast<std::size_t>(k - 1)];
        if (std::abs(plateau - rho_c) > 0.10 * rho_c) super_ok = false;
    }

    criterion(10, "cycles-vs-minimizer", sub_ok && super_ok,
              "worst subcritical dev " + fmt(worst_dev) + " sigma; truncated mass " +
                  fmt(plateau) + " vs rho_c " + fmt(rho_c));
}

void c11_deconvolution()
{
    using namespace srbb::greenlab;
    const GridSpec spec{1, 12.0, 0.01};
    const GridFn phi = heat_kernel_grid(spec, 1.0);

    // geometric case
    const auto res = neumann_deconvolve(scale(phi, 0.5), phi, 1e-10);
    double l1 = 0.0;
    const int K = spec.half_points();
    for (int i = 0; i <= 2 * K; ++i) {
        const double x = (i - K) * spec.h;
        double oracle = 0.0;
        double w = 1.0;
        for (int n = 1; n <= 260; ++n) {
            w *= res.mu;
            oracle += w * srbb::heat_kernel(1, static_cast<double>(n), x * x);
        }
        l1 += std::abs(res.S.values[static_cast<std::size_t>(i)] - oracle);
    }
    l1 *= spec.h;
    const bool geometric_ok = l1 < 1e-6 && res.residual_l1 < 1e-6;

    // synthetic forward construction and inversion
    bool roundtrip_ok = true;
    double rt_err = 0.0, rt_resid = 0.0;
    {
        const int n_max = 24;
        std::vector<GridFn> gam, pis;
        for (int n = 1; n <= n_max; ++n)
            gam.push_back(scale(heat_kernel_grid(spec, static_cast<double>(n)),
                                std::pow(0.55, n) * (1.0 + 0.4 * std::pow(0.5, n))));
        for (int n = 1; n <= n_max; ++n) {
            GridFn pn = gam[static_cast<std::size_t>(n - 1)];
            for (int k = 1; k < n; ++k)
                pn = subtract(pn, convolve(pis[static_cast<std::size_t>(k - 1)],
                                           gam[static_cast<std::size_t>(n - k - 1)]));
            pis.push_back(pn);
        }
        GridFn g_pi{spec, std::vector<double>(spec.total_points(), 0.0)};
        GridFn g_gamma = g_pi;
        for (int n = 1; n <= n_max; ++n) {
            g_pi = add(g_pi, pis[static_cast<std::size_t>(n - 1)]);
            g_gamma = add(g_gamma, gam[static_cast<std::size_t>(n - 1)]);
        }
        const auto rt = neumann_deconvolve(g_pi, phi, 1e-10);
        for (std::size_t i = 0; i < g_gamma.values.size(); ++i)
            rt_err += std::abs(rt.S.values[i] - g_gamma.values[i]);
        rt_err *= spec.h;
        rt_resid = rt.residual_l1;
        roundtrip_ok = rt_err < 1e-5 && rt_resid < 1e-6;
    }

    // norm inequality on random pairs
    bool norm_ok = true;
    {
        const GridSpec small{1, 5.0, 0.05};
        srbb::ChunkRng rng(srbb::RngSpec{1111}, 0);
        for (int rep = 0; rep < 1000; ++rep) {
            GridFn f{small, std::vector<double>(small.total_points())};
            GridFn g{small, std::vector<double>(small.total_points())};
            for (double& v : f.values) v = rng.uniform() * std::exp(-4.0 * rng.uniform());
            for (double& v : g.values) v = rng.uniform() * std::exp(-4.0 * rng.uniform());
            if (banach_norm(convolve(f, g)) > 4.0 * banach_norm(f) * banach_norm(g) + 1e-12)
                norm_ok = false;
        }
    }

    criterion(11, "deconvolution", geometric_ok && roundtrip_ok && norm_ok,
              "geometric L1 " + fmt(l1) + ", roundtrip L1 " + fmt(rt_err) + ", residual " +
                  fmt(rt_resid));
}

void c12_green_asymptotics()
{
    const int d = 5;
    const double a5 = srbb::greenlab::green_asymptotic_constant(d);
    const bool const_ok = std::abs(a5 - 1.0 / (4.0 * 9.869604401089358)) < 1e-14;

    std::vector<double> lx, ly;
    for (int i = 0; i <= 24; ++i) {
        const double r = 5.0 * std::pow(4.0, i / 24.0); // [5, 20] log-spaced
        const double res = std::abs(srbb::greenlab::green_G(r, d, 1e-12) - a5 / (r * r * r));
        lx.push_back(std::log(r));
        ly.push_back(std::log(res));
    }
    const double slope = fit(lx, ly).slope;
    criterion(12, "green-asymptotics", const_ok && slope <= -6.5,
              "a_5 = " + fmt(a5) + ", residual log-log slope " + fmt(slope));
}

void c13_un_decay()
{
    srbb::pi::PiParams p;
    p.alpha = 1.0;
    p.d = 3;
    p.M = 16;
    p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
    p.workers = 0;

    const std::vector<double> o(3, 0.0);
    std::vector<double> xs, ys;
    for (int i = 0; i <= 5; ++i) {
        const double r = 0.4 * i;
        std::vector<double> y = o;
        y[0] = r;
        p.rng = {113, static_cast<std::uint64_t>(i), 4096};
        const auto est = srbb::pi::estimate_u_n(p, {o, o, y, y}, 200000);
        if (est.value <= 0.0) continue;
        xs.push_back(r * r);
        ys.push_back(std::log(est.value));
    }
    const double slope = xs.size() >= 3 ? fit(xs, ys).slope : 0.0;
    criterion(13, "un-decay", slope < 0.0 && std::abs(slope) >= 0.05,
              "log u vs r^2 slope " + fmt(slope) + " over " + std::to_string(xs.size()) +
                  " radii");
}

void c14_scaling_exponent()
{
    bool free_ok = true;
    for (int d : {3, 5}) {
        const auto t = srbb::gamma::free_gas_table(d, 1.0, 40);
        const auto f = srbb::gamma::fit_scaling_exponent(t, 1.0, 10, 40);
        if (std::abs(f.slope + 0.5 * d) > 0.05) free_ok = false;
    }

    srbb::gamma::GammaParams p;
    p.alpha = 0.1;
    p.d = 5;
    p.M = 16;
    p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
    p.rng.seed = 114;
    p.workers = 0;
    const auto table = srbb::gamma::build_table(p, 40, 2500);
    const auto br = srbb::gamma::estimate_lambda_c(table);
    const auto f = srbb::gamma::fit_scaling_exponent(table, br.lower, 10, 40);
    criterion(14, "scaling-exponent", free_ok && f.slope <= -1.5,
              "free-gas fits -d/2; interacting slope " + fmt(f.slope) + " at lambda " +
                  fmt(br.lower));
}

void c15_determinism()
{
    srbb::gamma::GammaParams p;
    p.alpha = 0.3;
    p.d = 2;
    p.M = 16;
    p.potential = srbb::paths::PairPotential::step_ball(1.0, 1.0);
    p.rng.seed = 115;

    p.workers = 1;
    const auto t1 = srbb::gamma::build_table(p, 8, 3000);
    p.workers = 4;
    const auto t2 = srbb::gamma::build_table(p, 8, 3000);
    const bool tables_ok =
        srbb::io::serialize_gamma_table(t1) == srbb::io::serialize_gamma_table(t2);

    srbb::permsample::WeightVector theta;
    for (int k = 1; k <= 50; ++k) theta.theta.push_back(100.0 * std::pow(0.8, k));
    const auto s1 = srbb::permsample::sample_partitions(theta, 50, 5000, {116, 0, 256}, 1);
    const auto s2 = srbb::permsample::sample_partitions(theta, 50, 5000, {116, 0, 256}, 4);
    bool samples_ok = true;
    for (std::size_t i = 0; i < s1.size(); ++i)
        if (s1[i].counts != s2[i].counts) samples_ok = false;

    criterion(15, "determinism", tables_ok && samples_ok,
              std::string("tables byte-identical: ") + (tables_ok ? "yes" : "NO") +
                  ", samples identical: " + (samples_ok ? "yes" : "NO"));
}

} // namespace

int main()
{
    std::printf("srbb acceptance suite\n");
    g_t0 = std::chrono::steady_clock::now();

    c01_lace_identity();
    c02_characterization();
    c03_combinatorial_constants();
    c04_convolution_identity();
    c05_gamma_bounds();
    c06_connective_constant();
    c07_free_gas_critical_density();
    c08_thermo_consistency();
    c09_partition_sampler();
    c10_cycle_statistics_vs_minimizer();
    c11_deconvolution();
    c12_green_asymptotics();
    c13_un_decay();
    c14_scaling_exponent();
    c15_determinism();

    if (g_failures == 0) {
        std::printf("all 15 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
