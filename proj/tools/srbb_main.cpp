// srbb: command-line lab for self-repellent Brownian bridge weights, lace
// combinatorics, cycle-weighted partition sampling and the Green-function
// deconvolution algebra.

#include "srbb/errors.hpp"
#include "srbb/gamma.hpp"
#include "srbb/greenlab.hpp"
#include "srbb/heat_kernel.hpp"
#include "srbb/io.hpp"
#include "srbb/laces.hpp"
#include "srbb/permsample.hpp"
#include "srbb/pi.hpp"
#include "srbb/thermo.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "srbb 0.1.0";

using srbb::io::format_double;

struct ModelOpts {
    double alpha = 0.0;
    double beta = 1.0;
    int d = 3;
    int M = 32;
    std::string potential = "step-ball";
    double eta = 1.0;
    double range = 1.0;
    std::uint64_t seed = 0;
    std::uint32_t chunk_size = 4096;
    int workers = 1;

    srbb::paths::PairPotential make_potential() const
    {
        if (potential == "step-ball") return srbb::paths::PairPotential::step_ball(eta, range);
        if (potential == "smooth-bump") return srbb::paths::PairPotential::smooth_bump(eta, range);
        throw srbb::config_error("unknown potential '" + potential + "'");
    }

    srbb::gamma::GammaParams gamma_params() const
    {
        srbb::gamma::GammaParams p;
        p.alpha = alpha;
        p.beta = beta;
        p.d = d;
        p.M = M;
        p.potential = make_potential();
        p.rng.seed = seed;
        p.rng.chunk_size = chunk_size;
        p.workers = workers;
        return p;
    }

    std::vector<std::pair<std::string, std::string>> echo() const
    {
        return {
            {"alpha", format_double(alpha)},       {"beta", format_double(beta)},
            {"d", std::to_string(d)},              {"M", std::to_string(M)},
            {"potential", potential},              {"eta", format_double(eta)},
            {"range", format_double(range)},       {"seed", std::to_string(seed)},
            {"chunk_size", std::to_string(chunk_size)},
        };
    }
};

void add_model_opts(CLI::App* cmd, ModelOpts& m, bool need_seed = true)
{
    cmd->add_option("--alpha", m.alpha, "interaction strength multiplier");
    cmd->add_option("--beta", m.beta, "leg duration");
    cmd->add_option("-d,--dim", m.d, "spatial dimension");
    cmd->add_option("-M,--steps-per-leg", m.M, "grid points per unit leg");
    cmd->add_option("--potential", m.potential, "step-ball | smooth-bump");
    cmd->add_option("--eta", m.eta, "potential height");
    cmd->add_option("--range", m.range, "potential support radius");
    auto* seed = cmd->add_option("--seed", m.seed, "master seed (all randomness flows from it)");
    if (need_seed) seed->required();
    cmd->add_option("--chunk-size", m.chunk_size, "samples per RNG chunk");
    cmd->add_option("--workers", m.workers, "worker threads (results identical for any count)");
}

// Deterministic manifest header: config echo + hash, no timestamps.
std::string manifest(const std::string& subcommand,
                     std::vector<std::pair<std::string, std::string>> kv)
{
    std::vector<std::pair<std::string, std::string>> head{{"srbb", "output v1"},
                                                          {"version", kVersion},
                                                          {"subcommand", subcommand}};
    head.insert(head.end(), kv.begin(), kv.end());
    std::string blob;
    for (const auto& [k, v] : head) blob += k + "=" + v + ";";
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(srbb::io::fnv1a(blob)));
    head.push_back({"config_hash", hash});
    return srbb::io::header_block(head);
}

srbb::gamma::GammaTable load_table_or_free_gas(const std::string& table_path, bool free_gas,
                                               int d, double beta, int K)
{
    if (free_gas) return srbb::gamma::free_gas_table(d, beta, K);
    if (table_path.empty())
        throw srbb::config_error("need --table FILE or --free-gas as the weight source");
    return srbb::io::parse_gamma_table(srbb::io::read_file(table_path));
}

double resolve_lambda(const std::string& spec, const srbb::gamma::GammaTable& table)
{
    if (spec == "lower" || spec == "point" || spec == "upper") {
        const auto br = srbb::gamma::estimate_lambda_c(table);
        if (spec == "lower") return br.lower;
        if (spec == "upper") return br.upper;
        return br.point_estimate;
    }
    return srbb::io::parse_double(spec);
}

// ---------------------------------------------------------------- commands

int cmd_estimate_gamma(const ModelOpts& m, int kmax, std::uint64_t samples,
                       const std::string& out)
{
    const auto params = m.gamma_params();
    srbb::gamma::GammaTable table;

    if (srbb::io::file_exists(out)) {
        const auto existing = srbb::io::parse_gamma_table(srbb::io::read_file(out));
        const auto& q = existing.params;
        const bool same = q.alpha == params.alpha && q.beta == params.beta && q.d == params.d &&
                          q.M == params.M && q.rng.seed == params.rng.seed &&
                          q.rng.chunk_size == params.rng.chunk_size &&
                          existing.n_samples_per_k == samples &&
                          q.potential.kind == params.potential.kind &&
                          q.potential.strength == params.potential.strength &&
                          q.potential.range == params.potential.range;
        if (!same)
            throw srbb::config_error("existing table '" + out +
                                     "' was built with different parameters; refusing to overwrite");
        srbb::gamma::GammaTable resumed = existing;
        resumed.params.workers = m.workers;
        table = srbb::gamma::extend_table(resumed, kmax);
        std::cout << "resumed " << out << " at k=" << existing.k_max() << "\n";
    } else {
        table = srbb::gamma::build_table(params, kmax, samples);
    }

    srbb::io::write_file(out, srbb::io::serialize_gamma_table(table));
    std::cout << "wrote " << out << " (K_max=" << table.k_max() << ")\n";
    return 0;
}

int cmd_estimate_rhoc(const ModelOpts& m, const std::string& table_path, bool free_gas,
                      const std::string& lambda_spec, int K, const std::string& out)
{
    const auto table = load_table_or_free_gas(table_path, free_gas, m.d, m.beta, K);
    const int k_use = std::min(K, table.k_max());
    const double lambda = resolve_lambda(lambda_spec, table);
    const auto sums = srbb::gamma::estimate_rho_c(table, lambda, k_use);

    std::string csv = manifest("estimate-rhoc", {{"lambda", format_double(lambda)},
                                                 {"K", std::to_string(k_use)},
                                                 {"source", free_gas ? "free-gas" : table_path},
                                                 {"d", std::to_string(table.params.d)}});
    csv += "k,increment,partial_sum,std_error\n";
    for (int k = 1; k <= k_use; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        csv += std::to_string(k) + "," + format_double(sums.increment[i]) + "," +
               format_double(sums.partial[i]) + "," + format_double(sums.std_error[i]) + "\n";
    }
    srbb::io::write_file(out, csv);
    std::cout << "S_" << k_use << " = " << format_double(sums.partial.back()) << " +- "
              << format_double(sums.std_error.back()) << "\n";
    return 0;
}

int cmd_phase_diagram(const ModelOpts& m, const std::string& table_path, bool free_gas, int kmax,
                      const std::string& lambda_spec, double rho_min, double rho_max, int steps,
                      const std::string& out)
{
    if (steps < 1 || rho_min <= 0.0 || rho_max < rho_min)
        throw srbb::config_error("phase-diagram: need 0 < rho-min <= rho-max and steps >= 1");
    const auto table = load_table_or_free_gas(table_path, free_gas, m.d, m.beta, kmax);
    const int K = std::min(kmax, table.k_max());
    const double lambda = resolve_lambda(lambda_spec, table);

    std::string csv = manifest("phase-diagram", {{"lambda", format_double(lambda)},
                                                 {"K", std::to_string(K)},
                                                 {"source", free_gas ? "free-gas" : table_path},
                                                 {"rho_min", format_double(rho_min)},
                                                 {"rho_max", format_double(rho_max)},
                                                 {"rho_steps", std::to_string(steps)},
                                                 {"rho_c_truncated",
                                                  format_double(srbb::thermo::truncated_rho_c(
                                                      table, lambda, K))}});
    csv += "rho,c,f,mass,regime\n";
    for (int i = 0; i < steps; ++i) {
        const double rho =
            steps == 1 ? rho_min : rho_min + (rho_max - rho_min) * i / (steps - 1.0);
        const auto fe = srbb::thermo::free_energy(rho, lambda, table, K, 1e-11);
        csv += format_double(rho) + "," + format_double(fe.c) + "," +
               format_double(fe.closed_form) + "," + format_double(fe.minimizer.mass()) + "," +
               (fe.condensate ? "condensate" : "normal") + "\n";
    }
    srbb::io::write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_sample_cycles(const ModelOpts& m, const std::string& table_path, bool free_gas, int N,
                      std::uint64_t samples, double rho, double volume_override, int k_stats,
                      bool compare_pstar, const std::string& lambda_spec, const std::string& out,
                      const std::string& stats_out)
{
    if (N < 1) throw srbb::config_error("sample-cycles: N must be >= 1");
    if (rho <= 0.0 && volume_override <= 0.0)
        throw srbb::config_error("sample-cycles: need --rho or --volume");
    const double volume = volume_override > 0.0 ? volume_override : N / rho;

    srbb::permsample::WeightVector theta;
    srbb::gamma::GammaTable table;
    if (free_gas) {
        table = srbb::gamma::free_gas_table(m.d, m.beta, N);
    } else {
        table = load_table_or_free_gas(table_path, false, m.d, m.beta, N);
        if (table.k_max() < N)
            throw srbb::config_error("sample-cycles: table shorter than N; extend it first");
    }
    for (int k = 1; k <= N; ++k) theta.theta.push_back(volume * table.at(k).value);

    srbb::RngSpec rng{m.seed, 0, m.chunk_size};
    const auto sampled = srbb::permsample::sample_partitions(theta, N, samples, rng, m.workers);

    const auto head = manifest("sample-cycles", {{"N", std::to_string(N)},
                                                 {"samples", std::to_string(samples)},
                                                 {"d", std::to_string(m.d)},
                                                 {"beta", format_double(m.beta)},
                                                 {"rho", format_double(rho)},
                                                 {"volume", format_double(volume)},
                                                 {"volume_convention", "N/rho unless overridden"},
                                                 {"source", free_gas ? "free-gas" : table_path},
                                                 {"seed", std::to_string(m.seed)},
                                                 {"outputs", (out.empty() ? "" : out + ";") + stats_out}});
    if (!out.empty()) {
        std::string lines = head;
        for (const auto& s : sampled) {
            std::string row;
            for (std::size_t k = 0; k < s.counts.size(); ++k) {
                if (s.counts[k] == 0) continue;
                if (!row.empty()) row += " ";
                row += std::to_string(k + 1) + ":" + std::to_string(s.counts[k]);
            }
            lines += row + "\n";
        }
        srbb::io::write_file(out, lines);
    }

    const auto st = srbb::permsample::cycle_statistics(sampled, volume);
    const int k_hi = std::min(k_stats, N);
    std::string csv = head;
    if (compare_pstar) {
        const double lambda = resolve_lambda(lambda_spec, table);
        const auto p_star = srbb::thermo::minimizer_p_star(rho, lambda, table, N, 1e-12);
        csv += "k,mean_density,std_error,p_star,deviation_sigmas\n";
        for (int k = 1; k <= k_hi; ++k) {
            const auto i = static_cast<std::size_t>(k - 1);
            const double dev = st.std_error[i] > 0.0
                                   ? std::abs(st.mean[i] - p_star.p[i]) / st.std_error[i]
                                   : 0.0;
            csv += std::to_string(k) + "," + format_double(st.mean[i]) + "," +
                   format_double(st.std_error[i]) + "," + format_double(p_star.p[i]) + "," +
                   format_double(dev) + "\n";
        }
    } else {
        csv += "k,mean_density,std_error\n";
        for (int k = 1; k <= k_hi; ++k) {
            const auto i = static_cast<std::size_t>(k - 1);
            csv += std::to_string(k) + "," + format_double(st.mean[i]) + "," +
                   format_double(st.std_error[i]) + "\n";
        }
    }
    srbb::io::write_file(stats_out, csv);
    std::cout << "wrote " << stats_out << (out.empty() ? "" : " and " + out) << "\n";
    return 0;
}

int cmd_verify(const ModelOpts& m, const std::string& mutate, const std::string& out,
               const std::string& residuals_out, int lace_nmax)
{
    if (lace_nmax < 2 || lace_nmax > srbb::laces::kEnumerationCap)
        throw srbb::resource_limit("verify: --lace-nmax " + std::to_string(lace_nmax) +
                                   " outside [2, " +
                                   std::to_string(srbb::laces::kEnumerationCap) + "]");

    nlohmann::json report;
    report["version"] = kVersion;
    bool all_pass = true;

    auto push = [&](const std::string& suite, std::uint64_t cases, double max_disc, bool pass) {
        report["suites"].push_back({{"suite", suite},
                                    {"cases", cases},
                                    {"max_discrepancy", max_disc},
                                    {"verdict", pass ? "pass" : "fail"}});
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << suite << " (cases=" << cases
                  << ", max_disc=" << max_disc << ")\n";
    };

    { // lace resummation identity
        srbb::ChunkRng rng(srbb::RngSpec{m.seed, 1001, 1}, 0);
        double worst = 0.0;
        std::uint64_t cases = 0;
        for (int N = 2; N <= std::min(lace_nmax, 6); ++N) {
            for (int rep = 0; rep < 200; ++rep) {
                std::vector<double> u(static_cast<std::size_t>(srbb::laces::edge_slots(N)));
                for (double& v : u) v = rng.uniform();
                worst = std::max(worst, srbb::laces::lace_identity_check(N, u).discrepancy);
                ++cases;
            }
        }
        push("lace-identity", cases, worst, worst <= 1e-12);
    }

    { // characterization lemma (optionally with the deliberate fault)
        const bool flip = mutate == "compat-flip";
        std::uint64_t cases = 0;
        bool ok = true;
        for (int N = 2; N <= std::min(lace_nmax, 6) && ok; ++N) {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> lace_and_compat;
            for (const auto& l : srbb::laces::enumerate_laces(N)) {
                std::uint32_t cm = srbb::laces::compatible_mask(l);
                if (flip) cm ^= 1u; // deliberate fault for the mutation harness
                lace_and_compat.push_back({l.as_graph().edges, cm});
            }
            for (const auto& g : srbb::laces::enumerate_irreducible(N)) {
                const std::uint32_t canon = srbb::laces::lace_of(g).as_graph().edges;
                for (const auto& [lm, cm] : lace_and_compat) {
                    if ((g.edges & lm) != lm) continue;
                    const bool rest = (g.edges & ~lm & ~cm) == 0;
                    if (rest != (lm == canon)) {
                        ok = false;
                        break;
                    }
                    ++cases;
                }
                if (!ok) break;
            }
        }
        for (int N = 2; N <= lace_nmax && ok; ++N) {
            for (const auto& l : srbb::laces::enumerate_laces(N)) {
                ++cases;
                if (srbb::laces::lace_of(l.as_graph()).edges != l.edges) ok = false;
            }
        }
        push("lace-characterization", cases, ok ? 0.0 : 1.0, ok);
    }

    { // renewal convolution residuals
        srbb::pi::PiParams p;
        p.alpha = 0.5;
        p.d = 2;
        p.M = 16;
        p.potential = m.make_potential();
        p.rng = {m.seed, 1002, 512};
        p.workers = m.workers;
        const auto rows = srbb::pi::convolution_identity_check(p, 4, 20000);
        double worst = 0.0;
        bool ok = rows[0].r == 0.0 && std::abs(rows[1].r) <= 1e-13;
        for (std::size_t i = 2; i < rows.size(); ++i) {
            const double sig = rows[i].r_err > 0 ? std::abs(rows[i].r) / rows[i].r_err : 0.0;
            worst = std::max(worst, sig);
            ok = ok && sig <= 4.0;
        }
        push("convolution-residuals", rows.size(), worst, ok);

        if (!residuals_out.empty()) {
            std::string csv = manifest("verify", {{"alpha", format_double(p.alpha)},
                                                  {"d", std::to_string(p.d)},
                                                  {"seed", std::to_string(p.rng.seed)}});
            csv += "N,Z,z_err,P,p_err,r,r_err\n";
            for (const auto& r : rows)
                csv += std::to_string(r.N) + "," + format_double(r.z) + "," +
                       format_double(r.z_err) + "," + format_double(r.p) + "," +
                       format_double(r.p_err) + "," + format_double(r.r) + "," +
                       format_double(r.r_err) + "\n";
            srbb::io::write_file(residuals_out, csv);
        }
    }

    { // deconvolution round trip
        using namespace srbb::greenlab;
        const GridSpec spec{1, 12.0, 0.04};
        const GridFn phi = heat_kernel_grid(spec, 1.0);
        const auto res = neumann_deconvolve(scale(phi, 0.5), phi, 1e-9);
        double err = 0.0;
        const int K = spec.half_points();
        for (int i = 0; i <= 2 * K; ++i) {
            const double x = (i - K) * spec.h;
            err += std::abs(res.S.values[static_cast<std::size_t>(i)] -
                            g_mu_point(std::abs(x), res.mu, 1, 1e-13));
        }
        err *= spec.h;
        const double worst = std::max(err, res.residual_l1);
        push("deconvolution-roundtrip", spec.total_points(), worst, worst < 1e-6);
    }

    if (!out.empty()) srbb::io::write_file(out, report.dump(2) + "\n");
    std::cout << (all_pass ? "verify: all suites passed\n" : "verify: FAILURES\n");
    return all_pass ? 0 : 1;
}

int cmd_deconvolve(const std::string& gpi_path, double lambda_preset, double extent, double h,
                   double tol, const std::string& out)
{
    using namespace srbb::greenlab;
    GridFn g_pi;
    if (!gpi_path.empty()) {
        g_pi = srbb::io::parse_grid_fn(srbb::io::read_file(gpi_path));
    } else {
        const GridSpec spec{1, extent, h};
        g_pi = scale(heat_kernel_grid(spec, 1.0), lambda_preset);
    }
    const GridFn phi = heat_kernel_grid(g_pi.spec, 1.0);
    const auto res = neumann_deconvolve(g_pi, phi, tol);

    std::string text = manifest("deconvolve", {{"source", gpi_path.empty() ? "preset" : gpi_path},
                                               {"preset_lambda", format_double(lambda_preset)},
                                               {"tol", format_double(tol)},
                                               {"mu", format_double(res.mu)},
                                               {"kappa_norm", format_double(res.kappa_norm)},
                                               {"terms", std::to_string(res.terms)},
                                               {"residual_l1", format_double(res.residual_l1)}});
    text += srbb::io::serialize_grid_fn(res.S);
    srbb::io::write_file(out, text);
    std::cout << "mu=" << format_double(res.mu) << " terms=" << res.terms
              << " residual_l1=" << format_double(res.residual_l1) << "\n";
    return 0;
}

int cmd_green_asymptotics(int d, double r_min, double r_max, int steps, double tol,
                          const std::string& out)
{
    if (steps < 2 || r_min <= 0.0 || r_max <= r_min)
        throw srbb::config_error("green-asymptotics: need 0 < r-min < r-max, steps >= 2");
    const double a_d = srbb::greenlab::green_asymptotic_constant(d);
    std::string csv = manifest("green-asymptotics", {{"d", std::to_string(d)},
                                                     {"a_d", format_double(a_d)},
                                                     {"tol", format_double(tol)},
                                                     {"r_min", format_double(r_min)},
                                                     {"r_max", format_double(r_max)},
                                                     {"steps", std::to_string(steps)}});
    csv += "r,G,leading,residual\n";
    for (int i = 0; i < steps; ++i) {
        const double r = r_min * std::pow(r_max / r_min, i / (steps - 1.0));
        const double g = srbb::greenlab::green_G(r, d, tol);
        const double lead = a_d * std::pow(r, 2.0 - d);
        csv += format_double(r) + "," + format_double(g) + "," + format_double(lead) + "," +
               format_double(g - lead) + "\n";
    }
    srbb::io::write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_un_decay(const ModelOpts& m, std::uint64_t samples, double r_max, int steps,
                 const std::string& out)
{
    if (steps < 2 || r_max <= 0.0) throw srbb::config_error("un-decay: need steps >= 2, r-max > 0");
    srbb::pi::PiParams p;
    p.alpha = m.alpha;
    p.d = m.d;
    p.M = m.M;
    p.potential = m.make_potential();
    p.rng = {m.seed, 0, m.chunk_size};
    p.workers = m.workers;

    const std::vector<double> origin(static_cast<std::size_t>(m.d), 0.0);
    auto kv = m.echo();
    kv.push_back({"samples", std::to_string(samples)});
    kv.push_back({"r_max", format_double(r_max)});
    kv.push_back({"steps", std::to_string(steps)});
    std::string csv = manifest("un-decay", kv);
    csv += "r,r_sq,u,std_error,log_u\n";
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n_fit = 0;
    for (int i = 0; i < steps; ++i) {
        const double r = r_max * i / (steps - 1.0);
        std::vector<double> y = origin;
        y[0] = r;
        srbb::pi::PiParams pi_p = p;
        pi_p.rng.stream = static_cast<std::uint64_t>(i);
        const auto est = srbb::pi::estimate_u_n(pi_p, {origin, origin, y, y}, samples);
        const double lu = est.value > 0.0 ? std::log(est.value) : 0.0;
        csv += format_double(r) + "," + format_double(r * r) + "," + format_double(est.value) +
               "," + format_double(est.std_error) + "," +
               (est.value > 0.0 ? format_double(lu) : "nan") + "\n";
        if (est.value > 0.0) {
            sx += r * r;
            sy += lu;
            sxx += r * r * r * r;
            sxy += r * r * lu;
            ++n_fit;
        }
    }
    srbb::io::write_file(out, csv);
    const double slope =
        n_fit > 1 ? (n_fit * sxy - sx * sy) / (n_fit * sxx - sx * sx) : 0.0;
    std::cout << "log u vs r^2 slope = " << format_double(slope) << " (" << n_fit
              << " usable radii)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string(kVersion) +
                 " - self-repellent bridge weights, laces, cycle ensembles"};
    app.require_subcommand(1);
    // flat key = value files, one [subcommand] section each; flags override
    app.set_config("--config", "", "configuration file with [subcommand] sections");

    // estimate-gamma
    ModelOpts m_gamma;
    int eg_kmax = 20;
    std::uint64_t eg_samples = 10000;
    std::string eg_out = "gamma_table.txt";
    auto* eg = app.add_subcommand("estimate-gamma", "Monte Carlo table of bridge weights");
    add_model_opts(eg, m_gamma);
    eg->add_option("--kmax", eg_kmax, "largest leg count");
    eg->add_option("--samples", eg_samples, "samples per k");
    eg->add_option("--out", eg_out, "output table (resumable cache)");

    // estimate-rhoc
    ModelOpts m_rhoc;
    std::string rc_table, rc_lambda = "lower", rc_out = "rhoc.csv";
    bool rc_free = false;
    int rc_K = 200;
    auto* rc = app.add_subcommand("estimate-rhoc", "critical-density partial sums");
    add_model_opts(rc, m_rhoc, false);
    rc->add_option("--table", rc_table, "gamma table file");
    rc->add_flag("--free-gas", rc_free, "use the closed-form free-gas table");
    rc->add_option("--lambda", rc_lambda, "numeric value or lower|point|upper");
    rc->add_option("-K,--terms", rc_K, "partial-sum length");
    rc->add_option("--out", rc_out, "output CSV");

    // phase-diagram
    ModelOpts m_phase;
    std::string pd_table, pd_lambda = "lower", pd_out = "phase.csv";
    bool pd_free = false;
    int pd_kmax = 400, pd_steps = 50;
    double pd_rho_min = 1e-4, pd_rho_max = 0.05;
    auto* pd = app.add_subcommand("phase-diagram", "rho sweep of c, f, mass, regime");
    add_model_opts(pd, m_phase, false);
    pd->add_option("--table", pd_table, "gamma table file");
    pd->add_flag("--free-gas", pd_free, "use the closed-form free-gas table");
    pd->add_option("--lambda", pd_lambda, "numeric value or lower|point|upper");
    pd->add_option("--kmax", pd_kmax, "series truncation");
    pd->add_option("--rho-min", pd_rho_min);
    pd->add_option("--rho-max", pd_rho_max);
    pd->add_option("--rho-steps", pd_steps);
    pd->add_option("--out", pd_out, "output CSV");

    // sample-cycles
    ModelOpts m_cycles;
    std::string sc_table, sc_out, sc_stats = "cycles.csv", sc_lambda = "lower";
    bool sc_free = false, sc_compare = false;
    int sc_N = 100, sc_kstats = 20;
    std::uint64_t sc_samples = 1000;
    double sc_rho = 0.0, sc_volume = 0.0;
    auto* sc = app.add_subcommand("sample-cycles", "exact cycle-weight partition sampler");
    add_model_opts(sc, m_cycles);
    sc->add_option("--table", sc_table, "gamma table file for the weights");
    sc->add_flag("--free-gas", sc_free, "closed-form free-gas weights");
    sc->add_option("-N,--particles", sc_N, "number of particles");
    sc->add_option("--samples", sc_samples, "partition draws");
    sc->add_option("--rho", sc_rho, "density (volume = N/rho)");
    sc->add_option("--volume", sc_volume, "override the volume convention");
    sc->add_option("--kstats", sc_kstats, "report statistics for k <= kstats");
    sc->add_flag("--compare-pstar", sc_compare, "add the variational minimizer columns");
    sc->add_option("--lambda", sc_lambda, "lambda for the p* comparison");
    sc->add_option("--out", sc_out, "samples file (sparse k:l_k rows); empty = skip");
    sc->add_option("--stats-out", sc_stats, "statistics CSV");

    // verify
    ModelOpts m_verify;
    m_verify.seed = 1;
    std::string vf_mutate, vf_out, vf_residuals;
    int vf_lace_nmax = 8;
    auto* vf = app.add_subcommand("verify", "exact combinatorial and algebra self-checks");
    add_model_opts(vf, m_verify, false);
    vf->add_option("--lace-nmax", vf_lace_nmax, "largest N for the exhaustive lace sweeps");
    vf->add_option("--mutate", vf_mutate, "fault injection (compat-flip) for harness testing");
    vf->add_option("--out", vf_out, "JSON report path");
    vf->add_option("--residuals-out", vf_residuals, "convolution residual table CSV");

    // deconvolve
    std::string dc_gpi, dc_out = "deconvolved.txt";
    double dc_lambda = 0.5, dc_extent = 12.0, dc_h = 0.01, dc_tol = 1e-8;
    auto* dc = app.add_subcommand("deconvolve", "Neumann-series Green-function deconvolution");
    dc->add_option("--gpi", dc_gpi, "grid-fn file with the Pi Green function");
    dc->add_option("--preset-lambda", dc_lambda, "use lambda * phi as input when no file given");
    dc->add_option("--extent", dc_extent, "grid half-width");
    dc->add_option("--grid-h", dc_h, "grid spacing");
    dc->add_option("--tol", dc_tol, "series tolerance");
    dc->add_option("--out", dc_out, "output grid-fn file");

    // green-asymptotics
    int ga_d = 5, ga_steps = 25;
    double ga_rmin = 5.0, ga_rmax = 20.0, ga_tol = 1e-12;
    std::string ga_out = "green.csv";
    auto* ga = app.add_subcommand("green-asymptotics", "G(r) against a_d r^(2-d)");
    ga->add_option("-d,--dim", ga_d);
    ga->add_option("--r-min", ga_rmin);
    ga->add_option("--r-max", ga_rmax);
    ga->add_option("--steps", ga_steps);
    ga->add_option("--tol", ga_tol);
    ga->add_option("--out", ga_out, "output CSV");

    // un-decay
    ModelOpts m_un;
    m_un.alpha = 1.0;
    std::uint64_t un_samples = 200000;
    double un_rmax = 2.0;
    int un_steps = 6;
    std::string un_out = "un_decay.csv";
    auto* un = app.add_subcommand("un-decay", "u_2 anchor-separation decay scan");
    add_model_opts(un, m_un);
    un->add_option("--samples", un_samples, "samples per radius");
    un->add_option("--r-max", un_rmax, "largest anchor separation");
    un->add_option("--steps", un_steps, "number of radii");
    un->add_option("--out", un_out, "output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are configuration errors
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc_code = 0;
    try {
        if (eg->parsed()) rc_code = cmd_estimate_gamma(m_gamma, eg_kmax, eg_samples, eg_out);
        else if (rc->parsed())
            rc_code = cmd_estimate_rhoc(m_rhoc, rc_table, rc_free, rc_lambda, rc_K, rc_out);
        else if (pd->parsed())
            rc_code = cmd_phase_diagram(m_phase, pd_table, pd_free, pd_kmax, pd_lambda, pd_rho_min,
                                        pd_rho_max, pd_steps, pd_out);
        else if (sc->parsed())
            rc_code = cmd_sample_cycles(m_cycles, sc_table, sc_free, sc_N, sc_samples, sc_rho,
                                        sc_volume, sc_kstats, sc_compare, sc_lambda, sc_out,
                                        sc_stats);
        else if (vf->parsed()) rc_code = cmd_verify(m_verify, vf_mutate, vf_out, vf_residuals, vf_lace_nmax);
        else if (dc->parsed())
            rc_code = cmd_deconvolve(dc_gpi, dc_lambda, dc_extent, dc_h, dc_tol, dc_out);
        else if (ga->parsed())
            rc_code = cmd_green_asymptotics(ga_d, ga_rmin, ga_rmax, ga_steps, ga_tol, ga_out);
        else if (un->parsed()) rc_code = cmd_un_decay(m_un, un_samples, un_rmax, un_steps, un_out);
    } catch (const srbb::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const srbb::resource_limit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const srbb::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const srbb::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }

    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stdout, "wall_time_s=%.3f\n", dt);
    return rc_code;
}
