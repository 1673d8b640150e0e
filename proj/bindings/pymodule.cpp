// Python bindings for the main operations: bridge-weight estimation, lace
// combinatorics, the variational thermodynamics, the partition sampler and
// the Green-function tools.

#include "srbb/errors.hpp"
#include "srbb/gamma.hpp"
#include "srbb/greenlab.hpp"
#include "srbb/heat_kernel.hpp"
#include "srbb/io.hpp"
#include "srbb/laces.hpp"
#include "srbb/permsample.hpp"
#include "srbb/pi.hpp"
#include "srbb/thermo.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace srbb;

namespace {

paths::PairPotential make_potential(const std::string& kind, double eta, double range)
{
    if (kind == "step-ball") return paths::PairPotential::step_ball(eta, range);
    if (kind == "smooth-bump") return paths::PairPotential::smooth_bump(eta, range);
    throw invalid_argument("potential must be step-ball or smooth-bump");
}

gamma::GammaParams make_gamma_params(double alpha, double beta, int d, int M,
                                     const std::string& potential, double eta, double range,
                                     std::uint64_t seed, std::uint64_t stream,
                                     std::uint32_t chunk_size, int workers)
{
    gamma::GammaParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.d = d;
    p.M = M;
    p.potential = make_potential(potential, eta, range);
    p.rng = {seed, stream, chunk_size};
    p.workers = workers;
    return p;
}

} // namespace

PYBIND11_MODULE(srbb, m)
{
    m.doc() = "Self-repellent Brownian bridge weights, lace expansion combinatorics, "
              "cycle-weighted partition ensembles and Green-function deconvolution.";

    py::register_exception<resource_limit>(m, "ResourceLimit", PyExc_RuntimeError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    // ------------------------------------------------------------- gamma
    py::class_<gamma::GammaEstimate>(m, "GammaEstimate")
        .def_readonly("value", &gamma::GammaEstimate::value)
        .def_readonly("std_error", &gamma::GammaEstimate::std_error)
        .def_readonly("n_samples", &gamma::GammaEstimate::n_samples)
        .def_readonly("k", &gamma::GammaEstimate::k)
        .def("__repr__", [](const gamma::GammaEstimate& e) {
            return "GammaEstimate(k=" + std::to_string(e.k) + ", value=" +
                   io::format_double(e.value) + ", std_error=" + io::format_double(e.std_error) +
                   ")";
        });

    py::class_<gamma::GammaTable>(m, "GammaTable")
        .def_property_readonly("k_max", &gamma::GammaTable::k_max)
        .def("at", &gamma::GammaTable::at, py::return_value_policy::copy)
        .def("values",
             [](const gamma::GammaTable& t) {
                 std::vector<double> v;
                 for (const auto& e : t.entries) v.push_back(e.value);
                 return v;
             })
        .def("serialize", [](const gamma::GammaTable& t) { return io::serialize_gamma_table(t); });

    py::class_<gamma::LambdaBracket>(m, "LambdaBracket")
        .def_readonly("lower", &gamma::LambdaBracket::lower)
        .def_readonly("upper", &gamma::LambdaBracket::upper)
        .def_readonly("point_estimate", &gamma::LambdaBracket::point_estimate);

    m.def(
        "estimate_gamma_point",
        [](double alpha, int N, const std::vector<double>& x, std::uint64_t n_samples, int M,
           double beta, const std::string& potential, double eta, double range,
           std::uint64_t seed, std::uint64_t stream, std::uint32_t chunk_size, int workers) {
            const auto p = make_gamma_params(alpha, beta, static_cast<int>(x.size()), M, potential,
                                             eta, range, seed, stream, chunk_size, workers);
            return gamma::estimate_gamma_point(p, N, x, n_samples);
        },
        py::arg("alpha"), py::arg("N"), py::arg("x"), py::arg("n_samples"), py::arg("M") = 32,
        py::arg("beta") = 1.0, py::arg("potential") = "step-ball", py::arg("eta") = 1.0,
        py::arg("range") = 1.0, py::arg("seed") = 0, py::arg("stream") = 0,
        py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    m.def(
        "estimate_gamma_dirichlet",
        [](double alpha, int k, double box_side, int d, std::uint64_t n_samples, int M,
           double beta, const std::string& potential, double eta, double range,
           std::uint64_t seed, std::uint32_t chunk_size, int workers) {
            const auto p = make_gamma_params(alpha, beta, d, M, potential, eta, range, seed, 0,
                                             chunk_size, workers);
            return gamma::estimate_gamma_dirichlet(p, k, box_side, n_samples);
        },
        py::arg("alpha"), py::arg("k"), py::arg("box_side"), py::arg("d"), py::arg("n_samples"),
        py::arg("M") = 32, py::arg("beta") = 1.0, py::arg("potential") = "step-ball",
        py::arg("eta") = 1.0, py::arg("range") = 1.0, py::arg("seed") = 0,
        py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    m.def(
        "build_gamma_table",
        [](double alpha, int d, int K_max, std::uint64_t n_samples, int M, double beta,
           const std::string& potential, double eta, double range, std::uint64_t seed,
           std::uint32_t chunk_size, int workers) {
            const auto p = make_gamma_params(alpha, beta, d, M, potential, eta, range, seed, 0,
                                             chunk_size, workers);
            return gamma::build_table(p, K_max, n_samples);
        },
        py::arg("alpha"), py::arg("d"), py::arg("K_max"), py::arg("n_samples"), py::arg("M") = 32,
        py::arg("beta") = 1.0, py::arg("potential") = "step-ball", py::arg("eta") = 1.0,
        py::arg("range") = 1.0, py::arg("seed") = 0, py::arg("chunk_size") = 4096,
        py::arg("workers") = 1);

    m.def("free_gas_table", &gamma::free_gas_table, py::arg("d"), py::arg("beta"),
          py::arg("K_max"));
    m.def("estimate_lambda_c",
          py::overload_cast<const gamma::GammaTable&>(&gamma::estimate_lambda_c),
          py::arg("table"));
    m.def(
        "estimate_rho_c",
        [](const gamma::GammaTable& t, double lambda, int K) {
            const auto s = gamma::estimate_rho_c(t, lambda, K);
            return py::make_tuple(s.partial, s.increment, s.std_error);
        },
        py::arg("table"), py::arg("lambda_"), py::arg("K"));
    m.def(
        "fit_scaling_exponent",
        [](const gamma::GammaTable& t, double lambda, int k_lo, int k_hi) {
            const auto f = gamma::fit_scaling_exponent(t, lambda, k_lo, k_hi);
            return py::make_tuple(f.slope, f.slope_std_error);
        },
        py::arg("table"), py::arg("lambda_"), py::arg("k_lo"), py::arg("k_hi"));
    m.def("parse_gamma_table", [](const std::string& text) { return io::parse_gamma_table(text); });

    // -------------------------------------------------------------- laces
    m.def("lace_breakpoints", [](int N, const std::vector<std::pair<int, int>>& edges) {
        return laces::breakpoints(laces::graph_from_edges(N, edges));
    });
    m.def("is_irreducible", [](int N, const std::vector<std::pair<int, int>>& edges) {
        return laces::is_irreducible(laces::graph_from_edges(N, edges));
    });
    m.def("lace_of", [](int N, const std::vector<std::pair<int, int>>& edges) {
        return laces::lace_of(laces::graph_from_edges(N, edges)).edges;
    });
    m.def("compatible_set", [](int N, const std::vector<std::pair<int, int>>& edges) {
        return laces::compatible_set(laces::Lace{N, edges});
    });
    m.def("lace_type", [](int N, const std::vector<std::pair<int, int>>& edges) {
        return laces::classify_type(laces::Lace{N, edges}).composition;
    });
    m.def("enumerate_laces", [](int N) {
        std::vector<std::vector<std::pair<int, int>>> out;
        for (const auto& l : laces::enumerate_laces(N)) out.push_back(l.edges);
        return out;
    });
    m.def("count_irreducible",
          [](int N) { return laces::enumerate_irreducible(N).size(); });
    m.def(
        "lace_identity_check",
        [](int N, const std::vector<double>& u) {
            const auto r = laces::lace_identity_check(N, u);
            return py::make_tuple(r.lhs, r.rhs, r.discrepancy);
        },
        py::arg("N"), py::arg("u"));

    // ----------------------------------------------------------------- pi
    m.def(
        "estimate_pi_integrated",
        [](double alpha, int N, int d, std::uint64_t n_samples, int M,
           const std::string& potential, double eta, double range, std::uint64_t seed,
           std::uint32_t chunk_size, int workers) {
            pi::PiParams p;
            p.alpha = alpha;
            p.d = d;
            p.M = M;
            p.potential = make_potential(potential, eta, range);
            p.rng = {seed, 0, chunk_size};
            p.workers = workers;
            const auto e = pi::estimate_pi_integrated(p, N, n_samples);
            return py::make_tuple(e.value, e.std_error, e.by_lace_size);
        },
        py::arg("alpha"), py::arg("N"), py::arg("d"), py::arg("n_samples"), py::arg("M") = 32,
        py::arg("potential") = "step-ball", py::arg("eta") = 1.0, py::arg("range") = 1.0,
        py::arg("seed") = 0, py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    m.def(
        "convolution_identity_check",
        [](double alpha, int N_max, int d, std::uint64_t n_samples, int M,
           const std::string& potential, double eta, double range, std::uint64_t seed,
           std::uint32_t chunk_size, int workers) {
            pi::PiParams p;
            p.alpha = alpha;
            p.d = d;
            p.M = M;
            p.potential = make_potential(potential, eta, range);
            p.rng = {seed, 0, chunk_size};
            p.workers = workers;
            std::vector<py::dict> rows;
            for (const auto& r : pi::convolution_identity_check(p, N_max, n_samples)) {
                py::dict row;
                row["N"] = r.N;
                row["z"] = r.z;
                row["z_err"] = r.z_err;
                row["p"] = r.p;
                row["p_err"] = r.p_err;
                row["r"] = r.r;
                row["r_err"] = r.r_err;
                rows.push_back(row);
            }
            return rows;
        },
        py::arg("alpha"), py::arg("N_max"), py::arg("d"), py::arg("n_samples"), py::arg("M") = 32,
        py::arg("potential") = "step-ball", py::arg("eta") = 1.0, py::arg("range") = 1.0,
        py::arg("seed") = 0, py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    m.def(
        "estimate_u_n",
        [](double alpha, const std::vector<std::vector<double>>& anchors,
           std::uint64_t n_samples, int M, const std::string& potential, double eta, double range,
           std::uint64_t seed, std::uint32_t chunk_size, int workers) {
            if (anchors.empty()) throw invalid_argument("anchors must be nonempty");
            pi::PiParams p;
            p.alpha = alpha;
            p.d = static_cast<int>(anchors.front().size());
            p.M = M;
            p.potential = make_potential(potential, eta, range);
            p.rng = {seed, 0, chunk_size};
            p.workers = workers;
            const auto e = pi::estimate_u_n(p, anchors, n_samples);
            return py::make_tuple(e.value, e.std_error);
        },
        py::arg("alpha"), py::arg("anchors"), py::arg("n_samples"), py::arg("M") = 32,
        py::arg("potential") = "step-ball", py::arg("eta") = 1.0, py::arg("range") = 1.0,
        py::arg("seed") = 0, py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    // -------------------------------------------------------------- thermo
    m.def(
        "solve_c",
        [](double rho, double lambda, const gamma::GammaTable& t, int K_max, double tol) {
            const auto r = thermo::solve_c(rho, lambda, t, K_max, tol);
            return py::make_tuple(r.c, r.condensate, r.residual);
        },
        py::arg("rho"), py::arg("lambda_"), py::arg("table"), py::arg("K_max"),
        py::arg("tol") = 1e-12);
    m.def(
        "minimizer_p_star",
        [](double rho, double lambda, const gamma::GammaTable& t, int K_max) {
            return thermo::minimizer_p_star(rho, lambda, t, K_max).p;
        },
        py::arg("rho"), py::arg("lambda_"), py::arg("table"), py::arg("K_max"));
    m.def(
        "free_energy",
        [](double rho, double lambda, const gamma::GammaTable& t, int K_max) {
            const auto r = thermo::free_energy(rho, lambda, t, K_max);
            return py::make_tuple(r.closed_form, r.variational, r.gap, r.c, r.condensate);
        },
        py::arg("rho"), py::arg("lambda_"), py::arg("table"), py::arg("K_max"));
    m.def("truncated_rho_c", &thermo::truncated_rho_c, py::arg("table"), py::arg("lambda_"),
          py::arg("K_max"));

    // ---------------------------------------------------------- permsample
    m.def(
        "z_recursion",
        [](const std::vector<double>& theta, int N) {
            const auto z = permsample::z_recursion(permsample::WeightVector{theta}, N);
            return py::make_tuple(z.z, z.log_z, z.overflowed);
        },
        py::arg("theta"), py::arg("N"));
    m.def(
        "sample_partitions",
        [](const std::vector<double>& theta, int N, std::uint64_t n_samples, std::uint64_t seed,
           std::uint32_t chunk_size, int workers) {
            std::vector<std::vector<std::uint32_t>> out;
            for (const auto& s : permsample::sample_partitions(
                     permsample::WeightVector{theta}, N, n_samples, {seed, 0, chunk_size},
                     workers))
                out.push_back(s.counts);
            return out;
        },
        py::arg("theta"), py::arg("N"), py::arg("n_samples"), py::arg("seed") = 0,
        py::arg("chunk_size") = 4096, py::arg("workers") = 1);

    // ------------------------------------------------------------ greenlab
    m.def("green_G", &greenlab::green_G, py::arg("r"), py::arg("d"), py::arg("tol") = 1e-10);
    m.def("green_asymptotic_constant", &greenlab::green_asymptotic_constant, py::arg("d"));
    m.def("g_mu", &greenlab::g_mu_point, py::arg("r"), py::arg("mu"), py::arg("d"),
          py::arg("tol") = 1e-10);
    m.def(
        "neumann_deconvolve_1d",
        [](const std::vector<double>& g_pi_values, double extent, double h, double tol) {
            const greenlab::GridSpec spec{1, extent, h};
            greenlab::GridFn g_pi{spec, g_pi_values};
            if (g_pi.values.size() != spec.total_points())
                throw invalid_argument("value count does not match the grid");
            const auto r = greenlab::neumann_deconvolve(
                g_pi, greenlab::heat_kernel_grid(spec, 1.0), tol);
            return py::make_tuple(r.S.values, r.mu, r.residual_l1, r.terms);
        },
        py::arg("g_pi_values"), py::arg("extent"), py::arg("h"), py::arg("tol") = 1e-8);
    m.def("heat_kernel_grid_1d", [](double extent, double h, double t) {
        return greenlab::heat_kernel_grid(greenlab::GridSpec{1, extent, h}, t).values;
    });
    m.def("heat_kernel", &heat_kernel, py::arg("d"), py::arg("t"), py::arg("r_sq"));
}
