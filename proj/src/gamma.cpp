#include "srbb/gamma.hpp"

#include "srbb/errors.hpp"
#include "srbb/heat_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace srbb::gamma {

const GammaEstimate& GammaTable::at(int k) const
{
    if (k < 1 || k > k_max()) throw invalid_argument("GammaTable: k out of range");
    return entries[static_cast<std::size_t>(k - 1)];
}

namespace {

double norm_sq(const std::vector<double>& x)
{
    double s = 0.0;
    for (double c : x) s += c * c;
    return s;
}

MeanAccumulator reduce_chunks(const GammaParams& p, std::uint64_t n_samples,
                              const std::function<void(ChunkRng&, std::uint64_t, MeanAccumulator&)>& body)
{
    const std::size_t n_chunks = chunk_count(n_samples, p.rng.chunk_size);
    std::vector<MeanAccumulator> acc(n_chunks);
    parallel_chunks(n_chunks, p.workers, [&](std::size_t c) {
        ChunkRng rng(p.rng, c);
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * p.rng.chunk_size;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + p.rng.chunk_size, n_samples);
        body(rng, hi - lo, acc[c]);
    });
    MeanAccumulator total;
    for (const auto& a : acc) total.combine(a); // fixed chunk order
    return total;
}

} // namespace

GammaEstimate estimate_gamma_point(const GammaParams& p, int N, const std::vector<double>& x,
                                   std::uint64_t n_samples)
{
    if (N < 1) throw invalid_argument("estimate_gamma_point: N must be >= 1");
    if (n_samples < 1) throw invalid_argument("estimate_gamma_point: need n_samples >= 1");
    if (static_cast<int>(x.size()) != p.d)
        throw invalid_argument("estimate_gamma_point: endpoint dimension mismatch");

    const std::vector<double> origin(static_cast<std::size_t>(p.d), 0.0);
    const double phi = heat_kernel(p.d, p.beta * N, norm_sq(x));

    MeanAccumulator total = reduce_chunks(p, n_samples, [&](ChunkRng& rng, std::uint64_t n, MeanAccumulator& acc) {
        for (std::uint64_t s = 0; s < n; ++s) {
            paths::PathConfig B = paths::sample_bridge_legs(origin, x, N, p.beta, p.M, rng);
            const double H = paths::hamiltonian(B, p.potential);
            acc.add(std::exp(-p.alpha * H));
        }
    });

    return {phi * total.mean(), phi * total.std_error(), total.n, N};
}

GammaEstimate estimate_gamma_dirichlet(const GammaParams& p, int k, double box_side,
                                       std::uint64_t n_samples)
{
    if (k < 1) throw invalid_argument("estimate_gamma_dirichlet: k must be >= 1");
    if (box_side <= 0.0) throw invalid_argument("estimate_gamma_dirichlet: box side must be > 0");
    if (n_samples < 1) throw invalid_argument("estimate_gamma_dirichlet: need n_samples >= 1");

    const double half = 0.5 * box_side;
    const double phi = heat_kernel(p.d, p.beta * k, 0.0);

    MeanAccumulator total = reduce_chunks(p, n_samples, [&](ChunkRng& rng, std::uint64_t n, MeanAccumulator& acc) {
        std::vector<double> start(static_cast<std::size_t>(p.d));
        for (std::uint64_t s = 0; s < n; ++s) {
            for (double& c : start) c = (rng.uniform() - 0.5) * box_side;
            paths::PathConfig B = paths::sample_bridge_legs(start, start, k, p.beta, p.M, rng);
            bool inside = true;
            for (const auto& leg : B.legs) {
                for (double c : leg.pts) {
                    if (std::abs(c) > half) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) break;
            }
            if (!inside) {
                acc.add(0.0);
                continue;
            }
            const double H = paths::hamiltonian(B, p.potential);
            acc.add(std::exp(-p.alpha * H));
        }
    });

    return {phi * total.mean(), phi * total.std_error(), total.n, k};
}

GammaTable build_table(const GammaParams& p, int K_max, std::uint64_t n_samples)
{
    if (K_max < 1) throw invalid_argument("build_table: K_max must be >= 1");
    GammaTable table;
    table.params = p;
    table.n_samples_per_k = n_samples;
    table.entries.reserve(static_cast<std::size_t>(K_max));
    const std::vector<double> origin(static_cast<std::size_t>(p.d), 0.0);
    for (int k = 1; k <= K_max; ++k) {
        GammaParams pk = p;
        pk.rng.stream = static_cast<std::uint64_t>(k);
        table.entries.push_back(estimate_gamma_point(pk, k, origin, n_samples));
    }
    return table;
}

GammaTable extend_table(const GammaTable& table, int K_max)
{
    if (K_max <= table.k_max()) return table;
    GammaTable out = table;
    const std::vector<double> origin(static_cast<std::size_t>(table.params.d), 0.0);
    for (int k = table.k_max() + 1; k <= K_max; ++k) {
        GammaParams pk = table.params;
        pk.rng.stream = static_cast<std::uint64_t>(k);
        out.entries.push_back(estimate_gamma_point(pk, k, origin, table.n_samples_per_k));
    }
    return out;
}

GammaTable free_gas_table(int d, double beta, int K_max)
{
    if (K_max < 1 || d < 1 || beta <= 0.0) throw invalid_argument("free_gas_table: bad parameters");
    GammaTable table;
    table.params.alpha = 0.0;
    table.params.beta = beta;
    table.params.d = d;
    table.entries.reserve(static_cast<std::size_t>(K_max));
    for (int k = 1; k <= K_max; ++k)
        table.entries.push_back({heat_kernel(d, beta * k, 0.0), 0.0, 0, k});
    return table;
}

namespace {

void require_positive(const GammaTable& table, int k_hi)
{
    for (int k = 1; k <= k_hi; ++k)
        if (table.at(k).value <= 0.0)
            throw degenerate_input("gamma table has a non-positive entry at k=" + std::to_string(k));
}

// 3-parameter fit  y = a + b*(log k)/k + c/k  by normal equations; returns a.
double extrapolate_log_lambda(const GammaTable& table, int k_lo, int k_hi)
{
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> v{};
    for (int k = k_lo; k <= k_hi; ++k) {
        const double kk = static_cast<double>(k);
        const std::array<double, 3> row = {1.0, std::log(kk) / kk, 1.0 / kk};
        const double y = -std::log(table.at(k).value) / kk;
        for (int a = 0; a < 3; ++a) {
            v[a] += row[a] * y;
            for (int b = 0; b < 3; ++b) m[a][b] += row[a] * row[b];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    std::array<std::array<double, 4>, 3> aug{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) aug[r][c] = m[r][c];
        aug[r][3] = v[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        std::swap(aug[col], aug[piv]);
        if (aug[col][col] == 0.0) throw numeric_error("lambda extrapolation: singular fit");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (int c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    return aug[0][3] / aug[0][0];
}

} // namespace

LambdaBracket estimate_lambda_c(const GammaTable& table)
{
    const int K = table.k_max();
    return estimate_lambda_c(table, std::max(2, K / 5), K);
}

LambdaBracket estimate_lambda_c(const GammaTable& table, int fit_k_lo, int fit_k_hi)
{
    const int K = table.k_max();
    if (K < 3) throw invalid_argument("estimate_lambda_c: need K_max >= 3");
    if (fit_k_lo < 1 || fit_k_hi > K || fit_k_hi - fit_k_lo < 2)
        throw invalid_argument("estimate_lambda_c: bad fit window");
    require_positive(table, K);

    const double d_half = 0.5 * table.params.d;
    // lambda_c^k Gamma_k >= (2 pi beta k)^(-d/2), so each k yields a lower bound.
    double lower = 1.0; // lambda_c >= 1 always (H >= 0)
    for (int k = 1; k <= K; ++k) {
        const double a_k = std::pow(6.283185307179586 * table.params.beta * k, d_half) * table.at(k).value;
        lower = std::max(lower, std::pow(a_k, -1.0 / k));
    }

    const double upper = std::exp(table.params.alpha * table.params.potential.strength);
    double point = std::exp(extrapolate_log_lambda(table, fit_k_lo, fit_k_hi));
    point = std::clamp(point, lower, std::max(lower, upper));

    LambdaBracket out;
    out.lower = lower;
    out.upper = std::max(upper, lower);
    out.point_estimate = point;
    for (int k = fit_k_lo; k <= fit_k_hi; ++k) out.k_used.push_back(k);
    return out;
}

RhoCSums estimate_rho_c(const GammaTable& table, double lambda, int K)
{
    if (lambda <= 0.0) throw invalid_argument("estimate_rho_c: lambda must be > 0");
    if (K < 1 || K > table.k_max()) throw invalid_argument("estimate_rho_c: K out of range");

    RhoCSums out;
    out.partial.reserve(static_cast<std::size_t>(K));
    out.increment.reserve(static_cast<std::size_t>(K));
    out.std_error.reserve(static_cast<std::size_t>(K));
    double sum = 0.0, var = 0.0, w = 1.0;
    for (int k = 1; k <= K; ++k) {
        w *= lambda;
        const double inc = w * table.at(k).value;
        const double err = w * table.at(k).std_error;
        sum += inc;
        var += err * err;
        out.increment.push_back(inc);
        out.partial.push_back(sum);
        out.std_error.push_back(std::sqrt(var));
    }
    return out;
}

ExponentFit fit_scaling_exponent(const GammaTable& table, double lambda, int k_lo, int k_hi)
{
    if (table.k_max() < 10) throw invalid_argument("fit_scaling_exponent: need K_max >= 10");
    if (k_lo < 1 || k_hi > table.k_max() || k_hi - k_lo < 2)
        throw invalid_argument("fit_scaling_exponent: bad window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int n = k_hi - k_lo + 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double g = std::pow(lambda, k) * table.at(k).value;
        if (!(g > 0.0))
            throw degenerate_input("fit_scaling_exponent: non-positive lambda^k Gamma_k in window");
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(g);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw numeric_error("fit_scaling_exponent: degenerate abscissa");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(std::pow(lambda, k) * table.at(k).value);
        const double r = y - (intercept + slope * x);
        ss_res += r * r;
    }
    const double slope_var = n > 2 ? ss_res / (n - 2) * n / denom : 0.0;
    return {slope, std::sqrt(std::max(0.0, slope_var)), intercept, k_lo, k_hi};
}

} // namespace srbb::gamma
