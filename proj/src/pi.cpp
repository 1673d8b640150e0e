#include "srbb/pi.hpp"

#include "srbb/errors.hpp"
#include "srbb/heat_kernel.hpp"
#include "srbb/laces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

namespace srbb::pi {

namespace {

struct IrreducibleSum {
    // Edge masks of all irreducible graphs on {1..N} plus the edge count of
    // each graph's canonical lace (for the per-lace-size breakdown).
    std::vector<std::uint32_t> masks;
    std::vector<std::uint8_t> lace_size;
    int max_lace_size = 0;
};

IrreducibleSum build_irreducible(int N)
{
    if (N > kPiCap)
        throw resource_limit("pi: N=" + std::to_string(N) + " exceeds the materialized cap " +
                             std::to_string(kPiCap));
    IrreducibleSum out;
    laces::for_each_irreducible(N, [&](const laces::Graph& g) {
        out.masks.push_back(g.edges);
        const auto n = static_cast<std::uint8_t>(laces::lace_of(g).edges.size());
        out.lace_size.push_back(n);
        out.max_lace_size = std::max<int>(out.max_lace_size, n);
    });
    return out;
}

// sum over irreducible graphs of prod(-u_e), accumulated per lace size.
void irreducible_sum(const IrreducibleSum& irr, const std::vector<double>& u, double* by_size)
{
    for (std::size_t g = 0; g < irr.masks.size(); ++g) {
        double prod = 1.0;
        std::uint32_t m = irr.masks[g];
        while (m != 0) {
            prod *= -u[static_cast<std::size_t>(std::countr_zero(m))];
            m &= m - 1;
        }
        by_size[irr.lace_size[g] - 1] += prod;
    }
}

struct ChunkPlan {
    std::size_t n_chunks;
    std::uint64_t chunk_size;
    std::uint64_t n_samples;

    std::uint64_t samples_in(std::size_t c) const
    {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
        return std::min<std::uint64_t>(chunk_size, n_samples - lo);
    }
};

ChunkPlan plan(const PiParams& p, std::uint64_t n_samples)
{
    if (n_samples < 1) throw invalid_argument("pi: need n_samples >= 1");
    return {chunk_count(n_samples, p.rng.chunk_size), p.rng.chunk_size, n_samples};
}

} // namespace

PiEstimate estimate_pi_integrated(const PiParams& p, int N, std::uint64_t n_samples)
{
    if (N < 1) throw invalid_argument("estimate_pi_integrated: N must be >= 1");
    if (N == 1) return {1.0, 0.0, 0, 1, {1.0}};

    const IrreducibleSum irr = build_irreducible(N);
    const ChunkPlan cp = plan(p, n_samples);
    const std::vector<double> origin(static_cast<std::size_t>(p.d), 0.0);
    const std::size_t n_sizes = static_cast<std::size_t>(irr.max_lace_size);

    std::vector<MeanAccumulator> acc(cp.n_chunks);
    std::vector<std::vector<double>> size_sums(cp.n_chunks, std::vector<double>(n_sizes, 0.0));
    parallel_chunks(cp.n_chunks, p.workers, [&](std::size_t c) {
        ChunkRng rng(p.rng, c);
        std::vector<double> by_size(n_sizes);
        for (std::uint64_t s = 0, n = cp.samples_in(c); s < n; ++s) {
            paths::PathConfig B = paths::sample_free_path(origin, N, p.M, rng);
            const std::vector<double> u = paths::pairwise_u(B, N, p.alpha, p.potential);
            std::fill(by_size.begin(), by_size.end(), 0.0);
            irreducible_sum(irr, u, by_size.data());
            double total = 0.0;
            for (std::size_t i = 0; i < n_sizes; ++i) {
                total += by_size[i];
                size_sums[c][i] += by_size[i];
            }
            acc[c].add(total);
        }
    });

    MeanAccumulator total;
    std::vector<double> by_size(n_sizes, 0.0);
    for (std::size_t c = 0; c < cp.n_chunks; ++c) {
        total.combine(acc[c]);
        for (std::size_t i = 0; i < n_sizes; ++i) by_size[i] += size_sums[c][i];
    }
    for (double& v : by_size) v /= static_cast<double>(total.n);
    return {total.mean(), total.std_error(), total.n, N, std::move(by_size)};
}

ZEstimate estimate_z_free(const PiParams& p, int N, std::uint64_t n_samples)
{
    if (N < 0) throw invalid_argument("estimate_z_free: N must be >= 0");
    if (N <= 1) return {1.0, 0.0, 0, N}; // Z_0 = 1 by convention, Z_1 has no interaction

    const ChunkPlan cp = plan(p, n_samples);
    const std::vector<double> origin(static_cast<std::size_t>(p.d), 0.0);
    std::vector<MeanAccumulator> acc(cp.n_chunks);
    parallel_chunks(cp.n_chunks, p.workers, [&](std::size_t c) {
        ChunkRng rng(p.rng, c);
        for (std::uint64_t s = 0, n = cp.samples_in(c); s < n; ++s) {
            paths::PathConfig B = paths::sample_free_path(origin, N, p.M, rng);
            acc[c].add(std::exp(-p.alpha * paths::hamiltonian(B, p.potential)));
        }
    });
    MeanAccumulator total;
    for (const auto& a : acc) total.combine(a);
    return {total.mean(), total.std_error(), total.n, N};
}

std::vector<ResidualRow> convolution_identity_check(const PiParams& p, int N_max,
                                                    std::uint64_t n_samples)
{
    if (N_max < 1) throw invalid_argument("convolution_identity_check: N_max must be >= 1");

    std::vector<IrreducibleSum> irr(static_cast<std::size_t>(N_max) + 1);
    for (int N = 2; N <= N_max; ++N) irr[static_cast<std::size_t>(N)] = build_irreducible(N);

    const ChunkPlan cp = plan(p, n_samples);
    const std::vector<double> origin(static_cast<std::size_t>(p.d), 0.0);
    const std::size_t rows = static_cast<std::size_t>(N_max) + 1;

    // Per-chunk sums of z_N = prod_{i<j<=N}(1 - u_ij) and p_N (irreducible
    // sums) over path prefixes; the shared u values give the common-random-
    // numbers cancellation for small N.
    std::vector<std::vector<double>> zsum(cp.n_chunks, std::vector<double>(rows, 0.0));
    std::vector<std::vector<double>> psum(cp.n_chunks, std::vector<double>(rows, 0.0));
    std::vector<std::uint64_t> count(cp.n_chunks, 0);

    parallel_chunks(cp.n_chunks, p.workers, [&](std::size_t c) {
        ChunkRng rng(p.rng, c);
        std::vector<double> by_size(8);
        std::vector<std::vector<double>> up(static_cast<std::size_t>(N_max) + 1);
        for (int N = 2; N <= N_max; ++N)
            up[static_cast<std::size_t>(N)].resize(static_cast<std::size_t>(laces::edge_slots(N)));
        for (std::uint64_t s = 0, n = cp.samples_in(c); s < n; ++s) {
            paths::PathConfig B = paths::sample_free_path(origin, N_max, p.M, rng);
            const std::vector<double> u = paths::pairwise_u(B, N_max, p.alpha, p.potential);
            ++count[c];
            zsum[c][1] += 1.0;
            psum[c][1] += 1.0;
            for (int N = 2; N <= N_max; ++N) {
                // prefix edge table remapped from the N_max numbering
                auto& uN = up[static_cast<std::size_t>(N)];
                double z = 1.0;
                for (int i = 1; i <= N; ++i)
                    for (int j = i + 1; j <= N; ++j) {
                        const double uij =
                            u[static_cast<std::size_t>(laces::edge_index(N_max, i, j))];
                        uN[static_cast<std::size_t>(laces::edge_index(N, i, j))] = uij;
                        z *= 1.0 - uij;
                    }
                zsum[c][static_cast<std::size_t>(N)] += z;

                std::fill(by_size.begin(), by_size.end(), 0.0);
                irreducible_sum(irr[static_cast<std::size_t>(N)], uN, by_size.data());
                double tot = 0.0;
                for (double v : by_size) tot += v;
                psum[c][static_cast<std::size_t>(N)] += tot;
            }
        }
    });

    // Global means.
    std::vector<double> zbar(rows, 0.0), pbar(rows, 0.0);
    std::uint64_t n_all = 0;
    for (std::size_t c = 0; c < cp.n_chunks; ++c) {
        n_all += count[c];
        for (std::size_t i = 0; i < rows; ++i) {
            zbar[i] += zsum[c][i];
            pbar[i] += psum[c][i];
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        zbar[i] /= static_cast<double>(n_all);
        pbar[i] /= static_cast<double>(n_all);
    }
    zbar[0] = 1.0; // Z_0 = delta_0 mass

    auto residual = [&](const std::vector<double>& z, const std::vector<double>& pp, int N) {
        double conv = 0.0;
        for (int k = 1; k <= N; ++k)
            conv += pp[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(N - k)];
        return z[static_cast<std::size_t>(N)] - conv;
    };

    // Batch-means error bars: residual recomputed from each chunk's means.
    std::vector<ResidualRow> out;
    for (int N = 1; N <= N_max; ++N) {
        ResidualRow row;
        row.N = N;
        row.z = zbar[static_cast<std::size_t>(N)];
        row.p = pbar[static_cast<std::size_t>(N)];
        row.r = residual(zbar, pbar, N);

        MeanAccumulator rz, rp, rr;
        if (cp.n_chunks >= 2) {
            for (std::size_t c = 0; c < cp.n_chunks; ++c) {
                if (count[c] == 0) continue;
                std::vector<double> zc(rows), pc(rows);
                for (std::size_t i = 0; i < rows; ++i) {
                    zc[i] = zsum[c][i] / static_cast<double>(count[c]);
                    pc[i] = psum[c][i] / static_cast<double>(count[c]);
                }
                zc[0] = 1.0;
                rz.add(zc[static_cast<std::size_t>(N)]);
                rp.add(pc[static_cast<std::size_t>(N)]);
                rr.add(residual(zc, pc, N));
            }
            // scale single-batch spread to the mean over batches
            row.z_err = rz.std_error();
            row.p_err = rp.std_error();
            row.r_err = rr.std_error();
        }
        out.push_back(row);
    }
    return out;
}

UnEstimate estimate_u_n(const PiParams& p, const std::vector<std::vector<double>>& anchors,
                        std::uint64_t n_samples)
{
    if (anchors.size() < 4 || anchors.size() % 2 != 0)
        throw invalid_argument("estimate_u_n: need 2n anchor points with n >= 2");
    const int n = static_cast<int>(anchors.size()) / 2;
    for (const auto& a : anchors)
        if (static_cast<int>(a.size()) != p.d)
            throw invalid_argument("estimate_u_n: anchor dimension mismatch");

    double mass = 1.0;
    for (int i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (int c = 0; c < p.d; ++c) {
            const double diff = anchors[static_cast<std::size_t>(2 * i + 1)][static_cast<std::size_t>(c)] -
                                anchors[static_cast<std::size_t>(2 * i)][static_cast<std::size_t>(c)];
            r2 += diff * diff;
        }
        mass *= heat_kernel(p.d, 1.0, r2);
    }

    const ChunkPlan cp = plan(p, n_samples);
    std::vector<MeanAccumulator> acc(cp.n_chunks);
    parallel_chunks(cp.n_chunks, p.workers, [&](std::size_t c) {
        ChunkRng rng(p.rng, c);
        std::vector<paths::Leg> legs(static_cast<std::size_t>(n));
        for (std::uint64_t s = 0, ns = cp.samples_in(c); s < ns; ++s) {
            for (int i = 0; i < n; ++i)
                legs[static_cast<std::size_t>(i)] = paths::sample_bridge_leg(
                    anchors[static_cast<std::size_t>(2 * i)], anchors[static_cast<std::size_t>(2 * i + 1)],
                    1.0, p.M, rng);
            double w = 1.0;
            for (int i = 0; i + 1 < n && w != 0.0; ++i)
                w *= paths::u_factor(legs[static_cast<std::size_t>(i)], legs[static_cast<std::size_t>(i + 1)],
                                     p.alpha, p.potential);
            acc[c].add(w);
        }
    });
    MeanAccumulator total;
    for (const auto& a : acc) total.combine(a);
    return {n, anchors, mass * total.mean(), mass * total.std_error(), total.n};
}

} // namespace srbb::pi
