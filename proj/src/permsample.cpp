#include "srbb/permsample.hpp"

#include "srbb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace srbb::permsample {

void WeightVector::validate(int N) const
{
    if (size() < N) throw invalid_argument("WeightVector: need theta_1..theta_N");
    for (int k = 0; k < N; ++k)
        if (!(theta[static_cast<std::size_t>(k)] > 0.0))
            throw invalid_argument("WeightVector: theta_" + std::to_string(k + 1) +
                                   " must be > 0");
}

std::uint64_t CycleCounts::weighted_sum() const
{
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        s += (k + 1) * static_cast<std::uint64_t>(counts[k]);
    return s;
}

ZTable z_recursion(const WeightVector& theta, int N)
{
    if (N < 0) throw invalid_argument("z_recursion: N must be >= 0");
    theta.validate(N);

    ZTable t;
    t.log_z.assign(static_cast<std::size_t>(N) + 1, 0.0);
    t.z.assign(static_cast<std::size_t>(N) + 1, std::numeric_limits<double>::quiet_NaN());
    t.z[0] = 1.0;

    std::vector<double> log_theta(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) log_theta[static_cast<std::size_t>(k)] = std::log(theta.theta[static_cast<std::size_t>(k)]);

    for (int m = 1; m <= N; ++m) {
        // log-sum-exp over k of log theta_k + log Z_{m-k}
        double peak = -std::numeric_limits<double>::infinity();
        for (int k = 1; k <= m; ++k)
            peak = std::max(peak, log_theta[static_cast<std::size_t>(k - 1)] +
                                      t.log_z[static_cast<std::size_t>(m - k)]);
        double acc = 0.0;
        for (int k = 1; k <= m; ++k)
            acc += std::exp(log_theta[static_cast<std::size_t>(k - 1)] +
                            t.log_z[static_cast<std::size_t>(m - k)] - peak);
        t.log_z[static_cast<std::size_t>(m)] = peak + std::log(acc) - std::log(static_cast<double>(m));

        if (!t.overflowed) {
            // linear recursion while it stays representable
            double lin = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double zz = t.z[static_cast<std::size_t>(m - k)];
                lin += theta.theta[static_cast<std::size_t>(k - 1)] * zz;
            }
            lin /= static_cast<double>(m);
            if (std::isfinite(lin) && lin < 1e290 && (lin > 1e-290 || lin == 0.0)) {
                t.z[static_cast<std::size_t>(m)] = lin;
            } else {
                t.overflowed = true; // log column keeps going
            }
        }
    }
    return t;
}

namespace {

CycleCounts sample_with_log_theta(const std::vector<double>& log_theta, const ZTable& z, int N,
                                  ChunkRng& rng, std::vector<int>* removals = nullptr)
{
    CycleCounts out;
    out.N = N;
    out.counts.assign(static_cast<std::size_t>(N), 0);

    int m = N;
    while (m > 0) {
        const double u = rng.uniform();
        const double base = z.log_z[static_cast<std::size_t>(m)] + std::log(static_cast<double>(m));
        double cum = 0.0;
        int take = m;
        for (int k = 1; k <= m; ++k) {
            cum += std::exp(log_theta[static_cast<std::size_t>(k - 1)] +
                            z.log_z[static_cast<std::size_t>(m - k)] - base);
            if (u < cum) {
                take = k;
                break;
            }
        }
        ++out.counts[static_cast<std::size_t>(take - 1)];
        if (removals) removals->push_back(take);
        m -= take;
    }
    return out;
}

std::vector<double> log_weights(const WeightVector& theta, int N)
{
    std::vector<double> lt(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) lt[static_cast<std::size_t>(k)] = std::log(theta.theta[static_cast<std::size_t>(k)]);
    return lt;
}

} // namespace

CycleCounts sample_partition(const WeightVector& theta, const ZTable& z, int N, ChunkRng& rng)
{
    if (N < 1) throw invalid_argument("sample_partition: N must be >= 1");
    theta.validate(N);
    if (static_cast<int>(z.log_z.size()) < N + 1)
        throw invalid_argument("sample_partition: Z table too short");
    const auto lt = log_weights(theta, N);
    return sample_with_log_theta(lt, z, N, rng);
}

std::vector<int> sample_removal_sequence(const WeightVector& theta, const ZTable& z, int N,
                                         ChunkRng& rng)
{
    if (N < 1) throw invalid_argument("sample_removal_sequence: N must be >= 1");
    theta.validate(N);
    if (static_cast<int>(z.log_z.size()) < N + 1)
        throw invalid_argument("sample_removal_sequence: Z table too short");
    const auto lt = log_weights(theta, N);
    std::vector<int> removals;
    sample_with_log_theta(lt, z, N, rng, &removals);
    return removals;
}

std::vector<CycleCounts> sample_partitions(const WeightVector& theta, int N,
                                           std::uint64_t n_samples, const RngSpec& rng,
                                           int workers)
{
    if (N < 1) throw invalid_argument("sample_partitions: N must be >= 1");
    theta.validate(N);
    const ZTable z = z_recursion(theta, N);
    const auto lt = log_weights(theta, N);
    std::vector<CycleCounts> out(n_samples);
    const std::size_t n_chunks = chunk_count(n_samples, rng.chunk_size);
    parallel_chunks(n_chunks, workers, [&](std::size_t c) {
        ChunkRng gen(rng, c);
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * rng.chunk_size;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + rng.chunk_size, n_samples);
        for (std::uint64_t s = lo; s < hi; ++s) out[s] = sample_with_log_theta(lt, z, N, gen);
    });
    return out;
}

CycleStats cycle_statistics(const std::vector<CycleCounts>& samples, double volume)
{
    if (volume <= 0.0) throw invalid_argument("cycle_statistics: volume must be > 0");
    CycleStats st;
    st.volume = volume;
    st.n_samples = samples.size();
    if (samples.empty()) return st;

    const std::size_t K = samples.front().counts.size();
    std::vector<double> sum(K, 0.0), sum_sq(K, 0.0);
    for (const auto& s : samples) {
        if (s.counts.size() != K)
            throw invalid_argument("cycle_statistics: inconsistent sample lengths");
        for (std::size_t k = 0; k < K; ++k) {
            const double v = static_cast<double>(s.counts[k]);
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    const auto n = static_cast<double>(samples.size());
    st.mean.resize(K);
    st.std_error.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double mean = sum[k] / n;
        double var = n > 1.5 ? (sum_sq[k] - n * mean * mean) / (n - 1.0) : 0.0;
        if (var < 0.0) var = 0.0;
        st.mean[k] = mean / volume;
        st.std_error[k] = std::sqrt(var / n) / volume;
    }
    return st;
}

double log_probability(const WeightVector& theta, const ZTable& z, const CycleCounts& l)
{
    const int N = l.N;
    theta.validate(N);
    if (l.weighted_sum() != static_cast<std::uint64_t>(N))
        throw invalid_argument("log_probability: counts do not partition N");
    double lp = -z.log_z[static_cast<std::size_t>(N)];
    for (int k = 1; k <= N; ++k) {
        const auto lk = l.counts[static_cast<std::size_t>(k - 1)];
        if (lk == 0) continue;
        lp += lk * (std::log(theta.theta[static_cast<std::size_t>(k - 1)]) -
                    std::log(static_cast<double>(k)));
        lp -= std::lgamma(static_cast<double>(lk) + 1.0);
    }
    return lp;
}

} // namespace srbb::permsample
