#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace srbb {

// Identifies a reproducible random stream. Sample index space is split into
// chunks of `chunk_size`; chunk c draws from a generator seeded purely by
// (seed, stream, c), so serial and parallel runs produce identical output.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint32_t chunk_size = 4096;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x)
{
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Generator for one chunk of a stream. Normal variates use an explicit
// Box-Muller transform so sequences do not depend on the C++ library's
// unspecified std::normal_distribution algorithm.
class ChunkRng {
public:
    ChunkRng(const RngSpec& spec, std::uint64_t chunk_index)
    {
        std::uint64_t s = spec.seed;
        std::uint64_t a = detail::splitmix64(s);
        s ^= spec.stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = detail::splitmix64(s);
        s ^= chunk_index * 0xd1342543de82ef95ULL + 0x9e3779b97f4a7c15ULL;
        std::uint64_t c = detail::splitmix64(s);
        gen_.seed(a ^ (b << 1) ^ c);
    }

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::size_t chunk_count(std::size_t n_samples, std::uint32_t chunk_size)
{
    return (n_samples + chunk_size - 1) / chunk_size;
}

// Runs fn(chunk_index) for every chunk on `workers` threads (0 = all cores).
// fn must only write chunk-local state; callers reduce over chunks in index
// order afterwards, which keeps results independent of the worker count.
template <typename Fn>
void parallel_chunks(std::size_t n_chunks, int workers, Fn&& fn)
{
    if (workers <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        workers = hc > 0 ? static_cast<int>(hc) : 1;
    }
    if (workers == 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<std::size_t>(workers, n_chunks);
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

// Streaming mean / standard-error accumulator with deterministic chunked
// reduction: per-chunk sums are combined in chunk order.
struct MeanAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double w)
    {
        sum += w;
        sum_sq += w * w;
        ++n;
    }
    void combine(const MeanAccumulator& o)
    {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double std_error() const
    {
        if (n < 2) return 0.0;
        const double m = mean();
        double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        if (var < 0.0) var = 0.0;
        return std::sqrt(var / static_cast<double>(n));
    }
};

} // namespace srbb
