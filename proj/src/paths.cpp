#include "srbb/paths.hpp"

#include "srbb/errors.hpp"
#include "srbb/laces.hpp"

#include <algorithm>
#include <cmath>

namespace srbb::paths {

double PairPotential::operator()(double r) const
{
    if (r < 0.0) throw invalid_argument("PairPotential: negative radius");
    if (r > range) return 0.0;
    switch (kind) {
    case PotentialKind::step_ball:
        return strength;
    case PotentialKind::smooth_bump: {
        const double q = r / range;
        const double w = 1.0 - q * q;
        return strength * w * w;
    }
    case PotentialKind::table: {
        if (values.size() < 2) return values.empty() ? 0.0 : values.front();
        const double pos = r / range * static_cast<double>(values.size() - 1);
        const auto k = static_cast<std::size_t>(pos);
        if (k + 1 >= values.size()) return values.back();
        const double frac = pos - static_cast<double>(k);
        return values[k] + frac * (values[k + 1] - values[k]);
    }
    }
    return 0.0;
}

PairPotential PairPotential::step_ball(double eta, double R)
{
    if (eta < 0.0 || R <= 0.0) throw invalid_argument("step_ball: need eta >= 0, R > 0");
    return {PotentialKind::step_ball, eta, R, {}};
}

PairPotential PairPotential::smooth_bump(double eta, double R)
{
    if (eta < 0.0 || R <= 0.0) throw invalid_argument("smooth_bump: need eta >= 0, R > 0");
    return {PotentialKind::smooth_bump, eta, R, {}};
}

PairPotential PairPotential::tabulated(std::vector<double> values, double R)
{
    if (values.empty() || R <= 0.0) throw invalid_argument("tabulated: need values, R > 0");
    double sup = 0.0;
    for (double v : values) {
        if (v < 0.0) throw invalid_argument("tabulated: potential must be nonnegative");
        sup = std::max(sup, v);
    }
    return {PotentialKind::table, sup, R, std::move(values)};
}

void PathConfig::validate() const
{
    if (legs.empty()) throw invalid_argument("PathConfig: need at least one leg");
    const int d = legs.front().dim;
    const int M = legs.front().steps();
    const double beta = legs.front().beta;
    for (std::size_t k = 0; k < legs.size(); ++k) {
        const Leg& l = legs[k];
        if (l.dim != d || l.steps() != M || l.beta != beta)
            throw invalid_argument("PathConfig: legs disagree on (dim, M, beta)");
        if (l.steps() < 1) throw invalid_argument("PathConfig: leg needs M >= 1");
        if (k > 0) {
            const auto prev = legs[k - 1].point(M);
            const auto cur = l.point(0);
            for (int c = 0; c < d; ++c)
                if (prev[c] != cur[c]) throw invalid_argument("PathConfig: junction mismatch");
        }
    }
}

namespace {

// Fills pts (S+1 grid points, flat) with a bridge from start to end over
// total time T. Sequential conditioning: given X_j and the endpoint, the next
// point is Gaussian with mean X_j + (end - X_j) * h / remaining and variance
// h * (remaining - h) / remaining per coordinate.
void fill_bridge(std::vector<double>& pts, std::span<const double> start,
                 std::span<const double> end, double T, int S, int dim, ChunkRng& rng)
{
    const double h = T / S;
    pts.resize(static_cast<std::size_t>(S + 1) * dim);
    std::copy(start.begin(), start.end(), pts.begin());
    for (int j = 0; j < S - 1; ++j) {
        const double remaining = T - j * h;
        const double pull = h / remaining;
        const double sd = std::sqrt(h * (remaining - h) / remaining);
        const double* cur = pts.data() + static_cast<std::size_t>(j) * dim;
        double* nxt = pts.data() + static_cast<std::size_t>(j + 1) * dim;
        for (int c = 0; c < dim; ++c)
            nxt[c] = cur[c] + (end[c] - cur[c]) * pull + sd * rng.normal();
    }
    std::copy(end.begin(), end.end(), pts.end() - dim);
}

PathConfig split_into_legs(const std::vector<double>& pts, int k, double beta, int M, int dim)
{
    PathConfig path;
    path.legs.reserve(static_cast<std::size_t>(k));
    for (int leg = 0; leg < k; ++leg) {
        Leg l{dim, beta, {}};
        const auto* from = pts.data() + static_cast<std::size_t>(leg) * M * dim;
        l.pts.assign(from, from + static_cast<std::size_t>(M + 1) * dim);
        path.legs.push_back(std::move(l));
    }
    return path;
}

} // namespace

Leg sample_bridge_leg(std::span<const double> start, std::span<const double> end, double duration,
                      int M, ChunkRng& rng)
{
    if (M < 1) throw invalid_argument("sample_bridge: M must be >= 1");
    if (duration <= 0.0) throw invalid_argument("sample_bridge: duration must be positive");
    if (start.size() != end.size() || start.empty())
        throw invalid_argument("sample_bridge: endpoint dimension mismatch");
    Leg leg{static_cast<int>(start.size()), duration, {}};
    fill_bridge(leg.pts, start, end, duration, M, leg.dim, rng);
    return leg;
}

PathConfig sample_bridge(std::span<const double> start, std::span<const double> end,
                         double duration, int M, ChunkRng& rng)
{
    if (M < 1) throw invalid_argument("sample_bridge: M must be >= 1");
    if (duration <= 0.0) throw invalid_argument("sample_bridge: duration must be positive");
    if (start.size() != end.size() || start.empty())
        throw invalid_argument("sample_bridge: endpoint dimension mismatch");

    const double rounded = std::round(duration);
    const bool integral = rounded >= 1.0 && std::abs(duration - rounded) < 1e-12;
    if (!integral) return PathConfig{{sample_bridge_leg(start, end, duration, M, rng)}};
    return sample_bridge_legs(start, end, static_cast<int>(rounded), 1.0, M, rng);
}

PathConfig sample_bridge(std::span<const double> start, std::span<const double> end,
                         double duration, int M, const RngSpec& rng)
{
    ChunkRng gen(rng, 0);
    return sample_bridge(start, end, duration, M, gen);
}

PathConfig sample_bridge_legs(std::span<const double> start, std::span<const double> end, int k,
                              double beta, int M, ChunkRng& rng)
{
    if (k < 1 || M < 1) throw invalid_argument("sample_bridge_legs: need k >= 1, M >= 1");
    if (beta <= 0.0) throw invalid_argument("sample_bridge_legs: beta must be positive");
    if (start.size() != end.size() || start.empty())
        throw invalid_argument("sample_bridge_legs: endpoint dimension mismatch");

    const int dim = static_cast<int>(start.size());
    std::vector<double> pts;
    fill_bridge(pts, start, end, k * beta, k * M, dim, rng);
    return split_into_legs(pts, k, beta, M, dim);
}

PathConfig sample_free_path(std::span<const double> start, int k, int M, ChunkRng& rng)
{
    if (k < 1 || M < 1) throw invalid_argument("sample_free_path: need k >= 1, M >= 1");
    const int dim = static_cast<int>(start.size());
    const int S = k * M;
    const double sd = std::sqrt(1.0 / M);
    std::vector<double> pts(static_cast<std::size_t>(S + 1) * dim);
    std::copy(start.begin(), start.end(), pts.begin());
    for (int j = 0; j < S; ++j) {
        const double* cur = pts.data() + static_cast<std::size_t>(j) * dim;
        double* nxt = pts.data() + static_cast<std::size_t>(j + 1) * dim;
        for (int c = 0; c < dim; ++c) nxt[c] = cur[c] + sd * rng.normal();
    }
    return split_into_legs(pts, k, 1.0, M, dim);
}

double interaction_V(const Leg& f, const Leg& g, const PairPotential& v, QuadratureRule rule)
{
    if (f.dim != g.dim || f.steps() != g.steps() || f.beta != g.beta)
        throw invalid_argument("interaction_V: legs must share (dim, M, beta)");
    const int M = f.steps();
    if (rule == QuadratureRule::simpson && M % 2 != 0)
        throw invalid_argument("interaction_V: Simpson needs an even M");
    const int dim = f.dim;
    const double h = f.beta / M;
    const double r2max = v.range * v.range;

    double acc = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double* a = f.pts.data() + static_cast<std::size_t>(j) * dim;
        const double* b = g.pts.data() + static_cast<std::size_t>(j) * dim;
        double r2 = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double diff = a[c] - b[c];
            r2 += diff * diff;
        }
        if (r2 > r2max) continue;
        const double w = v(std::sqrt(r2));
        if (rule == QuadratureRule::trapezoid) {
            acc += (j == 0 || j == M) ? 0.5 * w : w;
        } else {
            acc += (j == 0 || j == M) ? w : (j % 2 == 1 ? 4.0 * w : 2.0 * w);
        }
    }
    return rule == QuadratureRule::trapezoid ? acc * h : acc * h / 3.0;
}

namespace {

struct Box {
    double lo[8]; // dim <= 8
    double hi[8];
};

Box leg_box(const Leg& l)
{
    Box b;
    const int dim = l.dim;
    for (int c = 0; c < dim; ++c) {
        b.lo[c] = l.pts[static_cast<std::size_t>(c)];
        b.hi[c] = b.lo[c];
    }
    const int n = l.steps() + 1;
    for (int j = 1; j < n; ++j) {
        const double* p = l.pts.data() + static_cast<std::size_t>(j) * dim;
        for (int c = 0; c < dim; ++c) {
            b.lo[c] = std::min(b.lo[c], p[c]);
            b.hi[c] = std::max(b.hi[c], p[c]);
        }
    }
    return b;
}

bool boxes_further_than(const Box& a, const Box& b, int dim, double r)
{
    double gap2 = 0.0;
    const double r2 = r * r;
    for (int c = 0; c < dim; ++c) {
        const double gap = std::max({0.0, a.lo[c] - b.hi[c], b.lo[c] - a.hi[c]});
        gap2 += gap * gap;
        if (gap2 > r2) return true;
    }
    return false;
}

} // namespace

double hamiltonian(const PathConfig& B, const PairPotential& v)
{
    const int k = B.leg_count();
    if (k == 0) throw invalid_argument("hamiltonian: empty path");
    if (B.legs.front().dim > 8) throw invalid_argument("hamiltonian: dim > 8 unsupported");
    if (k == 1) return 0.0;

    std::vector<Box> boxes(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) boxes[static_cast<std::size_t>(i)] = leg_box(B.legs[static_cast<std::size_t>(i)]);

    const int dim = B.legs.front().dim;
    double H = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (boxes_further_than(boxes[static_cast<std::size_t>(i)], boxes[static_cast<std::size_t>(j)], dim, v.range))
                continue;
            H += interaction_V(B.legs[static_cast<std::size_t>(i)], B.legs[static_cast<std::size_t>(j)], v);
        }
    }

    const double bound = v.strength * B.legs.front().beta * 0.5 * k * (k - 1);
    if (H < 0.0 || H > bound * (1.0 + 1e-12) + 1e-12)
        throw numeric_error("hamiltonian: energy outside [0, L*beta*k(k-1)/2]");
    return H;
}

double u_factor(const Leg& f, const Leg& g, double alpha, const PairPotential& v)
{
    if (alpha < 0.0) throw invalid_argument("u_factor: alpha must be >= 0");
    return -std::expm1(-alpha * interaction_V(f, g, v));
}

std::vector<double> pairwise_u(const PathConfig& B, int k, double alpha, const PairPotential& v)
{
    if (k < 1 || k > B.leg_count()) throw invalid_argument("pairwise_u: bad prefix length");
    std::vector<double> u(static_cast<std::size_t>(laces::edge_slots(k)), 0.0);
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            u[static_cast<std::size_t>(laces::edge_index(k, i, j))] =
                u_factor(B.legs[static_cast<std::size_t>(i - 1)], B.legs[static_cast<std::size_t>(j - 1)], alpha, v);
    return u;
}

} // namespace srbb::paths
