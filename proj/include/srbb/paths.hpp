#pragma once

#include "srbb/rng.hpp"

#include <span>
#include <vector>

namespace srbb::paths {

enum class PotentialKind { step_ball, smooth_bump, table };

// Nonnegative pair potential v with sup bound `strength` (L) and compact
// support radius `range` (R): v(r) in [0, L], v(r) = 0 for r > R.
struct PairPotential {
    PotentialKind kind = PotentialKind::step_ball;
    double strength = 1.0;
    double range = 1.0;
    std::vector<double> values; // kind == table: samples at r = range*k/(n-1)

    double operator()(double r) const;
    // step-ball jumps at R; a table is continuous only if it lands on zero
    bool continuous() const
    {
        if (kind == PotentialKind::step_ball) return strength == 0.0;
        if (kind == PotentialKind::table) return values.empty() || values.back() == 0.0;
        return true;
    }

    static PairPotential step_ball(double eta, double R);
    static PairPotential smooth_bump(double eta, double R);
    static PairPotential tabulated(std::vector<double> values, double R);
};

// One leg: a path on [0, beta] discretized at the M+1 times j*beta/M,
// stored flat as (M+1) x dim coordinates.
struct Leg {
    int dim = 1;
    double beta = 1.0;
    std::vector<double> pts;

    int steps() const { return static_cast<int>(pts.size()) / dim - 1; }
    std::span<const double> point(int j) const
    {
        return {pts.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> point(int j)
    {
        return {pts.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
    }
};

// An ordered list of legs; adjacent legs share their junction point exactly.
struct PathConfig {
    std::vector<Leg> legs;

    int leg_count() const { return static_cast<int>(legs.size()); }
    void validate() const; // throws on broken continuity / mismatched grids
};

// Exact finite-dimensional Gaussian bridge law on the grid, sampled
// sequentially (each step conditioned on the fixed endpoint). The first and
// last grid points equal start/end bitwise.
Leg sample_bridge_leg(std::span<const double> start, std::span<const double> end, double duration,
                      int M, ChunkRng& rng);

// Bridge of the given duration; an integer duration k >= 1 is returned as k
// unit legs with M points each, anything else as a single leg.
PathConfig sample_bridge(std::span<const double> start, std::span<const double> end,
                         double duration, int M, ChunkRng& rng);
PathConfig sample_bridge(std::span<const double> start, std::span<const double> end,
                         double duration, int M, const RngSpec& rng);

// Bridge over total time k*beta split into k legs of duration beta.
PathConfig sample_bridge_legs(std::span<const double> start, std::span<const double> end, int k,
                              double beta, int M, ChunkRng& rng);

// Free Brownian path started at `start`, k unit legs, M points per leg.
PathConfig sample_free_path(std::span<const double> start, int k, int M, ChunkRng& rng);

enum class QuadratureRule { trapezoid, simpson };

// Quadrature approximation of int_0^beta v(|f(s)-g(s)|) ds on the shared
// grid; trapezoid by default, Simpson needs even M.
double interaction_V(const Leg& f, const Leg& g, const PairPotential& v,
                     QuadratureRule rule = QuadratureRule::trapezoid);

// H(B) = sum over leg pairs i < j of interaction_V. Pairs whose bounding
// boxes are farther apart than the potential range contribute exactly zero
// and are skipped.
double hamiltonian(const PathConfig& B, const PairPotential& v);

// 1 - exp(-alpha * V(f,g)), in [0,1).
double u_factor(const Leg& f, const Leg& g, double alpha, const PairPotential& v);

// All pairwise u-factors of a path prefix (legs 0..k-1), indexed like
// laces::edge_index(k, i, j). Used by the lace-sum estimators.
std::vector<double> pairwise_u(const PathConfig& B, int k, double alpha, const PairPotential& v);

} // namespace srbb::paths
