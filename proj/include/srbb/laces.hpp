#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace srbb::laces {

// Edge (i,j), 1 <= i < j <= N.
using Edge = std::pair<int, int>;

// Simple graph on vertices {1..N}, edges stored as a bitmask over the
// N(N-1)/2 unordered pairs. N <= 8 keeps the mask in 32 bits.
struct Graph {
    int N = 0;
    std::uint32_t edges = 0;

    bool operator==(const Graph&) const = default;
};

constexpr int kEnumerationCap = 8;

int edge_slots(int N);
int edge_index(int N, int i, int j);
Edge edge_from_index(int N, int idx);
std::uint32_t edge_bit(int N, int i, int j);
std::vector<Edge> edge_list(const Graph& g);
Graph graph_from_edges(int N, const std::vector<Edge>& edges);

// A lace: an irreducible graph that loses irreducibility when any single
// edge is removed. Edges are kept sorted by left endpoint (the order the
// greedy construction emits them in).
struct Lace {
    int N = 0;
    std::vector<Edge> edges;

    Graph as_graph() const;
    bool operator==(const Lace&) const = default;
};

// Chain composition of a lace: sizes of the maximal runs of consecutive
// touching edges (j_t == i_{t+1}).
struct LaceType {
    std::vector<int> composition;

    bool operator==(const LaceType&) const = default;
};

// Indices k in {1..N-1} such that no edge (i,j) has i <= k < j.
std::vector<int> breakpoints(const Graph& g);

// True iff the graph has no breakpoint. N == 1 is rejected: there are no
// laces (and no meaningful irreducibility) on a single vertex.
bool is_irreducible(const Graph& g);

bool is_lace(const Graph& g);

// Canonical lace of an irreducible graph by the greedy rule: start from the
// largest j with (1,j) present; repeatedly take the edge (i',j') with
// i' <= j_cur < j' maximizing j' and, among those, minimizing i'. A graph
// containing (1,N) has lace {(1,N)}.
Lace lace_of(const Graph& g);

// Edges (i,j) not in the lace with lace_of(lace + (i,j)) == lace.
std::vector<Edge> compatible_set(const Lace& lace);
std::uint32_t compatible_mask(const Lace& lace);

LaceType classify_type(const Lace& lace);

std::vector<Graph> enumerate_irreducible(int N, int cap = kEnumerationCap);
std::vector<Lace> enumerate_laces(int N, int cap = kEnumerationCap);

// Streaming variant for callers that only need to visit each irreducible
// graph once (avoids materializing the full list).
template <typename Fn>
void for_each_irreducible(int N, Fn&& fn);

// Both sides of the lace resummation identity evaluated for a symmetric
// U matrix (entries indexed by edge slot): the direct sum over irreducible
// graphs of prod(-U_ij) and the lace-factorized sum.
struct LaceIdentityResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double discrepancy = 0.0;
};

// u[edge_index(N,i,j)] holds U_{ij} in [0,1].
LaceIdentityResult lace_identity_check(int N, const std::vector<double>& u);

// Text rows "N,(i1,j1)(i2,j2)...,(t1 t2 ...)" for golden-file comparisons.
std::string laces_as_text(int N);

namespace detail {
// Mask of edges crossing the cut between k and k+1, for k = 1..N-1.
std::vector<std::uint32_t> cut_masks(int N);
bool irreducible_mask(std::uint32_t mask, const std::vector<std::uint32_t>& cuts);
} // namespace detail

template <typename Fn>
void for_each_irreducible(int N, Fn&& fn)
{
    const auto cuts = detail::cut_masks(N);
    const std::uint32_t total = 1u << edge_slots(N);
    for (std::uint32_t m = 0; m < total; ++m) {
        if (detail::irreducible_mask(m, cuts)) fn(Graph{N, m});
    }
}

} // namespace srbb::laces
