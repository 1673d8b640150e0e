#include "srbb/laces.hpp"

#include "srbb/errors.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace srbb::laces {

namespace {

void check_cap(int N, int cap = kEnumerationCap)
{
    if (N < 1) throw invalid_argument("laces: N must be >= 1");
    // masks live in 32 bits, so nothing above the built-in cap is ever legal
    if (N > std::min(cap, kEnumerationCap))
        throw resource_limit("laces: N=" + std::to_string(N) + " exceeds enumeration cap " +
                             std::to_string(std::min(cap, kEnumerationCap)));
}

} // namespace

int edge_slots(int N) { return N * (N - 1) / 2; }

// Pairs ordered (1,2),(1,3),...,(1,N),(2,3),...
int edge_index(int N, int i, int j)
{
    if (i < 1 || j <= i || j > N) throw invalid_argument("laces: bad edge");
    const int before = (i - 1) * N - i * (i - 1) / 2; // edges with smaller left endpoint
    return before + (j - i - 1);
}

Edge edge_from_index(int N, int idx)
{
    for (int i = 1; i < N; ++i) {
        const int row = N - i;
        if (idx < row) return {i, i + 1 + idx};
        idx -= row;
    }
    throw invalid_argument("laces: edge index out of range");
}

std::uint32_t edge_bit(int N, int i, int j) { return 1u << edge_index(N, i, j); }

std::vector<Edge> edge_list(const Graph& g)
{
    std::vector<Edge> out;
    std::uint32_t m = g.edges;
    while (m != 0) {
        const int idx = std::countr_zero(m);
        out.push_back(edge_from_index(g.N, idx));
        m &= m - 1;
    }
    return out;
}

Graph graph_from_edges(int N, const std::vector<Edge>& edges)
{
    Graph g{N, 0};
    for (const auto& [i, j] : edges) g.edges |= edge_bit(N, i, j);
    return g;
}

Graph Lace::as_graph() const { return graph_from_edges(N, edges); }

namespace detail {

std::vector<std::uint32_t> cut_masks(int N)
{
    std::vector<std::uint32_t> cuts(static_cast<std::size_t>(N > 0 ? N : 0), 0u);
    for (int k = 1; k < N; ++k) {
        std::uint32_t m = 0;
        for (int i = 1; i <= k; ++i)
            for (int j = k + 1; j <= N; ++j) m |= edge_bit(N, i, j);
        cuts[static_cast<std::size_t>(k)] = m;
    }
    return cuts;
}

bool irreducible_mask(std::uint32_t mask, const std::vector<std::uint32_t>& cuts)
{
    for (std::size_t k = 1; k < cuts.size(); ++k)
        if ((mask & cuts[k]) == 0) return false;
    return true;
}

} // namespace detail

std::vector<int> breakpoints(const Graph& g)
{
    // Breakpoints live in {1..N-1}; k = N would vacuously hold for every
    // graph and is reserved for the b(g) := N convention on irreducibles.
    std::vector<int> out;
    const auto cuts = detail::cut_masks(g.N);
    for (int k = 1; k < g.N; ++k)
        if ((g.edges & cuts[static_cast<std::size_t>(k)]) == 0) out.push_back(k);
    return out;
}

bool is_irreducible(const Graph& g)
{
    if (g.N < 2) throw invalid_argument("laces: irreducibility needs N >= 2");
    const auto cuts = detail::cut_masks(g.N);
    return detail::irreducible_mask(g.edges, cuts);
}

bool is_lace(const Graph& g)
{
    if (g.N < 2 || !is_irreducible(g)) return false;
    std::uint32_t m = g.edges;
    const auto cuts = detail::cut_masks(g.N);
    while (m != 0) {
        const std::uint32_t bit = m & (0u - m);
        if (detail::irreducible_mask(g.edges & ~bit, cuts)) return false;
        m &= m - 1;
    }
    return true;
}

Lace lace_of(const Graph& g)
{
    if (!is_irreducible(g)) throw invalid_argument("lace_of: graph is reducible");
    const int N = g.N;
    Lace lace{N, {}};

    if (g.edges & edge_bit(N, 1, N)) {
        lace.edges.push_back({1, N});
        return lace;
    }

    // First edge: (1, j1) with the largest j1 (j1 < N here).
    int j1 = 0;
    for (int j = N - 1; j >= 2; --j) {
        if (g.edges & edge_bit(N, 1, j)) {
            j1 = j;
            break;
        }
    }
    lace.edges.push_back({1, j1});

    int cur = j1;
    while (cur < N) {
        // Largest j' over edges (i',j') with i' <= cur < j', then smallest i'.
        int best_j = -1, best_i = -1;
        for (int j = N; j > cur; --j) {
            for (int i = 1; i <= cur; ++i) {
                if (g.edges & edge_bit(N, i, j)) {
                    best_j = j;
                    best_i = i;
                    break;
                }
            }
            if (best_j > 0) break;
        }
        lace.edges.push_back({best_i, best_j});
        cur = best_j;
    }
    return lace;
}

std::uint32_t compatible_mask(const Lace& lace)
{
    if (!is_lace(lace.as_graph())) throw invalid_argument("compatible_set: input is not a lace");
    const int N = lace.N;
    const std::uint32_t lace_mask = lace.as_graph().edges;
    std::uint32_t out = 0;
    for (int idx = 0; idx < edge_slots(N); ++idx) {
        const std::uint32_t bit = 1u << idx;
        if (lace_mask & bit) continue;
        const Lace l2 = lace_of(Graph{N, lace_mask | bit});
        if (l2.edges == lace.edges) out |= bit;
    }
    return out;
}

std::vector<Edge> compatible_set(const Lace& lace)
{
    return edge_list(Graph{lace.N, compatible_mask(lace)});
}

LaceType classify_type(const Lace& lace)
{
    LaceType t;
    if (lace.edges.empty()) return t;
    int run = 1;
    for (std::size_t k = 1; k < lace.edges.size(); ++k) {
        if (lace.edges[k].first == lace.edges[k - 1].second) {
            ++run; // touching
        } else {
            t.composition.push_back(run); // intersecting: new chain
            run = 1;
        }
    }
    t.composition.push_back(run);
    return t;
}

std::vector<Graph> enumerate_irreducible(int N, int cap)
{
    check_cap(N, cap);
    std::vector<Graph> out;
    if (N < 2) return out;
    for_each_irreducible(N, [&](const Graph& g) { out.push_back(g); });
    return out;
}

std::vector<Lace> enumerate_laces(int N, int cap)
{
    check_cap(N, cap);
    std::vector<Lace> out;
    if (N < 2) return out; // no laces on a single vertex
    const auto cuts = detail::cut_masks(N);
    const int slots = edge_slots(N);
    // A lace has at most N-1 edges, so walk masks per popcount (Gosper).
    for (int n = 1; n <= N - 1; ++n) {
        std::uint64_t m = (1u << n) - 1;
        const std::uint64_t limit = 1ull << slots;
        while (m < limit) {
            const auto mask = static_cast<std::uint32_t>(m);
            if (detail::irreducible_mask(mask, cuts) && is_lace(Graph{N, mask}))
                out.push_back(Lace{N, edge_list(Graph{N, mask})});
            const std::uint64_t c = m & (0ull - m);
            const std::uint64_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    std::sort(out.begin(), out.end(), [](const Lace& a, const Lace& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    });
    return out;
}

std::string laces_as_text(int N)
{
    std::string out;
    for (const Lace& l : enumerate_laces(N)) {
        out += std::to_string(N) + ",";
        for (const auto& [i, j] : l.edges)
            out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        out += ",(";
        const auto t = classify_type(l);
        for (std::size_t i = 0; i < t.composition.size(); ++i)
            out += (i ? " " : "") + std::to_string(t.composition[i]);
        out += ")\n";
    }
    return out;
}

LaceIdentityResult lace_identity_check(int N, const std::vector<double>& u)
{
    check_cap(N);
    if (N < 2) throw invalid_argument("lace_identity_check: N must be >= 2");
    if (u.size() != static_cast<std::size_t>(edge_slots(N)))
        throw invalid_argument("lace_identity_check: U size mismatch");

    double lhs = 0.0;
    for_each_irreducible(N, [&](const Graph& g) {
        double prod = 1.0;
        std::uint32_t m = g.edges;
        while (m != 0) {
            prod *= -u[static_cast<std::size_t>(std::countr_zero(m))];
            m &= m - 1;
        }
        lhs += prod;
    });

    double rhs = 0.0;
    for (const Lace& l : enumerate_laces(N)) {
        double prod = 1.0;
        std::uint32_t m = l.as_graph().edges;
        while (m != 0) {
            prod *= -u[static_cast<std::size_t>(std::countr_zero(m))];
            m &= m - 1;
        }
        std::uint32_t cm = compatible_mask(l);
        while (cm != 0) {
            prod *= 1.0 - u[static_cast<std::size_t>(std::countr_zero(cm))];
            cm &= cm - 1;
        }
        rhs += prod;
    }
    return {lhs, rhs, std::abs(lhs - rhs)};
}

} // namespace srbb::laces
