#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dpc {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..vertex_count()-1, stored as sorted
/// adjacency arrays (CSR). Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(std::size_t n);

    /// Builds a graph from an edge list. Throws PreconditionError on a
    /// self-loop, a duplicate edge or an out-of-range endpoint.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    /// Same, but silently drops duplicate edges (self-loops still throw).
    static Graph from_edges_dedup(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(Vertex u, Vertex v) const noexcept;

    /// All edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

std::size_t max_degree(const Graph& g) noexcept;

/// Length of a shortest cycle; std::nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

/// Subgraph induced by `keep` (renumbered in the given order).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

inline constexpr double kDefaultKstBudget = 1e9;

/// True iff some s vertices of `left` and t vertices of `right` span a
/// complete bipartite subgraph. Throws BudgetExceeded when
/// C(|left|, s) * C(|right|, t) exceeds `budget`.
bool contains_kst(const Graph& g, std::span<const Vertex> left, std::span<const Vertex> right,
                  std::size_t s, std::size_t t, double budget = kDefaultKstBudget);

/// Whole-graph mode: any two disjoint vertex sets of sizes s and t. Candidate
/// s-sets are drawn from neighborhoods, so the budget bounds the number of
/// candidates, sum over w of C(deg(w), s).
bool contains_kst(const Graph& g, std::size_t s, std::size_t t, double budget = kDefaultKstBudget);

/// Kovari-Sos-Turan bound s^{1/t} m^{1-1/t} n + t m. Requires m >= n >= 1.
double kst_edge_bound(double m, double n, double s, double t);

/// n choose k as a double (saturates to +inf on overflow).
double binomial(double n, double k) noexcept;

/// "p <n>" header then "e <u> <v>" lines; '#' starts a comment line.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace dpc
