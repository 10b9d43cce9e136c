#pragma once

#include "dpc/cover.hpp"
#include "dpc/graph.hpp"
#include "dpc/rng.hpp"

#include <cstddef>
#include <string>
#include <variant>

namespace dpc {

/// Pairing-model d-regular graph. Points are matched one suitable pair at a
/// time (distinct vertices, not yet adjacent), restarting when stuck.
/// Throws BudgetExceeded after `max_restarts` restarts.
Graph random_regular(std::size_t n, std::size_t d, Seed seed, std::size_t max_restarts = 1000);

enum class Girth5Method { Rejection, Swaps, Algebraic };

std::string to_string(Girth5Method m);

struct Girth5Options {
    std::size_t rejection_attempts = 200;
    double rejection_work = 1e6;             // raises the attempt count to rejection_work / (n d) on small graphs
    std::size_t swap_attempts_per_edge = 50; // swap repair budget = this * |E|
    bool algebraic_fallback = true;
};

struct Girth5Sample {
    Graph graph;
    Girth5Method method = Girth5Method::Rejection;
    std::size_t attempts = 0; // whole-graph samples drawn
};

/// d-regular graph on n vertices with girth at least 5. Tries, in order:
/// rejection of pairing-model samples (when short cycles are rare enough for
/// it to succeed), local edge swaps that break 3- and 4-cycles (when n has
/// enough headroom over d^3), and an algebraic construction from the biaffine
/// plane over GF(2^k) (when d = 2^k >= 4 and 2 d^2 - n is a multiple of 8 in
/// [0, 2d]). The output girth is always verified. Throws BudgetExceeded when
/// every applicable method failed.
Girth5Sample sample_girth5_regular(std::size_t n, std::size_t d, Seed seed, const Girth5Options& options = {});

Graph random_girth5_regular(std::size_t n, std::size_t d, Seed seed, const Girth5Options& options = {});

/// Lists of exactly `ell` colors (vertex v owns v*ell .. v*ell+ell-1). Across
/// each base edge a random bijection between the two lists is thinned,
/// keeping each pair independently with probability rho.
DpCover random_dp_cover(const Graph& g, std::size_t ell, double rho, Seed seed);

/// List assignment: each vertex receives a uniform ell-subset of the labels
/// 0..palette-1, converted with from_list_assignment.
DpCover list_cover(const Graph& g, std::size_t ell, std::size_t palette, Seed seed);

/// Bipartite graph with parts X = 0..m-1 and Y = m..m+n-1 that has no K_{s,t}
/// with its s-side in X. Candidate pairs are visited in random order and an
/// edge is added unless it would complete such a subgraph.
Graph kst_free_bipartite(std::size_t m, std::size_t n, std::size_t s, std::size_t t, Seed seed);

enum class GenKind { Regular, Girth5Regular, DpCover, ListCover, KstFreeBipartite };

std::string to_string(GenKind k);
GenKind gen_kind_from_string(const std::string& name);

/// A full description of one generated instance. For the cover kinds the base
/// graph is random_regular or random_girth5_regular on (n, d) according to
/// `girth5_base`.
struct GenSpec {
    GenKind kind = GenKind::Regular;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t ell = 0;
    double rho = 1.0;
    std::size_t palette = 0; // list_cover; 0 means ell
    bool girth5_base = false;
    std::size_t m = 0;
    std::size_t s = 0;
    std::size_t t = 0;
    Seed seed = 0;
};

using Instance = std::variant<Graph, DpCover>;

/// Checks the spec's parameters and builds the instance; deterministic in spec.
Instance generate(const GenSpec& spec);

} // namespace dpc
