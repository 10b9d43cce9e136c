#pragma once

#include "dpc/cover.hpp"
#include "dpc/nibble.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dpc {

struct Conflict {
    Vertex u = -1;
    Vertex v = -1;
    Color a = kBlank;
    Color b = kBlank;
};

struct ProperCheck {
    bool proper = true;
    std::optional<Conflict> witness;
};

/// Checks that no cover edge joins two assigned colors. Throws
/// PreconditionError when a vertex is assigned a color outside its list.
ProperCheck verify_proper(const DpCover& c, const PartialColoring& phi);

/// Classification around an anchor color c with threshold d^(1-delta):
/// a color of the second neighborhood is bad when it has at least that many
/// neighbors in N(c); a neighbor of c is sad when it has at least that many
/// bad neighbors.
struct StructureReport {
    Color anchor = kBlank;
    std::size_t d = 0;
    std::size_t t = 0;
    double delta = 0;  // 1/(3t)
    double beta1 = 0;  // 1/(20t)
    double beta2 = 0;  // 1/(15t)
    double delta2 = 0; // 1/(10t)
    double tau = 0;    // 4/(9t)
    double threshold = 0;
    std::vector<Color> second_neighborhood; // ascending, excludes the anchor
    std::vector<Color> bad;
    std::vector<Color> good;
    std::vector<Color> sad;
    std::vector<Color> happy;
    double sad_bound = 0; // d^(1-beta2)
    bool sad_within_bound = true;
};

StructureReport classify_structure(const Graph& cover, Color anchor, std::size_t d, std::size_t t);

/// Sample sums over independent rounds with seeds seed .. seed+trials-1.
/// Per vertex: kept size ell'(v). Per color c: d'(c), the number of cover
/// neighbors of c whose vertex stayed uncolored and kept them.
struct RoundStats {
    std::size_t trials = 0;
    std::vector<std::uint64_t> kept_sum;
    std::vector<std::uint64_t> kept_sq;
    std::vector<std::uint64_t> kept_tail;   // |ell'(v) - keep ell_v| > ell_v^(1-beta)
    std::vector<std::uint64_t> degree_sum;
    std::vector<std::uint64_t> degree_sq;
    std::vector<std::uint64_t> degree_tail; // d'(c) > keep uncolor d + d^(1-beta)
    std::uint64_t uncolored_neighbors_sum = 0; // sum over colors of |U|
    std::uint64_t identity_failures = 0;       // samples with d'(c) != |U| - |U \ K|

    struct AnchorSample {
        std::size_t uncolored = 0;      // |U|
        std::size_t uncolored_lost = 0; // |U \ K|
        std::size_t residual_degree = 0;
    };
    std::optional<Color> anchor;
    std::vector<AnchorSample> anchor_samples; // by trial index

    double kept_mean(Vertex v) const;
    double kept_variance(Vertex v) const;
    double degree_mean(Color c) const;
    double degree_variance(Color c) const;
};

/// `jobs` worker threads split the trials; results do not depend on `jobs`.
RoundStats round_stats(const DpCover& c, const RoundParams& p, std::optional<Color> anchor, std::size_t trials,
                       Seed seed, std::size_t jobs = 1);

struct ExactExpectation {
    std::vector<long double> kept;            // E ell'(v)
    std::vector<long double> residual_degree; // E d'(c)
    std::size_t outcomes = 0;
};

inline constexpr double kDefaultEnumerationBudget = 1e6;

/// Exact expectations by enumerating every activation/color outcome. Throws
/// BudgetExceeded when the product over v of (1 + |L(v)|) exceeds `budget`.
ExactExpectation exact_round_expectation(const DpCover& c, const RoundParams& p,
                                         double budget = kDefaultEnumerationBudget);

} // namespace dpc
