#pragma once

#include "dpc/error.hpp"
#include "dpc/graph.hpp"
#include "dpc/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dpc {

/// Color ids are vertices of the cover graph.
using Color = std::int32_t;

inline constexpr Color kBlank = -1;

/// A partial choice of one color per base vertex; kBlank marks uncolored vertices.
struct PartialColoring {
    std::vector<Color> assignment;

    PartialColoring() = default;
    explicit PartialColoring(std::size_t vertex_count) : assignment(vertex_count, kBlank) {}

    std::size_t size() const noexcept { return assignment.size(); }
    bool colored(Vertex v) const noexcept { return assignment[v] != kBlank; }
    Color operator[](Vertex v) const noexcept { return assignment[v]; }
    std::size_t colored_count() const noexcept;
    bool is_total() const noexcept { return colored_count() == size(); }

    friend bool operator==(const PartialColoring&, const PartialColoring&) = default;
};

/// A DP-cover (L, H) of a base graph G: the colors 0..color_count()-1 are the
/// vertices of the cover graph H and are partitioned into the lists L(v).
/// Across a base edge uv the cover edges between L(u) and L(v) form a
/// matching; across a non-edge there are none.
///
/// Construction does not check these invariants; call validate() (or use a
/// checked factory such as from_list_assignment) when the input is untrusted.
class DpCover {
public:
    DpCover() = default;

    /// The owner map is derived from `lists`.
    DpCover(Graph base, Graph cover, std::vector<std::vector<Color>> lists);

    /// Explicit owner map, kept as given so validate() can report mismatches.
    DpCover(Graph base, Graph cover, std::vector<std::vector<Color>> lists, std::vector<Vertex> list_of);

    const Graph& base() const noexcept { return base_; }
    const Graph& cover() const noexcept { return cover_; }

    std::size_t vertex_count() const noexcept { return base_.vertex_count(); }
    std::size_t color_count() const noexcept { return cover_.vertex_count(); }

    std::span<const Color> list(Vertex v) const noexcept { return lists_[v]; }
    const std::vector<std::vector<Color>>& lists() const noexcept { return lists_; }

    /// The base vertex owning color c, or -1 when c is in no list.
    Vertex owner(Color c) const noexcept { return list_of_[c]; }
    const std::vector<Vertex>& owners() const noexcept { return list_of_; }

    std::size_t min_list_size() const noexcept;
    std::size_t max_list_size() const noexcept;

    friend bool operator==(const DpCover&, const DpCover&) = default;

private:
    Graph base_;
    Graph cover_;
    std::vector<std::vector<Color>> lists_;
    std::vector<Vertex> list_of_;
};

enum class ViolationKind {
    NotPartition,       // a color is in no list or in several lists
    OwnerMismatch,      // list_of disagrees with lists
    ListNotIndependent, // cover edge inside one list
    NotMatching,        // a color has two neighbors in the same list
    EdgeOnNonEdge,      // cover edge between lists of non-adjacent base vertices
};

struct Violation {
    ViolationKind kind;
    std::vector<std::int64_t> witness;

    std::string describe() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const DpCover& c);

/// Raised by loaders and checked factories; carries every violation found.
class InvalidCover : public Error {
public:
    explicit InvalidCover(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// A cover derived from a parent cover, with the parent ids of its base
/// vertices and colors.
struct Subcover {
    DpCover cover;
    std::vector<Vertex> vertex_origin;
    std::vector<Color> color_origin;
};

/// List coloring as DP-coloring: equal labels are joined across base edges.
/// Colors are numbered vertex by vertex, labels ascending within a list.
DpCover from_list_assignment(const Graph& g, const std::vector<std::vector<std::int64_t>>& labels);

/// Keeps the `ell` smallest color ids of every list and drops base edges whose
/// matching became empty. Color ids are renumbered monotonically.
Subcover trim(const DpCover& c, std::size_t ell);

struct RegularizeOptions {
    std::size_t aux_attempts = 200;  // girth-5 sampling attempts per vertex count
    std::size_t aux_doublings = 6;   // times the auxiliary vertex count may double
    double kst_budget = 5e7;         // input K_{s,t} check is skipped above this
};

/// Raised when no auxiliary N-regular graph of girth >= 5 was found.
class AuxiliaryGraphError : public Error {
public:
    AuxiliaryGraphError(std::size_t degree, std::size_t attempts);
    std::size_t degree() const noexcept { return degree_; }
    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t degree_;
    std::size_t attempts_;
};

/// Auxiliary graph used by regularize: N-regular with girth at least 5.
Graph auxiliary_girth5_graph(std::size_t degree, Seed seed, const RegularizeOptions& options = {});

/// Embeds c into a cover whose graph is exactly d-regular, built from
/// k = |V(aux)| disjoint copies of c joined along the edges of an auxiliary
/// N-regular girth-5 graph, N = sum over colors of (d - deg(c)). Copy i uses
/// base vertices [i n, (i+1) n) and colors [i C, (i+1) C); copy 0 is c itself.
DpCover regularize(const DpCover& c, std::size_t d, std::size_t s, std::size_t t, Seed seed,
                   const RegularizeOptions& options = {});

/// The cover induced on the uncolored vertices of phi with lists kept(v).
/// `kept` is indexed by base vertex; entries of colored vertices are ignored.
Subcover residual(const DpCover& c, const PartialColoring& phi, const std::vector<std::vector<Color>>& kept);

/// Cover induced on `vertices` (in that order) with the given per-vertex lists.
Subcover induced_cover(const DpCover& c, std::span<const Vertex> vertices,
                       const std::vector<std::vector<Color>>& lists, bool drop_empty_matchings);

} // namespace dpc
