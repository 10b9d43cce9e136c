#include "dpc/cover.hpp"
#include "dpc/generators.hpp"

#include <doctest.h>

#include <numeric>

#include "oracles.hpp"

using namespace dpc;

namespace {

bool has_kind(const std::vector<Violation>& v, ViolationKind k)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

DpCover k2_matched(std::size_t ell)
{
    std::vector<std::vector<std::int64_t>> labels(2);
    for (std::size_t i = 0; i < ell; ++i) {
        labels[0].push_back(static_cast<std::int64_t>(i));
        labels[1].push_back(static_cast<std::int64_t>(i));
    }
    return from_list_assignment(testing::complete(2), labels);
}

} // namespace

TEST_CASE("validate accepts factory output and reports each broken invariant")
{
    CHECK(validate(k2_matched(3)).empty());

    const Graph k2 = testing::complete(2);
    // Edge inside one list.
    {
        const std::vector<Edge> he{{0, 1}};
        DpCover c(k2, Graph::from_edges(4, he), {{0, 1}, {2, 3}});
        const auto v = validate(c);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ViolationKind::ListNotIndependent);
    }
    // Two cover edges sharing an endpoint across one base edge.
    {
        const std::vector<Edge> he{{0, 2}, {0, 3}};
        DpCover c(k2, Graph::from_edges(4, he), {{0, 1}, {2, 3}});
        const auto v = validate(c);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == ViolationKind::NotMatching);
        CHECK_FALSE(v[0].describe().empty());
    }
    // Cover edge across a non-edge.
    {
        const std::vector<Edge> he{{0, 2}};
        DpCover c(Graph(2), Graph::from_edges(4, he), {{0, 1}, {2, 3}});
        CHECK(has_kind(validate(c), ViolationKind::EdgeOnNonEdge));
    }
    // Color in two lists, color in none.
    {
        DpCover c(k2, Graph(4), {{0, 1}, {1, 2}});
        const auto v = validate(c);
        CHECK(has_kind(v, ViolationKind::NotPartition));
    }
    // Explicit owner map disagreeing with the lists.
    {
        DpCover c(k2, Graph(2), {{0}, {1}}, {1, 0});
        CHECK(has_kind(validate(c), ViolationKind::OwnerMismatch));
    }
}

TEST_CASE("from_list_assignment examples")
{
    const DpCover a = k2_matched(2);
    CHECK(a.color_count() == 4);
    CHECK(a.cover().edge_count() == 2);
    CHECK(max_degree(a.cover()) == 1);

    const DpCover b = from_list_assignment(Graph(1), {{1, 2, 3}});
    CHECK(b.color_count() == 3);
    CHECK(b.cover().edge_count() == 0);

    CHECK_THROWS_AS(from_list_assignment(testing::complete(2), {{1}, {}}), PreconditionError);
}

TEST_CASE("triangle with identical 2-lists has no proper coloring, matching list coloring")
{
    const DpCover c = from_list_assignment(testing::complete(3), {{1, 2}, {1, 2}, {1, 2}});
    CHECK(c.color_count() == 6);
    CHECK(c.cover().edge_count() == 6);
    CHECK_FALSE(testing::has_proper_coloring(c));
    const DpCover d = from_list_assignment(testing::complete(3), {{1, 2}, {1, 2}, {1, 3}});
    CHECK(testing::has_proper_coloring(d));
}

TEST_CASE("list assignment round-trips list sizes and base graph")
{
    const Graph g = testing::petersen();
    const DpCover c = list_cover(g, 3, 5, 42);
    CHECK(validate(c).empty());
    CHECK(c.base() == g);
    for (Vertex v = 0; v < 10; ++v) {
        CHECK(c.list(v).size() == 3);
    }
}

TEST_CASE("trim keeps the smallest ids and drops empty matchings")
{
    const DpCover c = random_dp_cover(testing::cycle(6), 3, 1.0, 5);
    const Subcover same = trim(c, 3);
    CHECK(same.cover == c);

    // One list of size ell+2 loses its two largest ids.
    const DpCover d = from_list_assignment(testing::complete(2), {{1, 2, 3, 4, 5}, {1, 2, 3}});
    const Subcover t = trim(d, 3);
    CHECK(t.color_origin == std::vector<Color>{0, 1, 2, 5, 6, 7});
    CHECK(t.cover.list(0).size() == 3);
    CHECK(validate(t.cover).empty());

    // A base edge whose matching became empty disappears.
    const DpCover e = from_list_assignment(testing::complete(2), {{1, 9}, {9, 7}});
    CHECK(e.base().edge_count() == 1);
    const Subcover te = trim(e, 1);
    CHECK(te.cover.base().edge_count() == 0);

    CHECK_THROWS_AS(trim(d, 4), PreconditionError);
}

TEST_CASE("after trim every base edge carries a cover edge")
{
    for (Seed seed = 0; seed < 20; ++seed) {
        const DpCover c = random_dp_cover(random_regular(30, 4, seed), 6, 0.4, seed + 100);
        const Subcover t = trim(c, 3);
        CHECK(validate(t.cover).empty());
        CHECK(max_degree(t.cover.base()) <= 3 * max_degree(t.cover.cover()));
        for (const auto& [u, v] : t.cover.base().edges()) {
            bool carried = false;
            for (Color a : t.cover.list(u)) {
                for (Color b : t.cover.list(v)) {
                    carried = carried || testing::adjacent(t.cover.cover(), a, b);
                }
            }
            CHECK(carried);
        }
    }
}

TEST_CASE("regularize: already regular input is returned unchanged")
{
    const DpCover c = random_dp_cover(testing::petersen(), 3, 1.0, 9);
    CHECK(regularize(c, 3, 2, 2, 1) == c);
}

TEST_CASE("regularize: single isolated color with d = 1")
{
    const DpCover c(Graph(1), Graph(1), {{0}});
    const DpCover r = regularize(c, 1, 2, 2, 1);
    CHECK(r.vertex_count() == 2);
    CHECK(r.color_count() == 2);
    CHECK(r.cover().edge_count() == 1);
    CHECK(r.cover().has_edge(0, 1));
    CHECK(r.base().has_edge(0, 1));
    CHECK(validate(r).empty());
}

TEST_CASE("regularize: deficient K_{2,2}-free covers become d-regular and stay K_{2,2}-free")
{
    for (Seed seed = 0; seed < 6; ++seed) {
        Stream rng(seed);
        // Covers of girth-5 graphs are C4-free; drop a few cover edges to create deficiency.
        const Graph base = seed % 2 == 0 ? testing::petersen() : testing::cycle(7);
        const DpCover full = random_dp_cover(base, 3, 1.0, seed);
        auto edges = full.cover().edges();
        rng.shuffle(std::span(edges));
        edges.resize(edges.size() - 1 - seed % 2);
        const DpCover c(full.base(), Graph::from_edges(full.color_count(), edges), full.lists());
        REQUIRE(validate(c).empty());
        REQUIRE_FALSE(contains_kst(c.cover(), 2, 2));
        const std::size_t d = max_degree(full.cover());
        const DpCover r = regularize(c, d, 2, 2, seed);
        CAPTURE(seed);
        CHECK(validate(r).empty());
        for (Color x = 0; x < static_cast<Color>(r.color_count()); ++x) {
            CHECK(r.cover().degree(x) == d);
        }
        std::vector<Vertex> first(c.color_count());
        std::iota(first.begin(), first.end(), 0);
        CHECK(induced_subgraph(r.cover(), first) == c.cover());
        CHECK_FALSE(contains_kst(r.cover(), 2, 2));
    }
}

TEST_CASE("regularize rejects inputs violating its preconditions")
{
    const DpCover c = random_dp_cover(testing::petersen(), 2, 1.0, 3);
    CHECK_THROWS_AS(regularize(c, 2, 2, 2, 1), PreconditionError);
    std::vector<std::vector<std::int64_t>> labels(4, std::vector<std::int64_t>{0});
    const DpCover k22 = from_list_assignment(testing::cycle(4), labels);
    CHECK_THROWS_AS(regularize(k22, 3, 2, 2, 1), PreconditionError);
}

TEST_CASE("auxiliary graphs are N-regular with girth at least 5")
{
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 6}) {
        const Graph g = auxiliary_girth5_graph(n, 17);
        CAPTURE(n);
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            CHECK(g.degree(v) == n);
        }
        CHECK(girth(g).value_or(99) >= 5);
    }
}

TEST_CASE("residual examples")
{
    const DpCover c = random_dp_cover(testing::cycle(5), 3, 1.0, 2);
    const PartialColoring none(5);
    std::vector<std::vector<Color>> full(c.lists());
    CHECK(residual(c, none, full).cover == c);

    // All vertices colored.
    PartialColoring all(5);
    for (Vertex v = 0; v < 5; ++v) {
        all.assignment[v] = c.list(v)[0];
    }
    const Subcover empty = residual(c, all, full);
    CHECK(empty.cover.vertex_count() == 0);
    CHECK(empty.cover.base().edge_count() == 0);

    std::vector<std::vector<Color>> bad = full;
    bad[0].push_back(c.list(1)[0]);
    CHECK_THROWS_AS(residual(c, none, bad), PreconditionError);
}

TEST_CASE("residual lists only shrink and vertex sets only shrink")
{
    const DpCover c = random_dp_cover(random_regular(40, 3, 8), 5, 0.8, 8);
    PartialColoring phi(40);
    std::vector<std::vector<Color>> kept(40);
    Stream rng(4);
    for (Vertex v = 0; v < 40; ++v) {
        for (Color x : c.list(v)) {
            if (rng.bernoulli(0.6)) {
                kept[v].push_back(x);
            }
        }
        if (v % 7 == 0) {
            phi.assignment[v] = c.list(v)[0];
        }
    }
    const Subcover r = residual(c, phi, kept);
    CHECK(validate(r.cover).empty());
    CHECK(r.cover.vertex_count() <= c.vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(r.cover.vertex_count()); ++v) {
        const Vertex o = r.vertex_origin[v];
        CHECK_FALSE(phi.colored(o));
        CHECK(r.cover.list(v).size() == kept[o].size());
        for (Color x : r.cover.list(v)) {
            CHECK(c.owner(r.color_origin[x]) == o);
        }
    }
}
