#include "dpc/cover.hpp"

#include "dpc/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace dpc {

std::size_t PartialColoring::colored_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(assignment.begin(), assignment.end(), [](Color c) { return c != kBlank; }));
}

namespace {

std::vector<Vertex> derive_owners(std::size_t color_count, const std::vector<std::vector<Color>>& lists)
{
    std::vector<Vertex> owner(color_count, -1);
    for (std::size_t v = 0; v < lists.size(); ++v) {
        for (Color c : lists[v]) {
            if (c >= 0 && static_cast<std::size_t>(c) < color_count && owner[c] == -1) {
                owner[c] = static_cast<Vertex>(v);
            }
        }
    }
    return owner;
}

} // namespace

DpCover::DpCover(Graph base, Graph cover, std::vector<std::vector<Color>> lists)
    : base_(std::move(base)), cover_(std::move(cover)), lists_(std::move(lists))
{
    list_of_ = derive_owners(cover_.vertex_count(), lists_);
}

DpCover::DpCover(Graph base, Graph cover, std::vector<std::vector<Color>> lists, std::vector<Vertex> list_of)
    : base_(std::move(base)), cover_(std::move(cover)), lists_(std::move(lists)), list_of_(std::move(list_of))
{
    list_of_.resize(cover_.vertex_count(), -1);
}

std::size_t DpCover::min_list_size() const noexcept
{
    std::size_t best = lists_.empty() ? 0 : lists_.front().size();
    for (const auto& l : lists_) {
        best = std::min(best, l.size());
    }
    return best;
}

std::size_t DpCover::max_list_size() const noexcept
{
    std::size_t best = 0;
    for (const auto& l : lists_) {
        best = std::max(best, l.size());
    }
    return best;
}

std::string Violation::describe() const
{
    std::ostringstream out;
    switch (kind) {
    case ViolationKind::NotPartition:
        out << "color " << witness.at(0) << " is in " << witness.at(1) << " lists";
        break;
    case ViolationKind::OwnerMismatch:
        out << "color " << witness.at(0) << " is listed by vertex " << witness.at(1) << " but list_of says "
            << witness.at(2);
        break;
    case ViolationKind::ListNotIndependent:
        out << "list of vertex " << witness.at(0) << " is not independent: colors " << witness.at(1) << " and "
            << witness.at(2) << " are adjacent";
        break;
    case ViolationKind::NotMatching:
        out << "not a matching: color " << witness.at(0) << " has neighbors " << witness.at(2) << " and "
            << witness.at(3) << " in the list of vertex " << witness.at(1);
        break;
    case ViolationKind::EdgeOnNonEdge:
        out << "cover edge " << witness.at(0) << "-" << witness.at(1) << " joins lists of non-adjacent vertices "
            << witness.at(2) << " and " << witness.at(3);
        break;
    }
    return out.str();
}

std::vector<Violation> validate(const DpCover& c)
{
    std::vector<Violation> out;
    const auto colors = c.color_count();
    const Graph& h = c.cover();
    const Graph& g = c.base();

    if (c.lists().size() != c.vertex_count()) {
        out.push_back({ViolationKind::NotPartition, {-1, static_cast<std::int64_t>(c.lists().size())}});
        return out;
    }

    std::vector<int> times(colors, 0);
    std::vector<Vertex> lister(colors, -1);
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v) {
        for (Color x : c.list(v)) {
            if (x < 0 || static_cast<std::size_t>(x) >= colors) {
                out.push_back({ViolationKind::NotPartition, {x, 0}});
                continue;
            }
            ++times[x];
            if (lister[x] == -1) {
                lister[x] = v;
            }
        }
    }
    for (Color x = 0; x < static_cast<Color>(colors); ++x) {
        if (times[x] != 1) {
            out.push_back({ViolationKind::NotPartition, {x, times[x]}});
        } else if (c.owner(x) != lister[x]) {
            out.push_back({ViolationKind::OwnerMismatch, {x, lister[x], c.owner(x)}});
        }
    }
    if (!out.empty()) {
        return out; // edge checks below rely on a well-defined owner map
    }

    for (Color a = 0; a < static_cast<Color>(colors); ++a) {
        const Vertex u = c.owner(a);
        for (Color b : h.neighbors(a)) {
            if (a >= b) {
                continue;
            }
            const Vertex v = c.owner(b);
            if (u == v) {
                out.push_back({ViolationKind::ListNotIndependent, {u, a, b}});
            } else if (!g.has_edge(u, v)) {
                out.push_back({ViolationKind::EdgeOnNonEdge, {a, b, u, v}});
            }
        }
    }
    // Matching: each color has at most one neighbor per foreign list.
    std::map<Vertex, Color> seen;
    for (Color a = 0; a < static_cast<Color>(colors); ++a) {
        seen.clear();
        for (Color b : h.neighbors(a)) {
            const Vertex v = c.owner(b);
            if (v == c.owner(a)) {
                continue;
            }
            auto [it, inserted] = seen.emplace(v, b);
            if (!inserted) {
                out.push_back({ViolationKind::NotMatching, {a, v, it->second, b}});
            }
        }
    }
    return out;
}

namespace {

std::string join_violations(const std::vector<Violation>& violations)
{
    std::string msg = "invalid DP-cover (" + std::to_string(violations.size()) + " violations)";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
        msg += "; " + violations[i].describe();
    }
    return msg;
}

} // namespace

InvalidCover::InvalidCover(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations))
{
}

DpCover from_list_assignment(const Graph& g, const std::vector<std::vector<std::int64_t>>& labels)
{
    if (labels.size() != g.vertex_count()) {
        throw PreconditionError("from_list_assignment: need one label set per vertex");
    }
    std::vector<std::vector<std::int64_t>> sorted(labels.size());
    std::vector<std::vector<Color>> lists(labels.size());
    Color next = 0;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        sorted[v] = labels[v];
        std::sort(sorted[v].begin(), sorted[v].end());
        sorted[v].erase(std::unique(sorted[v].begin(), sorted[v].end()), sorted[v].end());
        if (sorted[v].empty()) {
            throw PreconditionError("from_list_assignment: empty list at vertex " + std::to_string(v));
        }
        for (std::size_t i = 0; i < sorted[v].size(); ++i) {
            lists[v].push_back(next++);
        }
    }
    std::vector<Edge> cover_edges;
    for (const auto& [u, v] : g.edges()) {
        // Merge the two sorted label lists.
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < sorted[u].size() && j < sorted[v].size()) {
            if (sorted[u][i] < sorted[v][j]) {
                ++i;
            } else if (sorted[v][j] < sorted[u][i]) {
                ++j;
            } else {
                cover_edges.emplace_back(lists[u][i], lists[v][j]);
                ++i;
                ++j;
            }
        }
    }
    Graph h = Graph::from_edges(static_cast<std::size_t>(next), cover_edges);
    return DpCover(g, std::move(h), std::move(lists));
}

Subcover induced_cover(const DpCover& c, std::span<const Vertex> vertices,
                       const std::vector<std::vector<Color>>& lists, bool drop_empty_matchings)
{
    Subcover out;
    std::vector<Color> color_index(c.color_count(), -1);
    std::vector<Vertex> vertex_index(c.vertex_count(), -1);
    std::vector<std::vector<Color>> new_lists(vertices.size());
    out.vertex_origin.assign(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        vertex_index[vertices[i]] = static_cast<Vertex>(i);
        std::vector<Color> list = lists[i];
        std::sort(list.begin(), list.end());
        for (Color x : list) {
            color_index[x] = static_cast<Color>(out.color_origin.size());
            new_lists[i].push_back(static_cast<Color>(out.color_origin.size()));
            out.color_origin.push_back(x);
        }
    }
    std::vector<Edge> cover_edges;
    std::vector<Edge> carrying;
    for (std::size_t a = 0; a < out.color_origin.size(); ++a) {
        for (Color y : c.cover().neighbors(out.color_origin[a])) {
            const Color b = color_index[y];
            if (b > static_cast<Color>(a)) {
                cover_edges.emplace_back(static_cast<Color>(a), b);
                if (drop_empty_matchings) {
                    Vertex u = vertex_index[c.owner(out.color_origin[a])];
                    Vertex v = vertex_index[c.owner(y)];
                    carrying.emplace_back(std::min(u, v), std::max(u, v));
                }
            }
        }
    }
    Graph base;
    if (drop_empty_matchings) {
        base = Graph::from_edges_dedup(vertices.size(), std::move(carrying));
    } else {
        base = induced_subgraph(c.base(), vertices);
    }
    Graph h = Graph::from_edges(out.color_origin.size(), cover_edges);
    out.cover = DpCover(std::move(base), std::move(h), std::move(new_lists));
    return out;
}

Subcover trim(const DpCover& c, std::size_t ell)
{
    std::vector<Vertex> vertices(c.vertex_count());
    std::iota(vertices.begin(), vertices.end(), 0);
    std::vector<std::vector<Color>> lists(c.vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v) {
        const auto list = c.list(v);
        if (list.size() < ell) {
            throw PreconditionError("trim: list of vertex " + std::to_string(v) + " has " +
                                    std::to_string(list.size()) + " colors, fewer than " + std::to_string(ell));
        }
        std::vector<Color> sorted(list.begin(), list.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.resize(ell);
        lists[v] = std::move(sorted);
    }
    return induced_cover(c, vertices, lists, true);
}

Subcover residual(const DpCover& c, const PartialColoring& phi, const std::vector<std::vector<Color>>& kept)
{
    if (phi.size() != c.vertex_count() || kept.size() != c.vertex_count()) {
        throw PreconditionError("residual: coloring and kept sets must cover every base vertex");
    }
    std::vector<Vertex> uncolored;
    std::vector<std::vector<Color>> lists;
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v) {
        const auto list = c.list(v);
        if (phi.colored(v)) {
            if (std::find(list.begin(), list.end(), phi[v]) == list.end()) {
                throw PreconditionError("residual: vertex " + std::to_string(v) + " colored outside its list");
            }
            continue;
        }
        for (Color x : kept[v]) {
            if (std::find(list.begin(), list.end(), x) == list.end()) {
                throw PreconditionError("residual: kept color " + std::to_string(x) + " not in list of vertex " +
                                        std::to_string(v));
            }
        }
        uncolored.push_back(v);
        lists.push_back(kept[v]);
    }
    return induced_cover(c, uncolored, lists, false);
}

AuxiliaryGraphError::AuxiliaryGraphError(std::size_t degree, std::size_t attempts)
    : Error("no " + std::to_string(degree) + "-regular graph of girth >= 5 found after " + std::to_string(attempts) +
            " attempts"),
      degree_(degree), attempts_(attempts)
{
}

Graph auxiliary_girth5_graph(std::size_t degree, Seed seed, const RegularizeOptions& options)
{
    if (degree == 0) {
        return Graph(1);
    }
    if (degree == 1) {
        const Edge e{0, 1};
        return Graph::from_edges(2, std::span(&e, 1));
    }
    if (degree == 2) {
        const std::vector<Edge> c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
        return Graph::from_edges(5, c5);
    }
    std::size_t n = std::max<std::size_t>(degree * degree + 2, 50);
    if ((n * degree) % 2 != 0) {
        ++n;
    }
    std::size_t attempts = 0;
    Girth5Options g5;
    g5.rejection_attempts = options.aux_attempts;
    for (std::size_t round = 0; round <= options.aux_doublings; ++round, n *= 2) {
        try {
            return random_girth5_regular(n, degree, derive_seed(seed, round), g5);
        } catch (const BudgetExceeded&) {
            attempts += options.aux_attempts;
        }
    }
    throw AuxiliaryGraphError(degree, attempts);
}

DpCover regularize(const DpCover& c, std::size_t d, std::size_t s, std::size_t t, Seed seed,
                   const RegularizeOptions& options)
{
    const Graph& h = c.cover();
    if (max_degree(h) > d) {
        throw PreconditionError("regularize: cover has a color of degree above d = " + std::to_string(d));
    }
    double work = 0;
    for (Color x = 0; x < static_cast<Color>(c.color_count()); ++x) {
        work += binomial(static_cast<double>(h.degree(x)), static_cast<double>(s));
    }
    if (work <= options.kst_budget && contains_kst(h, s, t, options.kst_budget)) {
        throw PreconditionError("regularize: cover graph contains K_{" + std::to_string(s) + "," +
                                std::to_string(t) + "}");
    }

    const std::size_t colors = c.color_count();
    const std::size_t n = c.vertex_count();
    std::size_t deficiency = 0;
    std::vector<Color> deficient; // X, ascending ids
    for (Color x = 0; x < static_cast<Color>(colors); ++x) {
        deficiency += d - h.degree(x);
        if (h.degree(x) < d) {
            deficient.push_back(x);
        }
    }
    if (deficiency == 0) {
        return c;
    }

    const Graph aux = auxiliary_girth5_graph(deficiency, seed, options);
    const std::size_t k = aux.vertex_count();

    std::vector<Edge> base_edges;
    std::vector<Edge> cover_edges;
    std::vector<std::vector<Color>> lists(k * n);
    const auto g_edges = c.base().edges();
    const auto h_edges = h.edges();
    base_edges.reserve(k * g_edges.size() + aux.edge_count());
    cover_edges.reserve(k * h_edges.size() + aux.edge_count());
    for (std::size_t i = 0; i < k; ++i) {
        const auto vo = static_cast<Vertex>(i * n);
        const auto co = static_cast<Color>(i * colors);
        for (const auto& [u, v] : g_edges) {
            base_edges.emplace_back(u + vo, v + vo);
        }
        for (const auto& [a, b] : h_edges) {
            cover_edges.emplace_back(a + co, b + co);
        }
        for (std::size_t v = 0; v < n; ++v) {
            for (Color x : c.list(static_cast<Vertex>(v))) {
                lists[i * n + v].push_back(x + co);
            }
        }
    }

    // X_i is the same ascending list in every copy; a cursor marks its head.
    std::vector<std::size_t> cursor(k, 0);
    std::vector<std::size_t> degree(k * colors);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t x = 0; x < colors; ++x) {
            degree[i * colors + x] = h.degree(static_cast<Color>(x));
        }
    }
    auto take = [&](std::size_t copy) -> Color {
        if (cursor[copy] >= deficient.size()) {
            throw Error("regularize: deficiency of copy " + std::to_string(copy) + " exhausted");
        }
        const Color x = deficient[cursor[copy]];
        if (++degree[copy * colors + x] == d) {
            ++cursor[copy];
        }
        return x;
    };
    for (const auto& [i, j] : aux.edges()) {
        const Color a = take(i);
        const Color b = take(j);
        cover_edges.emplace_back(static_cast<Color>(i * colors) + a, static_cast<Color>(j * colors) + b);
        base_edges.emplace_back(static_cast<Vertex>(i * n) + c.owner(a), static_cast<Vertex>(j * n) + c.owner(b));
    }

    Graph base = Graph::from_edges(k * n, base_edges);
    Graph cover = Graph::from_edges(k * colors, cover_edges);
    return DpCover(std::move(base), std::move(cover), std::move(lists));
}

} // namespace dpc
