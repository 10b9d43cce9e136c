#include "dpc/graph.hpp"

#include "dpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace dpc {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges)
{
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
            throw PreconditionError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") out of range for " + std::to_string(n) + " vertices");
        }
        if (u == v) {
            throw PreconditionError("self-loop at vertex " + std::to_string(u));
        }
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.offsets_[i + 1] += g.offsets_[i];
    }
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.targets_[fill[u]++] = v;
        g.targets_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            throw PreconditionError("duplicate edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
        }
    }
    return g;
}

Graph Graph::from_edges_dedup(std::size_t n, std::vector<Edge> edges)
{
    for (auto& e : edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return from_edges(n, edges);
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept
{
    if (degree(u) > degree(v)) {
        std::swap(u, v);
    }
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < static_cast<Vertex>(vertex_count()); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::size_t max_degree(const Graph& g) noexcept
{
    std::size_t best = 0;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        best = std::max(best, g.degree(v));
    }
    return best;
}

std::optional<std::size_t> girth(const Graph& g)
{
    const auto n = g.vertex_count();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t best = kNone;
    std::vector<std::size_t> dist(n, kNone);
    std::vector<Vertex> parent(n, -1);
    std::vector<Vertex> queue;
    queue.reserve(n);

    for (Vertex root = 0; root < static_cast<Vertex>(n); ++root) {
        queue.clear();
        queue.push_back(root);
        dist[root] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            // Any cycle found from here on has length >= 2 * dist[u] + 1.
            if (best != kNone && 2 * dist[u] + 1 >= best) {
                break;
            }
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == kNone) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
        for (Vertex v : queue) {
            dist[v] = kNone;
            parent[v] = -1;
        }
    }
    if (best == kNone) {
        return std::nullopt;
    }
    return best;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep)
{
    std::vector<Vertex> index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        index[keep[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (Vertex w : g.neighbors(keep[i])) {
            const Vertex j = index[w];
            if (j > static_cast<Vertex>(i)) {
                edges.emplace_back(static_cast<Vertex>(i), j);
            }
        }
    }
    return Graph::from_edges(keep.size(), edges);
}

double binomial(double n, double k) noexcept
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (double i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

namespace {

// Calls visit(subset) for every k-subset of items, in lexicographic order of
// positions. Stops early when visit returns true.
template <class Visit>
bool for_each_subset(std::span<const Vertex> items, std::size_t k, std::vector<Vertex>& subset, Visit&& visit)
{
    const std::size_t n = items.size();
    if (k > n) {
        return false;
    }
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) {
        pos[i] = i;
    }
    subset.resize(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) {
            subset[i] = items[pos[i]];
        }
        if (visit(subset)) {
            return true;
        }
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == n - k + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

// Number of common neighbors of `set`, optionally restricted to `mask`.
std::size_t common_neighbor_count(const Graph& g, std::span<const Vertex> set, const std::vector<char>* mask,
                                  std::vector<Vertex>& scratch, std::vector<Vertex>& tmp)
{
    const auto first = g.neighbors(set[0]);
    scratch.assign(first.begin(), first.end());
    for (std::size_t i = 1; i < set.size() && !scratch.empty(); ++i) {
        const auto nb = g.neighbors(set[i]);
        tmp.clear();
        std::set_intersection(scratch.begin(), scratch.end(), nb.begin(), nb.end(), std::back_inserter(tmp));
        scratch.swap(tmp);
    }
    if (mask == nullptr) {
        return scratch.size();
    }
    return static_cast<std::size_t>(
        std::count_if(scratch.begin(), scratch.end(), [&](Vertex v) { return (*mask)[v] != 0; }));
}

} // namespace

bool contains_kst(const Graph& g, std::span<const Vertex> left, std::span<const Vertex> right, std::size_t s,
                  std::size_t t, double budget)
{
    if (s == 0 || t == 0) {
        throw PreconditionError("contains_kst: s and t must be positive");
    }
    const auto n = g.vertex_count();
    std::vector<char> in_left(n, 0);
    std::vector<char> in_right(n, 0);
    for (Vertex v : left) {
        in_left.at(v) = 1;
    }
    for (Vertex v : right) {
        if (in_left.at(v) != 0) {
            throw PreconditionError("contains_kst: left and right sides overlap at vertex " + std::to_string(v));
        }
        in_right[v] = 1;
    }
    const double work = binomial(static_cast<double>(left.size()), static_cast<double>(s)) *
                        binomial(static_cast<double>(right.size()), static_cast<double>(t));
    if (work > budget) {
        throw BudgetExceeded("contains_kst: enumeration size " + std::to_string(work) + " exceeds budget " +
                             std::to_string(budget));
    }
    // An s-set in `left` with t common neighbors in `right` lies inside the
    // neighborhood of each of those neighbors, so branching on w in `right`
    // and on s-subsets of N(w) cap left covers every candidate.
    std::vector<Vertex> candidates;
    std::vector<Vertex> subset;
    std::vector<Vertex> scratch;
    std::vector<Vertex> tmp;
    for (Vertex w : right) {
        candidates.clear();
        for (Vertex x : g.neighbors(w)) {
            if (in_left[x] != 0) {
                candidates.push_back(x);
            }
        }
        const bool found = for_each_subset(candidates, s, subset, [&](std::span<const Vertex> set) {
            return common_neighbor_count(g, set, &in_right, scratch, tmp) >= t;
        });
        if (found) {
            return true;
        }
    }
    return false;
}

bool contains_kst(const Graph& g, std::size_t s, std::size_t t, double budget)
{
    if (s == 0 || t == 0) {
        throw PreconditionError("contains_kst: s and t must be positive");
    }
    double work = 0;
    for (Vertex w = 0; w < static_cast<Vertex>(g.vertex_count()); ++w) {
        work += binomial(static_cast<double>(g.degree(w)), static_cast<double>(s));
    }
    if (work > budget) {
        throw BudgetExceeded("contains_kst: " + std::to_string(work) + " candidate sets exceed budget " +
                             std::to_string(budget));
    }
    std::vector<Vertex> subset;
    std::vector<Vertex> scratch;
    std::vector<Vertex> tmp;
    for (Vertex w = 0; w < static_cast<Vertex>(g.vertex_count()); ++w) {
        const bool found = for_each_subset(g.neighbors(w), s, subset, [&](std::span<const Vertex> set) {
            return common_neighbor_count(g, set, nullptr, scratch, tmp) >= t;
        });
        if (found) {
            return true;
        }
    }
    return false;
}

double kst_edge_bound(double m, double n, double s, double t)
{
    if (n < 1 || m < n || s < 1 || t < 1) {
        throw PreconditionError("kst_edge_bound: requires m >= n >= 1 and s, t >= 1");
    }
    return std::pow(s, 1.0 / t) * std::pow(m, 1.0 - 1.0 / t) * n + t * m;
}

Graph read_edge_list(std::istream& in)
{
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "p") {
            long long count = -1;
            if (n || !(fields >> count) || count < 0) {
                throw ParseError("edge list line " + std::to_string(line_no) + ": bad 'p' header");
            }
            n = static_cast<std::size_t>(count);
        } else if (tag == "e") {
            long long u = -1;
            long long v = -1;
            if (!n || !(fields >> u >> v)) {
                throw ParseError("edge list line " + std::to_string(line_no) + ": bad edge");
            }
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } else {
            throw ParseError("edge list line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
        }
    }
    if (!n) {
        throw ParseError("edge list: missing 'p' header");
    }
    try {
        return Graph::from_edges(*n, edges);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("edge list: ") + e.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    out << "p " << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << "e " << u << ' ' << v << '\n';
    }
}

} // namespace dpc
