#include "dpc/generators.hpp"

#include "dpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace dpc {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v)
{
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

// One pairing-model run. Returns false when no suitable pair remains.
bool try_pairing(std::size_t n, std::size_t d, Stream& rng, std::vector<Edge>& edges)
{
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v) {
        points.insert(points.end(), d, static_cast<Vertex>(v));
    }
    edges.clear();
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * d);
    auto suitable = [&](Vertex a, Vertex b) { return a != b && !present.contains(edge_key(a, b)); };

    while (!points.empty()) {
        const std::size_t k = points.size();
        std::size_t misses = 0;
        bool paired = false;
        while (misses < 64) {
            const auto i = static_cast<std::size_t>(rng.index(k));
            const auto j = static_cast<std::size_t>(rng.index(k));
            if (i != j && suitable(points[i], points[j])) {
                edges.emplace_back(points[i], points[j]);
                present.insert(edge_key(points[i], points[j]));
                const auto hi = std::max(i, j);
                const auto lo = std::min(i, j);
                points[hi] = points.back();
                points.pop_back();
                points[lo] = points.back();
                points.pop_back();
                paired = true;
                break;
            }
            ++misses;
        }
        if (paired) {
            continue;
        }
        // Many misses: enumerate suitable pairs and pick one uniformly.
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (suitable(points[i], points[j])) {
                    options.emplace_back(i, j);
                }
            }
        }
        if (options.empty()) {
            return false;
        }
        const auto [lo, hi] = options[rng.index(options.size())];
        edges.emplace_back(points[lo], points[hi]);
        present.insert(edge_key(points[lo], points[hi]));
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
    }
    return true;
}

void check_regular_params(std::size_t n, std::size_t d)
{
    if ((n * d) % 2 != 0) {
        throw PreconditionError("regular graph needs n*d even (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                                ")");
    }
    if (d >= n && !(n == 0 && d == 0)) {
        throw PreconditionError("regular graph needs d < n (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                                ")");
    }
}

// Mutable adjacency for swap repair.
class AdjSets {
public:
    explicit AdjSets(const Graph& g) : adj_(g.vertex_count())
    {
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            const auto nb = g.neighbors(v);
            adj_[v].assign(nb.begin(), nb.end());
        }
        marks_.assign(adj_.size(), 0);
    }

    bool has(Vertex u, Vertex v) const
    {
        return std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
    }

    void remove(Vertex u, Vertex v)
    {
        erase_one(adj_[u], v);
        erase_one(adj_[v], u);
    }

    void add(Vertex u, Vertex v)
    {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    /// True iff edge uv lies on a 3-cycle or a 4-cycle.
    bool on_short_cycle(Vertex u, Vertex v)
    {
        ++stamp_;
        for (Vertex x : adj_[u]) {
            if (x != v) {
                marks_[x] = stamp_;
            }
        }
        for (Vertex y : adj_[v]) {
            if (y == u) {
                continue;
            }
            if (marks_[y] == stamp_) {
                return true;
            }
            for (Vertex z : adj_[y]) {
                if (z != v && z != u && marks_[z] == stamp_) {
                    return true;
                }
            }
        }
        return false;
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (Vertex u = 0; u < static_cast<Vertex>(adj_.size()); ++u) {
            for (Vertex v : adj_[u]) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

private:
    static void erase_one(std::vector<Vertex>& list, Vertex x)
    {
        auto it = std::find(list.begin(), list.end(), x);
        *it = list.back();
        list.pop_back();
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint32_t> marks_;
    std::uint32_t stamp_ = 0;
};

// Breaks every 3- and 4-cycle of g by double-edge swaps ab, ce -> ac, be that
// put neither new edge on a short cycle. The number of short cycles never
// increases.
std::optional<Graph> swap_repair(const Graph& g, Stream& rng, std::size_t budget)
{
    AdjSets adj(g);
    std::vector<Edge> bad;
    for (const auto& [u, v] : g.edges()) {
        if (adj.on_short_cycle(u, v)) {
            bad.push_back({u, v});
        }
    }
    const auto n = g.vertex_count();
    std::size_t spent = 0;
    while (!bad.empty()) {
        const auto pick = static_cast<std::size_t>(rng.index(bad.size()));
        const auto [a, b] = bad[pick];
        if (!adj.has(a, b) || !adj.on_short_cycle(a, b)) {
            bad[pick] = bad.back();
            bad.pop_back();
            continue;
        }
        if (++spent > budget) {
            return std::nullopt;
        }
        const auto c = static_cast<Vertex>(rng.index(n));
        const auto& nc = adj.neighbors(c);
        if (nc.empty()) {
            continue;
        }
        const Vertex e = nc[rng.index(nc.size())];
        // Orient so the new edges are ac and be.
        if (c == a || c == b || e == a || e == b || adj.has(a, c) || adj.has(b, e)) {
            continue;
        }
        adj.remove(a, b);
        adj.remove(c, e);
        adj.add(a, c);
        adj.add(b, e);
        if (adj.on_short_cycle(a, c) || adj.on_short_cycle(b, e)) {
            adj.remove(a, c);
            adj.remove(b, e);
            adj.add(a, b);
            adj.add(c, e);
        }
    }
    return Graph::from_edges(n, adj.edges());
}

// Arithmetic in GF(2^k) for 2 <= k <= 8.
class Gf2k {
public:
    explicit Gf2k(unsigned k) : k_(k)
    {
        static constexpr unsigned kModulus[] = {0, 0, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11B};
        modulus_ = kModulus[k];
    }

    unsigned mul(unsigned a, unsigned b) const
    {
        unsigned r = 0;
        while (b != 0) {
            if ((b & 1U) != 0) {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if ((a >> k_) != 0) {
                a ^= modulus_;
            }
        }
        return r;
    }

private:
    unsigned k_;
    unsigned modulus_;
};

std::optional<unsigned> power_of_two_exponent(std::size_t d)
{
    for (unsigned k = 2; k <= 8; ++k) {
        if (d == (std::size_t{1} << k)) {
            return k;
        }
    }
    return std::nullopt;
}

bool algebraic_applicable(std::size_t n, std::size_t d)
{
    if (!power_of_two_exponent(d) || n > 2 * d * d) {
        return false;
    }
    const std::size_t gap = 2 * d * d - n;
    return gap % 8 == 0 && gap / 8 <= d / 4;
}

// Biaffine plane over GF(q), q = d: points (x, y), lines [m, b], with (x, y)
// on [m, b] iff y = m x + b. Removing 4j points on one vertical and 4j lines
// of one slope, both as unions of cosets of an additive subgroup W of order
// 4, leaves a perfect matching of deficient points and one of deficient
// lines, which are added back as edges.
Graph biaffine_girth5(std::size_t n, std::size_t d, Stream& rng)
{
    const unsigned k = *power_of_two_exponent(d);
    const Gf2k field(k);
    const unsigned q = static_cast<unsigned>(d);
    const std::size_t cosets = (2 * d * d - n) / 8;

    const auto x0 = static_cast<unsigned>(rng.index(q));
    const auto m0 = static_cast<unsigned>(rng.index(q));
    const auto s = static_cast<unsigned>(1 + rng.index(q - 1));
    unsigned t = s;
    while (t == s) {
        t = static_cast<unsigned>(1 + rng.index(q - 1));
    }
    // Coset representatives modulo W = {0, s, t, s^t}.
    auto coset_of = [&](unsigned y) { return std::min({y, y ^ s, y ^ t, y ^ s ^ t}); };
    std::vector<unsigned> reps;
    for (unsigned y = 0; y < q; ++y) {
        if (coset_of(y) == y) {
            reps.push_back(y);
        }
    }
    auto pick_union = [&]() {
        std::vector<unsigned> r = reps;
        rng.shuffle(std::span(r));
        std::vector<char> in(q, 0);
        for (std::size_t i = 0; i < cosets; ++i) {
            for (unsigned y : {r[i], r[i] ^ s, r[i] ^ t, r[i] ^ s ^ t}) {
                in[y] = 1;
            }
        }
        return in;
    };
    const std::vector<char> removed_y = pick_union(); // points (x0, y)
    const std::vector<char> removed_b = pick_union(); // lines [m0, b]

    auto point_id = [&](unsigned x, unsigned y) { return static_cast<std::size_t>(x) * q + y; };
    auto line_id = [&](unsigned m, unsigned b) { return static_cast<std::size_t>(q) * q + m * q + b; };
    auto point_alive = [&](unsigned x, unsigned y) { return !(x == x0 && removed_y[y] != 0); };
    auto line_alive = [&](unsigned m, unsigned b) { return !(m == m0 && removed_b[b] != 0); };

    std::vector<std::pair<std::size_t, std::size_t>> raw;
    for (unsigned m = 0; m < q; ++m) {
        for (unsigned b = 0; b < q; ++b) {
            if (!line_alive(m, b)) {
                continue;
            }
            for (unsigned x = 0; x < q; ++x) {
                const unsigned y = field.mul(m, x) ^ b;
                if (point_alive(x, y)) {
                    raw.emplace_back(point_id(x, y), line_id(m, b));
                }
            }
            // The line lost its point on the vertical x = x0.
            const unsigned y0 = field.mul(m, x0) ^ b;
            if (removed_y[y0] != 0 && b < (b ^ t)) {
                raw.emplace_back(line_id(m, b), line_id(m, b ^ t));
            }
        }
    }
    for (unsigned x = 0; x < q; ++x) {
        for (unsigned y = 0; y < q; ++y) {
            if (!point_alive(x, y)) {
                continue;
            }
            // The point lost its line of slope m0.
            const unsigned b = y ^ field.mul(m0, x);
            if (removed_b[b] != 0 && y < (y ^ s)) {
                raw.emplace_back(point_id(x, y), point_id(x, y ^ s));
            }
        }
    }

    // Compact the surviving ids, then relabel uniformly at random.
    std::vector<Vertex> index(2 * static_cast<std::size_t>(q) * q, -1);
    for (unsigned x = 0; x < q; ++x) {
        for (unsigned y = 0; y < q; ++y) {
            if (point_alive(x, y)) {
                index[point_id(x, y)] = 0;
            }
            if (line_alive(x, y)) {
                index[line_id(x, y)] = 0;
            }
        }
    }
    Vertex next = 0;
    for (auto& id : index) {
        if (id == 0) {
            id = next++;
        }
    }
    std::vector<Vertex> perm(static_cast<std::size_t>(next));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span(perm));
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        edges.emplace_back(perm[index[a]], perm[index[b]]);
    }
    return Graph::from_edges(static_cast<std::size_t>(next), edges);
}

bool is_girth5_regular(const Graph& g, std::size_t d)
{
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        if (g.degree(v) != d) {
            return false;
        }
    }
    const auto gi = girth(g);
    return !gi || *gi >= 5;
}

} // namespace

Graph random_regular(std::size_t n, std::size_t d, Seed seed, std::size_t max_restarts)
{
    check_regular_params(n, d);
    Stream rng(seed);
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt <= max_restarts; ++attempt) {
        if (try_pairing(n, d, rng, edges)) {
            return Graph::from_edges(n, edges);
        }
    }
    throw BudgetExceeded("random_regular: pairing got stuck " + std::to_string(max_restarts + 1) + " times");
}

std::string to_string(Girth5Method m)
{
    switch (m) {
    case Girth5Method::Rejection:
        return "rejection";
    case Girth5Method::Swaps:
        return "swaps";
    case Girth5Method::Algebraic:
        return "algebraic";
    }
    return "unknown";
}

Girth5Sample sample_girth5_regular(std::size_t n, std::size_t d, Seed seed, const Girth5Options& options)
{
    check_regular_params(n, d);
    if (d >= 2 && n <= d * d) {
        throw PreconditionError("girth-5 regular graph needs n > d^2 (n=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
    }
    Stream rng(seed);
    Girth5Sample out;

    // Expected number of 3- and 4-cycles in the pairing model.
    const double dm1 = static_cast<double>(d) - 1.0;
    const double short_cycles = std::pow(dm1, 3) / 6.0 + std::pow(dm1, 4) / 8.0;
    const std::size_t reject_attempts = std::max(
        options.rejection_attempts,
        static_cast<std::size_t>(options.rejection_work / static_cast<double>(std::max<std::size_t>(n * d, 1))));
    const double reject_success = std::exp(-short_cycles) * static_cast<double>(reject_attempts);
    if (reject_success >= 0.01) {
        for (std::size_t i = 0; i < reject_attempts; ++i) {
            ++out.attempts;
            Graph g = random_regular(n, d, rng.next());
            if (is_girth5_regular(g, d)) {
                out.graph = std::move(g);
                out.method = Girth5Method::Rejection;
                return out;
            }
        }
    }
    if (static_cast<double>(d) * d * dm1 < 2.0 * static_cast<double>(n)) {
        for (int i = 0; i < 3; ++i) {
            ++out.attempts;
            const Graph start = random_regular(n, d, rng.next());
            auto repaired = swap_repair(start, rng, options.swap_attempts_per_edge * start.edge_count() + 1000);
            if (repaired && is_girth5_regular(*repaired, d)) {
                out.graph = std::move(*repaired);
                out.method = Girth5Method::Swaps;
                return out;
            }
        }
    }
    if (options.algebraic_fallback && algebraic_applicable(n, d)) {
        for (int i = 0; i < 16; ++i) {
            ++out.attempts;
            Graph g = biaffine_girth5(n, d, rng);
            if (is_girth5_regular(g, d)) {
                out.graph = std::move(g);
                out.method = Girth5Method::Algebraic;
                return out;
            }
        }
    }
    throw BudgetExceeded("no " + std::to_string(d) + "-regular girth-5 graph on " + std::to_string(n) +
                         " vertices after " + std::to_string(out.attempts) + " samples");
}

Graph random_girth5_regular(std::size_t n, std::size_t d, Seed seed, const Girth5Options& options)
{
    return sample_girth5_regular(n, d, seed, options).graph;
}

DpCover random_dp_cover(const Graph& g, std::size_t ell, double rho, Seed seed)
{
    if (ell == 0) {
        throw PreconditionError("random_dp_cover: ell must be positive");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw PreconditionError("random_dp_cover: rho must lie in [0, 1]");
    }
    const auto n = g.vertex_count();
    std::vector<std::vector<Color>> lists(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < ell; ++i) {
            lists[v].push_back(static_cast<Color>(v * ell + i));
        }
    }
    std::vector<Edge> cover_edges;
    std::vector<Color> perm(ell);
    std::uint64_t index = 0;
    for (const auto& [u, v] : g.edges()) {
        Stream rng(derive_seed(seed, index++));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(std::span(perm));
        for (std::size_t i = 0; i < ell; ++i) {
            if (rng.bernoulli(rho)) {
                cover_edges.emplace_back(static_cast<Color>(u * ell + i), static_cast<Color>(v * ell) + perm[i]);
            }
        }
    }
    Graph h = Graph::from_edges(n * ell, cover_edges);
    return DpCover(g, std::move(h), std::move(lists));
}

DpCover list_cover(const Graph& g, std::size_t ell, std::size_t palette, Seed seed)
{
    if (ell == 0 || palette < ell) {
        throw PreconditionError("list_cover: need 1 <= ell <= palette");
    }
    std::vector<std::vector<std::int64_t>> labels(g.vertex_count());
    std::vector<std::int64_t> all(palette);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Stream rng(derive_seed(seed, v));
        std::iota(all.begin(), all.end(), 0);
        // Partial Fisher-Yates: the first ell entries form a uniform subset.
        for (std::size_t i = 0; i < ell; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.index(palette - i));
            std::swap(all[i], all[j]);
        }
        labels[v].assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(ell));
    }
    return from_list_assignment(g, labels);
}

Graph kst_free_bipartite(std::size_t m, std::size_t n, std::size_t s, std::size_t t, Seed seed)
{
    if (n < 1 || m < n || s < 1 || t < 1) {
        throw PreconditionError("kst_free_bipartite: requires m >= n >= 1 and s, t >= 1");
    }
    std::vector<std::vector<Vertex>> adj(m + n); // kept sorted
    std::vector<std::pair<Vertex, Vertex>> candidates;
    candidates.reserve(m * n);
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            candidates.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(m + y));
        }
    }
    Stream rng(seed);
    rng.shuffle(std::span(candidates));

    std::vector<Vertex> subset(s - 1);
    std::vector<std::size_t> pos(s - 1);
    std::vector<Vertex> common;
    std::vector<Vertex> tmp;
    // Adding xy completes a forbidden K_{s,t} iff some (s-1)-set S of N(y)
    // has, together with x, at least t-1 common neighbors other than y.
    auto creates_kst = [&](Vertex x, Vertex y) {
        const auto& ny = adj[y];
        const std::size_t k = s - 1;
        if (k > ny.size()) {
            return false;
        }
        for (std::size_t i = 0; i < k; ++i) {
            pos[i] = i;
        }
        while (true) {
            common = adj[x];
            for (std::size_t i = 0; i < k && common.size() + 1 >= t; ++i) {
                const auto& nb = adj[ny[pos[i]]];
                tmp.clear();
                std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(tmp));
                common.swap(tmp);
            }
            if (common.size() + 1 >= t) {
                return true;
            }
            std::size_t i = k;
            while (i > 0 && pos[i - 1] == ny.size() - k + (i - 1)) {
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
    };
    auto insert_sorted = [](std::vector<Vertex>& list, Vertex v) {
        list.insert(std::upper_bound(list.begin(), list.end(), v), v);
    };
    std::vector<Edge> edges;
    for (const auto& [x, y] : candidates) {
        if (!creates_kst(x, y)) {
            insert_sorted(adj[x], y);
            insert_sorted(adj[y], x);
            edges.emplace_back(x, y);
        }
    }
    Graph g = Graph::from_edges(m + n, edges);
    std::vector<Vertex> left(m);
    std::vector<Vertex> right(n);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), static_cast<Vertex>(m));
    // Work is sum over y of C(deg y, s), far below the guard's product.
    if (contains_kst(g, left, right, s, t, std::numeric_limits<double>::infinity())) {
        throw Error("kst_free_bipartite: generated graph contains K_{s,t}");
    }
    return g;
}

std::string to_string(GenKind k)
{
    switch (k) {
    case GenKind::Regular:
        return "regular";
    case GenKind::Girth5Regular:
        return "girth5_regular";
    case GenKind::DpCover:
        return "dp_cover";
    case GenKind::ListCover:
        return "list_cover";
    case GenKind::KstFreeBipartite:
        return "kst_free_bipartite";
    }
    return "unknown";
}

GenKind gen_kind_from_string(const std::string& name)
{
    for (GenKind k : {GenKind::Regular, GenKind::Girth5Regular, GenKind::DpCover, GenKind::ListCover,
                      GenKind::KstFreeBipartite}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw PreconditionError("unknown generator kind '" + name + "'");
}

Instance generate(const GenSpec& spec)
{
    switch (spec.kind) {
    case GenKind::Regular:
        return random_regular(spec.n, spec.d, spec.seed);
    case GenKind::Girth5Regular:
        return random_girth5_regular(spec.n, spec.d, spec.seed);
    case GenKind::DpCover:
    case GenKind::ListCover: {
        const Seed base_seed = derive_seed(spec.seed, 0);
        const Graph base = spec.girth5_base ? random_girth5_regular(spec.n, spec.d, base_seed)
                                            : random_regular(spec.n, spec.d, base_seed);
        if (spec.kind == GenKind::DpCover) {
            return random_dp_cover(base, spec.ell, spec.rho, derive_seed(spec.seed, 1));
        }
        return list_cover(base, spec.ell, spec.palette == 0 ? spec.ell : spec.palette, derive_seed(spec.seed, 1));
    }
    case GenKind::KstFreeBipartite:
        return kst_free_bipartite(spec.m, spec.n, spec.s, spec.t, spec.seed);
    }
    throw PreconditionError("unknown generator kind");
}

} // namespace dpc
