#include "dpc/analysis.hpp"

#include "dpc/error.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dpc {

ProperCheck verify_proper(const DpCover& c, const PartialColoring& phi)
{
    if (phi.size() != c.vertex_count()) {
        throw PreconditionError("verify_proper: coloring size does not match the base graph");
    }
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v) {
        if (phi.colored(v)) {
            const Color a = phi[v];
            if (a < 0 || static_cast<std::size_t>(a) >= c.color_count() || c.owner(a) != v) {
                throw PreconditionError("verify_proper: vertex " + std::to_string(v) + " has unlisted color " +
                                        std::to_string(a));
            }
        }
    }
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()); ++v) {
        if (!phi.colored(v)) {
            continue;
        }
        const Color a = phi[v];
        for (Color b : c.cover().neighbors(a)) {
            const Vertex u = c.owner(b);
            if (phi[u] == b) {
                return {false, Conflict{v, u, a, b}};
            }
        }
    }
    return {};
}

StructureReport classify_structure(const Graph& cover, Color anchor, std::size_t d, std::size_t t)
{
    if (anchor < 0 || static_cast<std::size_t>(anchor) >= cover.vertex_count()) {
        throw PreconditionError("classify_structure: anchor out of range");
    }
    if (cover.degree(anchor) > d || t == 0) {
        throw PreconditionError("classify_structure: anchor degree exceeds d or t = 0");
    }
    StructureReport r;
    r.anchor = anchor;
    r.d = d;
    r.t = t;
    const double td = static_cast<double>(t);
    r.delta = 1.0 / (3.0 * td);
    r.beta1 = 1.0 / (20.0 * td);
    r.beta2 = 1.0 / (15.0 * td);
    r.delta2 = 1.0 / (10.0 * td);
    r.tau = 4.0 / (9.0 * td);
    const double dd = static_cast<double>(d);
    r.threshold = std::pow(dd, 1.0 - r.delta);
    r.sad_bound = std::pow(dd, 1.0 - r.beta2);

    // common[x] = |N(x) cap N(anchor)|.
    std::vector<std::size_t> common(cover.vertex_count(), 0);
    for (Color mid : cover.neighbors(anchor)) {
        for (Color x : cover.neighbors(mid)) {
            if (x != anchor && common[x]++ == 0) {
                r.second_neighborhood.push_back(x);
            }
        }
    }
    std::sort(r.second_neighborhood.begin(), r.second_neighborhood.end());
    std::vector<char> is_bad(cover.vertex_count(), 0);
    for (Color x : r.second_neighborhood) {
        if (static_cast<double>(common[x]) >= r.threshold) {
            r.bad.push_back(x);
            is_bad[x] = 1;
        } else {
            r.good.push_back(x);
        }
    }
    for (Color mid : cover.neighbors(anchor)) {
        const auto bad_neighbors = std::count_if(cover.neighbors(mid).begin(), cover.neighbors(mid).end(),
                                                 [&](Color x) { return is_bad[x] != 0; });
        if (static_cast<double>(bad_neighbors) >= r.threshold) {
            r.sad.push_back(mid);
        } else {
            r.happy.push_back(mid);
        }
    }
    r.sad_within_bound = static_cast<double>(r.sad.size()) <= r.sad_bound;
    return r;
}

namespace {

double mean_of(std::uint64_t sum, std::size_t n)
{
    return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

double variance_of(std::uint64_t sum, std::uint64_t sq, std::size_t n)
{
    if (n < 2) {
        return 0.0;
    }
    const double m = static_cast<double>(sum) / static_cast<double>(n);
    const double v = (static_cast<double>(sq) - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::max(v, 0.0);
}

} // namespace

double RoundStats::kept_mean(Vertex v) const { return mean_of(kept_sum[v], trials); }
double RoundStats::kept_variance(Vertex v) const { return variance_of(kept_sum[v], kept_sq[v], trials); }
double RoundStats::degree_mean(Color c) const { return mean_of(degree_sum[c], trials); }
double RoundStats::degree_variance(Color c) const { return variance_of(degree_sum[c], degree_sq[c], trials); }

RoundStats round_stats(const DpCover& c, const RoundParams& p, std::optional<Color> anchor, std::size_t trials,
                       Seed seed, std::size_t jobs)
{
    const auto n = c.vertex_count();
    const auto colors = c.color_count();
    if (anchor && (*anchor < 0 || static_cast<std::size_t>(*anchor) >= colors)) {
        throw PreconditionError("round_stats: anchor out of range");
    }
    const double dd = static_cast<double>(p.d);
    const double degree_threshold = static_cast<double>(keep_fn(dd, static_cast<long double>(p.ell), p.eta) *
                                                        uncolor_fn(dd, static_cast<long double>(p.ell), p.eta)) *
                                        dd +
                                    std::pow(dd, 1.0 - p.beta);
    std::vector<double> kept_center(n);
    std::vector<double> kept_radius(n);
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        const double lv = static_cast<double>(c.list(v).size());
        kept_center[v] = static_cast<double>(keep_fn(dd, lv, p.eta)) * lv;
        kept_radius[v] = std::pow(lv, 1.0 - p.beta);
    }

    auto empty_stats = [&] {
        RoundStats s;
        s.kept_sum.assign(n, 0);
        s.kept_sq.assign(n, 0);
        s.kept_tail.assign(n, 0);
        s.degree_sum.assign(colors, 0);
        s.degree_sq.assign(colors, 0);
        s.degree_tail.assign(colors, 0);
        return s;
    };
    RoundStats total = empty_stats();
    total.trials = trials;
    total.anchor = anchor;
    if (anchor) {
        total.anchor_samples.resize(trials);
    }

    auto work = [&](std::size_t first, std::size_t last, RoundStats& acc) {
        std::vector<char> kept_flag(colors, 0);
        std::vector<char> chosen(colors, 0);
        for (std::size_t trial = first; trial < last; ++trial) {
            const RoundOutcome o = run_round(c, p, seed + trial, false);
            std::fill(kept_flag.begin(), kept_flag.end(), 0);
            for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
                const auto k = o.kept[v].size();
                acc.kept_sum[v] += k;
                acc.kept_sq[v] += k * k;
                if (std::fabs(static_cast<double>(k) - kept_center[v]) > kept_radius[v]) {
                    ++acc.kept_tail[v];
                }
                for (Color x : o.kept[v]) {
                    kept_flag[x] = 1;
                }
            }
            std::fill(chosen.begin(), chosen.end(), 0);
            for (Vertex v : o.activated) {
                chosen[o.assigned[v]] = 1;
            }
            for (Color x = 0; x < static_cast<Color>(colors); ++x) {
                // d'(c) from residual membership; |U| and |U \ K| from col(A) directly.
                std::size_t uncolored = 0;
                std::size_t lost = 0;
                std::size_t residual = 0;
                for (Color y : c.cover().neighbors(x)) {
                    if (o.coloring.colored(c.owner(y))) {
                        continue;
                    }
                    ++uncolored;
                    if (kept_flag[y] != 0) {
                        ++residual;
                    }
                    const auto ny = c.cover().neighbors(y);
                    if (std::any_of(ny.begin(), ny.end(), [&](Color z) { return chosen[z] != 0; })) {
                        ++lost;
                    }
                }
                acc.degree_sum[x] += residual;
                acc.degree_sq[x] += residual * residual;
                acc.uncolored_neighbors_sum += uncolored;
                if (static_cast<double>(residual) > degree_threshold) {
                    ++acc.degree_tail[x];
                }
                if (residual != uncolored - lost) {
                    ++acc.identity_failures;
                }
                if (anchor && x == *anchor) {
                    total.anchor_samples[trial] = {uncolored, lost, residual};
                }
            }
        }
    };

    jobs = std::max<std::size_t>(1, std::min(jobs, trials == 0 ? 1 : trials));
    std::vector<RoundStats> partial(jobs, empty_stats());
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) {
        const std::size_t first = trials * j / jobs;
        const std::size_t last = trials * (j + 1) / jobs;
        if (j + 1 == jobs) {
            work(first, last, partial[j]);
        } else {
            threads.emplace_back(work, first, last, std::ref(partial[j]));
        }
    }
    for (auto& th : threads) {
        th.join();
    }
    auto add = [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
        for (std::size_t i = 0; i < into.size(); ++i) {
            into[i] += from[i];
        }
    };
    for (const auto& s : partial) {
        add(total.kept_sum, s.kept_sum);
        add(total.kept_sq, s.kept_sq);
        add(total.kept_tail, s.kept_tail);
        add(total.degree_sum, s.degree_sum);
        add(total.degree_sq, s.degree_sq);
        add(total.degree_tail, s.degree_tail);
        total.uncolored_neighbors_sum += s.uncolored_neighbors_sum;
        total.identity_failures += s.identity_failures;
    }
    return total;
}

ExactExpectation exact_round_expectation(const DpCover& c, const RoundParams& p, double budget)
{
    const auto n = c.vertex_count();
    const auto colors = c.color_count();
    double space = 1.0;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        space *= 1.0 + static_cast<double>(c.list(v).size());
    }
    if (space > budget) {
        throw BudgetExceeded("exact_round_expectation: " + std::to_string(space) + " outcomes exceed budget " +
                             std::to_string(budget));
    }
    const long double eta = p.eta;
    // digit[v] = 0 means inactive, i > 0 means active with the (i-1)-th color.
    std::vector<std::size_t> digit(n, 0);
    std::vector<char> chosen(colors, 0);
    std::vector<char> kept(colors, 0);
    ExactExpectation out;
    out.kept.assign(n, 0.0L);
    out.residual_degree.assign(colors, 0.0L);
    while (true) {
        long double prob = 1.0L;
        std::fill(chosen.begin(), chosen.end(), 0);
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
            const auto list = c.list(v);
            if (digit[v] == 0) {
                prob *= 1.0L - eta;
            } else {
                prob *= eta / static_cast<long double>(list.size());
                chosen[list[digit[v] - 1]] = 1;
            }
        }
        ++out.outcomes;
        if (prob > 0.0L) {
            std::vector<char> colored(n, 0);
            for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
                std::size_t k = 0;
                for (Color x : c.list(v)) {
                    const auto nb = c.cover().neighbors(x);
                    kept[x] = std::none_of(nb.begin(), nb.end(), [&](Color y) { return chosen[y] != 0; }) ? 1 : 0;
                    k += static_cast<std::size_t>(kept[x]);
                }
                out.kept[v] += prob * static_cast<long double>(k);
                if (digit[v] != 0 && kept[c.list(v)[digit[v] - 1]] != 0) {
                    colored[v] = 1;
                }
            }
            for (Color x = 0; x < static_cast<Color>(colors); ++x) {
                std::size_t r = 0;
                for (Color y : c.cover().neighbors(x)) {
                    if (colored[c.owner(y)] == 0 && kept[y] != 0) {
                        ++r;
                    }
                }
                out.residual_degree[x] += prob * static_cast<long double>(r);
            }
        }
        // Mixed-radix increment.
        std::size_t v = 0;
        while (v < n && ++digit[v] > c.list(static_cast<Vertex>(v)).size()) {
            digit[v] = 0;
            ++v;
        }
        if (v == n) {
            break;
        }
    }
    return out;
}

} // namespace dpc
