#include "dpc/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpc {

long double keep_fn(long double d, long double ell, long double eta)
{
    if (d == 0 || eta == 0) {
        return 1.0L;
    }
    // expl/log1pl keep full relative precision when eta/ell is tiny and d is large.
    return std::exp(d * std::log1p(-eta / ell));
}

long double uncolor_fn(long double d, long double ell, long double eta)
{
    return 1.0L - eta * keep_fn(d, ell, eta);
}

long double ell_next(long double d, long double ell, long double eta, long double beta)
{
    return keep_fn(d, ell, eta) * ell - std::pow(ell, 1.0L - beta);
}

long double d_next(long double d, long double ell, long double eta, long double beta)
{
    const long double keep = keep_fn(d, ell, eta);
    return keep * (1.0L - eta * keep) * d + std::pow(d, 1.0L - beta);
}

void check(const RoundParams& p)
{
    if (!(p.eta > 0.0 && p.eta <= 1.0)) {
        throw PreconditionError("round parameters: eta must lie in (0, 1]");
    }
    if (p.d < 1 || p.ell < 1) {
        throw PreconditionError("round parameters: d and ell must be positive");
    }
    if (!(p.beta > 0.0 && p.beta < 1.0)) {
        throw PreconditionError("round parameters: beta must lie in (0, 1)");
    }
}

RoundOutcome run_round(const DpCover& c, const RoundParams& p, Seed seed, bool with_residual)
{
    if (!(p.eta >= 0.0 && p.eta <= 1.0)) {
        throw PreconditionError("run_round: eta must lie in [0, 1]");
    }
    const auto n = static_cast<Vertex>(c.vertex_count());
    RoundOutcome o;
    o.seed = seed;
    o.assigned.assign(c.vertex_count(), kBlank);
    std::vector<char> chosen(c.color_count(), 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto list = c.list(v);
        if (list.empty()) {
            throw PreconditionError("run_round: empty list at vertex " + std::to_string(v));
        }
        Stream rng(derive_seed(seed, static_cast<std::uint64_t>(v)));
        const bool active = rng.uniform01() < p.eta;
        const std::uint64_t word = rng.next();
        if (active) {
            const auto i = static_cast<std::size_t>((static_cast<unsigned __int128>(word) * list.size()) >> 64);
            o.activated.push_back(v);
            o.assigned[v] = list[i];
            chosen[list[i]] = 1;
        }
    }
    o.kept.resize(c.vertex_count());
    o.coloring = PartialColoring(c.vertex_count());
    for (Vertex v = 0; v < n; ++v) {
        for (Color x : c.list(v)) {
            bool blocked = false;
            for (Color y : c.cover().neighbors(x)) {
                if (chosen[y] != 0) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                o.kept[v].push_back(x);
                if (x == o.assigned[v]) {
                    o.coloring.assignment[v] = x;
                }
            }
        }
        std::sort(o.kept[v].begin(), o.kept[v].end());
    }
    if (with_residual) {
        o.residual = residual(c, o.coloring, o.kept);
    }
    return o;
}

RoundEvents count_events(const RoundOutcome& o, double ell_target, double d_target)
{
    RoundEvents e;
    for (const auto& k : o.kept) {
        if (static_cast<double>(k.size()) <= ell_target) {
            ++e.list_events;
        }
    }
    const Graph& h = o.residual.cover.cover();
    for (Color x = 0; x < static_cast<Color>(h.vertex_count()); ++x) {
        if (static_cast<double>(h.degree(x)) >= d_target) {
            ++e.degree_events;
        }
    }
    return e;
}

bool round_is_good(const RoundOutcome& o, double ell_target, double d_target)
{
    return count_events(o, ell_target, d_target).good();
}

RetriesExhausted::RetriesExhausted(std::size_t attempts, RoundOutcome best, RoundEvents best_events)
    : BudgetExceeded("no good round in " + std::to_string(attempts) + " attempts (best attempt: " +
                     std::to_string(best_events.list_events) + " list events, " +
                     std::to_string(best_events.degree_events) + " degree events)"),
      attempts_(attempts), best_(std::move(best)), best_events_(best_events)
{
}

RoundOutcome run_round_until_good(const DpCover& c, const RoundParams& p, double ell_target, double d_target,
                                  std::size_t max_attempts, Seed seed)
{
    if (max_attempts == 0) {
        throw PreconditionError("run_round_until_good: need at least one attempt");
    }
    RoundOutcome best;
    RoundEvents best_events;
    for (std::size_t k = 0; k < max_attempts; ++k) {
        RoundOutcome o = run_round(c, p, seed + k);
        const RoundEvents e = count_events(o, ell_target, d_target);
        if (e.good()) {
            return o;
        }
        if (k == 0 || e.total() < best_events.total()) {
            best = std::move(o);
            best_events = e;
        }
    }
    throw RetriesExhausted(max_attempts, std::move(best), best_events);
}

} // namespace dpc
