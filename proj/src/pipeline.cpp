#include "dpc/pipeline.hpp"

#include "dpc/analysis.hpp"
#include "dpc/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace dpc {

void check(const PipelineConfig& cfg)
{
    if (!(cfg.slack >= 1.0)) {
        throw PreconditionError("pipeline: slack must be at least 1");
    }
    if (cfg.max_round_retries == 0 || cfg.max_finish_resamples == 0 || cfg.max_rounds == 0) {
        throw PreconditionError("pipeline: budgets must be positive");
    }
    if (cfg.eta && !(*cfg.eta > 0.0 && *cfg.eta <= 1.0)) {
        throw PreconditionError("pipeline: eta must lie in (0, 1]");
    }
}

ResampleBudgetExhausted::ResampleBudgetExhausted(std::size_t budget, std::vector<std::size_t> conflicts)
    : BudgetExceeded("finish: " + std::to_string(budget) + " resamples left " +
                     std::to_string(conflicts.empty() ? 0 : conflicts.back()) + " conflicts"),
      conflicts_(std::move(conflicts))
{
}

FinishResult finish(const DpCover& c, std::size_t max_resamples, Seed seed)
{
    const auto n = static_cast<Vertex>(c.vertex_count());
    const std::size_t delta = max_degree(c.cover());
    for (Vertex v = 0; v < n; ++v) {
        if (c.list(v).size() < 8 * delta || c.list(v).empty()) {
            throw PreconditionError("finish: list of vertex " + std::to_string(v) + " has " +
                                    std::to_string(c.list(v).size()) + " colors, need 8 * " + std::to_string(delta));
        }
    }
    Stream rng(seed);
    FinishResult out;
    out.coloring = PartialColoring(c.vertex_count());
    auto& phi = out.coloring.assignment;
    std::set<Edge> violated; // (a, b) with a < b, ordered by id
    auto draw = [&](Vertex v) {
        const auto list = c.list(v);
        phi[v] = list[rng.index(list.size())];
    };
    auto touch = [&](Vertex v, bool insert) {
        const Color a = phi[v];
        for (Color b : c.cover().neighbors(a)) {
            if (phi[c.owner(b)] == b) {
                const Edge e{std::min(a, b), std::max(a, b)};
                if (insert) {
                    violated.insert(e);
                } else {
                    violated.erase(e);
                }
            }
        }
    };
    for (Vertex v = 0; v < n; ++v) {
        draw(v);
    }
    for (Vertex v = 0; v < n; ++v) {
        touch(v, true);
    }
    while (!violated.empty()) {
        out.conflicts.push_back(violated.size());
        if (out.resamples == max_resamples) {
            throw ResampleBudgetExhausted(max_resamples, std::move(out.conflicts));
        }
        const auto [a, b] = *violated.begin();
        const Vertex u = c.owner(a);
        const Vertex v = c.owner(b);
        touch(u, false);
        touch(v, false);
        draw(u);
        draw(v);
        touch(u, true);
        touch(v, true);
        ++out.resamples;
    }
    out.conflicts.push_back(0);
    return out;
}

PipelineError::PipelineError(std::string stage, const std::string& what, std::vector<RoundTelemetry> rounds)
    : BudgetExceeded(stage + ": " + what), stage_(std::move(stage)), rounds_(std::move(rounds))
{
}

namespace {

constexpr std::uint64_t kRegularizeKey = 0x5245475FULL;
constexpr std::uint64_t kFinishKey = 0x46494E49ULL;

// Composes parent-relative origins with the running maps into the work cover.
void compose(std::vector<Vertex>& vertex_map, std::vector<Color>& color_map, const Subcover& sub)
{
    std::vector<Vertex> vm(sub.vertex_origin.size());
    std::vector<Color> cm(sub.color_origin.size());
    for (std::size_t i = 0; i < vm.size(); ++i) {
        vm[i] = vertex_map[sub.vertex_origin[i]];
    }
    for (std::size_t i = 0; i < cm.size(); ++i) {
        cm[i] = color_map[sub.color_origin[i]];
    }
    vertex_map = std::move(vm);
    color_map = std::move(cm);
}

} // namespace

ColoringResult color_graph(const DpCover& c, const PipelineConfig& cfg)
{
    check(cfg);
    if (auto violations = validate(c); !violations.empty()) {
        throw InvalidCover(std::move(violations));
    }
    const std::size_t delta = max_degree(c.cover());
    if (cfg.schedule_input.d > 0 && static_cast<std::size_t>(cfg.schedule_input.d) < delta) {
        throw PreconditionError("pipeline: cover degree " + std::to_string(delta) + " exceeds d = " +
                                std::to_string(cfg.schedule_input.d));
    }
    ScheduleInput in = cfg.schedule_input;
    in.d = std::max<std::int64_t>(in.d > 0 ? in.d : static_cast<std::int64_t>(delta), 3);

    DpCover work = c;
    if (cfg.regularize_first) {
        work = regularize(c, static_cast<std::size_t>(in.d), static_cast<std::size_t>(in.s),
                          static_cast<std::size_t>(in.t), derive_seed(cfg.seed, kRegularizeKey));
    }

    Subcover current = trim(work, work.min_list_size());
    std::vector<Vertex> vertex_map(work.vertex_count());
    std::vector<Color> color_map(work.color_count());
    for (std::size_t i = 0; i < vertex_map.size(); ++i) {
        vertex_map[i] = static_cast<Vertex>(i);
    }
    for (std::size_t i = 0; i < color_map.size(); ++i) {
        color_map[i] = static_cast<Color>(i);
    }
    compose(vertex_map, color_map, current);

    PartialColoring phi(work.vertex_count());
    std::vector<char> assigned_mark(work.color_count(), 0);
    ColoringResult result;

    auto needs_rounds = [](const DpCover& cur) {
        return cur.vertex_count() > 0 && cur.min_list_size() < 8 * max_degree(cur.cover());
    };

    if (needs_rounds(current.cover)) {
        check(in);
        const ScheduleConstants k = derive_constants(in);
        if (static_cast<std::int64_t>(current.cover.min_list_size()) < k.ell_1) {
            throw PreconditionError("pipeline: smallest list has " + std::to_string(current.cover.min_list_size()) +
                                    " colors, fewer than ell_1 = " + std::to_string(k.ell_1));
        }
        const Schedule reference = compute_schedule(in, cfg.max_rounds + 1);
        const double eta = cfg.eta ? *cfg.eta : static_cast<double>(k.eta);
        const double beta = static_cast<double>(k.beta);

        for (std::size_t i = 1; needs_rounds(current.cover); ++i) {
            if (i > cfg.max_rounds) {
                throw PipelineError("rounds", "no finishable state after " + std::to_string(cfg.max_rounds) +
                                                  " rounds",
                                    std::move(result.rounds));
            }
            const DpCover& cur = current.cover;
            RoundTelemetry tel;
            tel.iteration = i;
            tel.ell = cur.min_list_size();
            tel.d = max_degree(cur.cover());
            if (i <= reference.states.size()) {
                tel.d = std::min<std::size_t>(tel.d, static_cast<std::size_t>(reference.states[i - 1].d));
            }
            tel.d = std::max<std::size_t>(tel.d, 1);
            const auto dl = static_cast<long double>(tel.d);
            const auto el = static_cast<long double>(tel.ell);
            tel.ell_target = std::max(0.0, static_cast<double>(ell_next(dl, el, eta, beta)) / cfg.slack);
            tel.d_target = static_cast<double>(d_next(dl, el, eta, beta)) * cfg.slack;

            RoundParams params{eta, tel.d, tel.ell, beta};
            const Seed round_seed = derive_seed(cfg.seed, i);
            RoundOutcome o;
            try {
                o = run_round_until_good(cur, params, tel.ell_target, tel.d_target, cfg.max_round_retries,
                                         round_seed);
            } catch (const RetriesExhausted& e) {
                result.rounds.push_back(tel);
                throw PipelineError("round " + std::to_string(i), e.what(), std::move(result.rounds));
            }
            tel.retries = static_cast<std::size_t>(o.seed - round_seed);

            for (Vertex v = 0; v < static_cast<Vertex>(cur.vertex_count()); ++v) {
                if (o.coloring.colored(v)) {
                    const Color w = color_map[o.coloring[v]];
                    phi.assignment[vertex_map[v]] = w;
                    assigned_mark[w] = 1;
                    ++tel.colored;
                }
            }
            compose(vertex_map, color_map, o.residual);
            current = std::move(o.residual);
            if (cfg.retrim && current.cover.vertex_count() > 0) {
                Subcover trimmed = trim(current.cover, current.cover.min_list_size());
                compose(vertex_map, color_map, trimmed);
                current = std::move(trimmed);
            }
            tel.remaining = current.cover.vertex_count();
            tel.min_kept = current.cover.vertex_count() > 0 ? current.cover.min_list_size() : 0;
            tel.max_residual_degree = max_degree(current.cover.cover());
            result.rounds.push_back(tel);

            if (cfg.check_composition) {
                for (Color x = 0; x < static_cast<Color>(current.cover.color_count()); ++x) {
                    for (Color y : work.cover().neighbors(color_map[x])) {
                        if (assigned_mark[y] != 0) {
                            throw Error("pipeline: surviving color " + std::to_string(color_map[x]) +
                                        " is adjacent to assigned color " + std::to_string(y));
                        }
                    }
                }
            }
        }
    }

    FinishResult fin;
    try {
        fin = finish(current.cover, cfg.max_finish_resamples, derive_seed(cfg.seed, kFinishKey));
    } catch (const ResampleBudgetExhausted& e) {
        throw PipelineError("finish", e.what(), std::move(result.rounds));
    }
    result.finish_resamples = fin.resamples;
    for (Vertex v = 0; v < static_cast<Vertex>(current.cover.vertex_count()); ++v) {
        phi.assignment[vertex_map[v]] = color_map[fin.coloring[v]];
    }

    // Copy 0 of a regularized cover carries the input's ids unchanged.
    result.coloring = PartialColoring(c.vertex_count());
    std::copy_n(phi.assignment.begin(), c.vertex_count(), result.coloring.assignment.begin());
    const ProperCheck pc = verify_proper(c, result.coloring);
    if (!result.coloring.is_total() || !pc.proper) {
        throw Error("pipeline: produced coloring failed verification");
    }
    return result;
}

} // namespace dpc
