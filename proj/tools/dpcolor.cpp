// dpcolor: generate instances, print schedules, color covers, collect round statistics.

#include "dpc/analysis.hpp"
#include "dpc/error.hpp"
#include "dpc/generators.hpp"
#include "dpc/io.hpp"
#include "dpc/pipeline.hpp"
#include "dpc/schedule.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct GenerateArgs {
    std::string config;
    std::string kind;
    std::optional<std::size_t> n, d, ell, palette, m, s, t;
    std::optional<double> rho;
    bool girth5_base = false;
    std::optional<dpc::Seed> seed;
    std::string out;
};

struct ScheduleArgs {
    std::int64_t d = 0;
    double epsilon = 0.1;
    std::int64_t s = 1;
    std::int64_t t = 1;
    std::size_t max_iters = 100000;
    std::string out;
};

struct ColorArgs {
    std::string cover;
    std::string config;
    std::optional<dpc::Seed> seed;
    std::optional<double> slack, eta, epsilon;
    std::optional<std::size_t> max_retries, max_rounds;
    std::optional<std::int64_t> d;
    std::string out;
};

struct StatsArgs {
    std::string cover;
    std::optional<dpc::Seed> seed;
    double eta = 0.1;
    std::optional<std::size_t> d, ell;
    std::size_t t = 1;
    std::size_t trials = 1000;
    std::optional<dpc::Color> anchor;
    std::size_t jobs = 1;
    std::string out;
    std::string summary;
};

dpc::Json load_json(const std::string& path)
{
    try {
        return dpc::Json::parse(dpc::read_file(path));
    } catch (const dpc::Json::exception& e) {
        throw dpc::ParseError(path + ": " + e.what());
    }
}

dpc::DpCover load_cover(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw dpc::PreconditionError("cannot open cover file " + path);
    }
    return dpc::read_cover(in);
}

void emit(const std::string& path, const std::string& bytes)
{
    if (path.empty() || path == "-") {
        std::cout << bytes;
    } else {
        dpc::write_file(path, bytes);
    }
}

int run_generate(const GenerateArgs& a)
{
    dpc::GenSpec spec;
    if (!a.config.empty()) {
        spec = dpc::gen_spec_from_json(load_json(a.config));
    }
    if (!a.kind.empty()) {
        spec.kind = dpc::gen_kind_from_string(a.kind);
    }
    if (a.n) spec.n = *a.n;
    if (a.d) spec.d = *a.d;
    if (a.ell) spec.ell = *a.ell;
    if (a.rho) spec.rho = *a.rho;
    if (a.palette) spec.palette = *a.palette;
    if (a.m) spec.m = *a.m;
    if (a.s) spec.s = *a.s;
    if (a.t) spec.t = *a.t;
    if (a.girth5_base) spec.girth5_base = true;
    const bool config_has_seed = !a.config.empty() && load_json(a.config).contains("seed");
    if (!a.seed && !config_has_seed) {
        throw dpc::PreconditionError("generate: a seed is required (--seed or config)");
    }
    if (a.seed) spec.seed = *a.seed;

    const dpc::Instance inst = dpc::generate(spec);
    std::ostringstream bytes;
    if (const auto* g = std::get_if<dpc::Graph>(&inst)) {
        bytes << "# " << dpc::to_json(spec).dump() << '\n';
        dpc::write_edge_list(bytes, *g);
    } else {
        dpc::write_cover(bytes, std::get<dpc::DpCover>(inst));
    }
    emit(a.out, bytes.str());
    std::cerr << "digest " << dpc::digest(bytes.str()) << ' ' << (a.out.empty() ? "-" : a.out) << '\n';
    return kOk;
}

int run_schedule(const ScheduleArgs& a)
{
    dpc::ScheduleInput in;
    in.d = a.d;
    in.epsilon = a.epsilon;
    in.s = a.s;
    in.t = a.t;
    const dpc::Schedule s = dpc::compute_schedule(in, a.max_iters);
    std::ostringstream out;
    dpc::write_schedule_csv(out, s);
    emit(a.out, out.str());
    return kOk;
}

int run_color(const ColorArgs& a)
{
    dpc::PipelineConfig cfg;
    bool have_seed = false;
    if (!a.config.empty()) {
        const dpc::Json j = load_json(a.config);
        cfg = dpc::pipeline_config_from_json(j);
        have_seed = j.contains("seed");
    }
    if (a.seed) {
        cfg.seed = *a.seed;
        have_seed = true;
    }
    if (!have_seed) {
        throw dpc::PreconditionError("color: a seed is required (--seed or config)");
    }
    if (a.slack) cfg.slack = *a.slack;
    if (a.eta) cfg.eta = *a.eta;
    if (a.epsilon) cfg.schedule_input.epsilon = *a.epsilon;
    if (a.max_retries) cfg.max_round_retries = *a.max_retries;
    if (a.max_rounds) cfg.max_rounds = *a.max_rounds;
    if (a.d) cfg.schedule_input.d = *a.d;
    dpc::check(cfg);

    auto write_result = [&](const dpc::ColoringResult* r, const std::string& status, const std::string& error,
                            const std::vector<dpc::RoundTelemetry>& rounds) {
        emit(a.out, dpc::result_to_json(cfg, r, status, error, rounds).dump() + "\n");
    };
    try {
        const dpc::DpCover cover = load_cover(a.cover);
        const dpc::ColoringResult r = dpc::color_graph(cover, cfg);
        write_result(&r, "ok", "", {});
        return kOk;
    } catch (const dpc::PipelineError& e) {
        write_result(nullptr, "budget_exhausted", e.what(), e.rounds());
        throw;
    } catch (const dpc::Error& e) {
        write_result(nullptr, "failed", e.what(), {});
        throw;
    }
}

int run_stats(const StatsArgs& a)
{
    if (!a.seed) {
        throw dpc::PreconditionError("stats: --seed is required");
    }
    const dpc::DpCover cover = load_cover(a.cover);
    dpc::RoundParams p;
    p.eta = a.eta;
    p.d = a.d ? *a.d : std::max<std::size_t>(1, dpc::max_degree(cover.cover()));
    p.ell = a.ell ? *a.ell : std::max<std::size_t>(1, cover.min_list_size());
    p.beta = 1.0 / (25.0 * static_cast<double>(a.t));
    dpc::check(p);
    if (a.trials == 0) {
        throw dpc::PreconditionError("stats: --trials must be positive");
    }
    dpc::Json config = {{"cover", a.cover}, {"eta", p.eta},       {"d", p.d},
                        {"ell", p.ell},     {"beta", p.beta},     {"trials", a.trials},
                        {"seed", *a.seed},  {"anchor", a.anchor ? dpc::Json(*a.anchor) : dpc::Json(nullptr)}};
    const dpc::RoundStats stats = dpc::round_stats(cover, p, a.anchor, a.trials, *a.seed, a.jobs);
    std::ostringstream csv;
    dpc::write_stats_csv(csv, config, stats);
    emit(a.out, csv.str());
    if (!a.summary.empty()) {
        dpc::write_file(a.summary, dpc::stats_summary(cover, p, stats, config).dump(2) + "\n");
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"DP-coloring by iterated wasteful nibble rounds"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate a graph or cover");
    g->add_option("--config", gen.config, "Generator spec (JSON)");
    g->add_option("--kind", gen.kind, "regular | girth5_regular | dp_cover | list_cover | kst_free_bipartite");
    g->add_option("--n", gen.n, "Vertices (or second part size for kst_free_bipartite)");
    g->add_option("--d", gen.d, "Degree");
    g->add_option("--ell", gen.ell, "List size");
    g->add_option("--rho", gen.rho, "Matching density");
    g->add_option("--palette", gen.palette, "Label palette for list_cover");
    g->add_option("--m", gen.m, "First part size for kst_free_bipartite");
    g->add_option("--s", gen.s, "K_{s,t} parameter s");
    g->add_option("--t", gen.t, "K_{s,t} parameter t");
    g->add_flag("--girth5-base", gen.girth5_base, "Use a girth-5 regular base graph");
    g->add_option("--seed", gen.seed, "Seed");
    g->add_option("--out", gen.out, "Output file")->required();

    ScheduleArgs sch;
    auto* s = app.add_subcommand("schedule", "Print the parameter schedule as CSV");
    s->add_option("--d", sch.d, "Initial degree bound")->required();
    s->add_option("--epsilon", sch.epsilon, "epsilon");
    s->add_option("--s", sch.s, "s");
    s->add_option("--t", sch.t, "t");
    s->add_option("--max-iters", sch.max_iters, "Iteration cap");
    s->add_option("--out", sch.out, "Output file (default stdout)");

    ColorArgs col;
    auto* c = app.add_subcommand("color", "Color a cover");
    c->add_option("--cover", col.cover, "Cover file (JSON)")->required();
    c->add_option("--config", col.config, "Pipeline config (JSON)");
    c->add_option("--seed", col.seed, "Seed");
    c->add_option("--slack", col.slack, "Good-round slack multiplier");
    c->add_option("--eta", col.eta, "Activation probability");
    c->add_option("--epsilon", col.epsilon, "epsilon");
    c->add_option("--d", col.d, "Degree bound (default: max cover degree)");
    c->add_option("--max-retries", col.max_retries, "Attempts per round");
    c->add_option("--max-rounds", col.max_rounds, "Round budget");
    c->add_option("--out", col.out, "Result file (JSON)")->required();

    StatsArgs st;
    auto* t = app.add_subcommand("stats", "Round statistics over many trials");
    t->add_option("--cover", st.cover, "Cover file (JSON)")->required();
    t->add_option("--seed", st.seed, "Seed");
    t->add_option("--eta", st.eta, "Activation probability");
    t->add_option("--d", st.d, "Degree bound (default: max cover degree)");
    t->add_option("--ell", st.ell, "List size (default: smallest list)");
    t->add_option("--t", st.t, "t, sets beta = 1/(25 t)");
    t->add_option("--trials", st.trials, "Number of rounds");
    t->add_option("--anchor", st.anchor, "Anchor color for per-trial samples");
    t->add_option("--jobs", st.jobs, "Worker threads");
    t->add_option("--out", st.out, "CSV output (default stdout)");
    t->add_option("--summary", st.summary, "Summary JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*g) return run_generate(gen);
        if (*s) return run_schedule(sch);
        if (*c) return run_color(col);
        if (*t) return run_stats(st);
    } catch (const dpc::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const dpc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const dpc::InvalidCover& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const dpc::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const dpc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
