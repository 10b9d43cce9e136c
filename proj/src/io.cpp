#include "dpc/io.hpp"

#include "dpc/error.hpp"
#include "dpc/nibble.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dpc {

Json cover_to_json(const DpCover& c)
{
    Json edges = Json::array();
    for (const auto& [u, v] : c.base().edges()) {
        edges.push_back({u, v});
    }
    Json lists = Json::array();
    for (const auto& l : c.lists()) {
        lists.push_back(l);
    }
    Json cover_edges = Json::array();
    for (const auto& [a, b] : c.cover().edges()) {
        cover_edges.push_back({a, b});
    }
    Json j;
    j["base"] = {{"vertex_count", c.vertex_count()}, {"edges", std::move(edges)}};
    j["lists"] = std::move(lists);
    j["cover_edges"] = std::move(cover_edges);
    return j;
}

namespace {

std::vector<Edge> read_pairs(const Json& arr, const char* what)
{
    if (!arr.is_array()) {
        throw ParseError(std::string(what) + " must be an array");
    }
    std::vector<Edge> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw ParseError(std::string(what) + " entries must be [a, b] integer pairs");
        }
        out.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return out;
}

} // namespace

DpCover cover_from_json(const Json& j)
{
    try {
        if (!j.is_object() || !j.contains("base") || !j.contains("lists") || !j.contains("cover_edges")) {
            throw ParseError("cover document needs base, lists and cover_edges");
        }
        const auto& base = j.at("base");
        const auto n = base.at("vertex_count").get<std::int64_t>();
        if (n < 0) {
            throw ParseError("negative vertex_count");
        }
        Graph g;
        try {
            g = Graph::from_edges(static_cast<std::size_t>(n), read_pairs(base.at("edges"), "base.edges"));
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("base graph: ") + e.what());
        }
        const auto& jl = j.at("lists");
        if (!jl.is_array() || jl.size() != static_cast<std::size_t>(n)) {
            throw ParseError("lists must hold one array per base vertex");
        }
        std::vector<std::vector<Color>> lists;
        Color max_color = -1;
        for (const auto& l : jl) {
            auto list = l.get<std::vector<Color>>();
            for (Color x : list) {
                if (x < 0) {
                    throw ParseError("negative color id");
                }
                max_color = std::max(max_color, x);
            }
            lists.push_back(std::move(list));
        }
        const auto cover_edges = read_pairs(j.at("cover_edges"), "cover_edges");
        for (const auto& [a, b] : cover_edges) {
            max_color = std::max({max_color, a, b});
        }
        Graph h;
        try {
            h = Graph::from_edges(static_cast<std::size_t>(max_color + 1), cover_edges);
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("cover graph: ") + e.what());
        }
        DpCover c(std::move(g), std::move(h), std::move(lists));
        if (auto violations = validate(c); !violations.empty()) {
            throw InvalidCover(std::move(violations));
        }
        return c;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("cover document: ") + e.what());
    }
}

void write_cover(std::ostream& out, const DpCover& c)
{
    out << cover_to_json(c).dump() << '\n';
}

DpCover read_cover(std::istream& in)
{
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("cover document: ") + e.what());
    }
    return cover_from_json(j);
}

Json to_json(const ScheduleInput& in)
{
    return {{"d", in.d},
            {"epsilon", in.epsilon},
            {"s", in.s},
            {"t", in.t},
            {"d_tilde", in.d_tilde},
            {"alpha_tilde", in.alpha_tilde}};
}

Json to_json(const PipelineConfig& cfg)
{
    Json j;
    j["schedule"] = to_json(cfg.schedule_input);
    j["slack"] = cfg.slack;
    j["max_round_retries"] = cfg.max_round_retries;
    j["max_finish_resamples"] = cfg.max_finish_resamples;
    j["seed"] = cfg.seed;
    j["regularize_first"] = cfg.regularize_first;
    j["eta"] = cfg.eta ? Json(*cfg.eta) : Json(nullptr);
    j["max_rounds"] = cfg.max_rounds;
    j["retrim"] = cfg.retrim;
    return j;
}

Json to_json(const GenSpec& spec)
{
    return {{"kind", to_string(spec.kind)}, {"n", spec.n},         {"d", spec.d},
            {"ell", spec.ell},              {"rho", spec.rho},     {"palette", spec.palette},
            {"girth5_base", spec.girth5_base}, {"m", spec.m},      {"s", spec.s},
            {"t", spec.t},                  {"seed", spec.seed}};
}

Json to_json(const RoundTelemetry& t)
{
    return {{"iteration", t.iteration},
            {"retries", t.retries},
            {"ell", t.ell},
            {"d", t.d},
            {"ell_target", t.ell_target},
            {"d_target", t.d_target},
            {"min_kept", t.min_kept},
            {"max_residual_degree", t.max_residual_degree},
            {"colored", t.colored},
            {"remaining", t.remaining}};
}

namespace {

template <class T>
void take(const Json& j, const char* key, T& into)
{
    if (j.contains(key)) {
        into = j.at(key).get<T>();
    }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* what)
{
    if (!j.is_object()) {
        throw ParseError(std::string(what) + " must be an object");
    }
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw ParseError(std::string(what) + ": unknown key '" + item.key() + "'");
        }
    }
}

} // namespace

ScheduleInput schedule_input_from_json(const Json& j, ScheduleInput base)
{
    try {
        reject_unknown(j, {"d", "epsilon", "s", "t", "d_tilde", "alpha_tilde"}, "schedule");
        take(j, "d", base.d);
        take(j, "epsilon", base.epsilon);
        take(j, "s", base.s);
        take(j, "t", base.t);
        take(j, "d_tilde", base.d_tilde);
        take(j, "alpha_tilde", base.alpha_tilde);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
    return base;
}

PipelineConfig pipeline_config_from_json(const Json& j, PipelineConfig base)
{
    try {
        reject_unknown(j,
                       {"schedule", "slack", "max_round_retries", "max_finish_resamples", "seed", "regularize_first",
                        "eta", "max_rounds", "retrim"},
                       "config");
        if (j.contains("schedule")) {
            base.schedule_input = schedule_input_from_json(j.at("schedule"), base.schedule_input);
        }
        take(j, "slack", base.slack);
        take(j, "max_round_retries", base.max_round_retries);
        take(j, "max_finish_resamples", base.max_finish_resamples);
        take(j, "seed", base.seed);
        take(j, "regularize_first", base.regularize_first);
        if (j.contains("eta")) {
            base.eta = j.at("eta").is_null() ? std::nullopt : std::optional<double>(j.at("eta").get<double>());
        }
        take(j, "max_rounds", base.max_rounds);
        take(j, "retrim", base.retrim);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return base;
}

GenSpec gen_spec_from_json(const Json& j, GenSpec base)
{
    try {
        reject_unknown(j, {"kind", "n", "d", "ell", "rho", "palette", "girth5_base", "m", "s", "t", "seed"},
                       "generator spec");
        if (j.contains("kind")) {
            base.kind = gen_kind_from_string(j.at("kind").get<std::string>());
        }
        take(j, "n", base.n);
        take(j, "d", base.d);
        take(j, "ell", base.ell);
        take(j, "rho", base.rho);
        take(j, "palette", base.palette);
        take(j, "girth5_base", base.girth5_base);
        take(j, "m", base.m);
        take(j, "s", base.s);
        take(j, "t", base.t);
        take(j, "seed", base.seed);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("generator spec: ") + e.what());
    }
    return base;
}

Json result_to_json(const PipelineConfig& cfg, const ColoringResult* result, const std::string& status,
                    const std::string& error, const std::vector<RoundTelemetry>& failed_rounds)
{
    Json j;
    j["status"] = status;
    j["seed"] = cfg.seed;
    j["config"] = to_json(cfg);
    if (!error.empty()) {
        j["error"] = error;
    }
    const auto& rounds = result != nullptr ? result->rounds : failed_rounds;
    Json tel = Json::array();
    for (const auto& r : rounds) {
        tel.push_back(to_json(r));
    }
    j["rounds"] = std::move(tel);
    if (result != nullptr) {
        j["finish_resamples"] = result->finish_resamples;
        j["coloring"] = result->coloring.assignment;
    }
    return j;
}

namespace {

std::string num(long double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17Lg", x);
    return buf;
}

} // namespace

void write_schedule_csv(std::ostream& out, const Schedule& s)
{
    out << "i,ell,d,keep,uncolor,ratio,ell_hat,d_hat,cond1,cond2,cond3,cond4,cond5\n";
    for (std::size_t i = 0; i < s.states.size(); ++i) {
        const auto& st = s.states[i];
        out << (i + 1) << ',' << st.ell << ',' << st.d << ',' << num(st.keep) << ',' << num(st.uncolor) << ','
            << num(static_cast<long double>(st.d) / static_cast<long double>(st.ell)) << ',' << num(st.ell_hat)
            << ',' << num(st.d_hat);
        for (bool c : st.conditions) {
            out << ',' << (c ? 1 : 0);
        }
        out << '\n';
    }
    if (s.collapse) {
        out << "collapse," << s.collapse->first << ',' << s.collapse->second << '\n';
    }
    out << "i_star," << (s.i_star ? std::to_string(*s.i_star) : std::string("not_reached")) << '\n';
}

void write_stats_csv(std::ostream& out, const Json& config, const RoundStats& stats)
{
    out << "# config " << config.dump() << '\n';
    out << "kind,id,mean,variance,tail_count,uncolored,uncolored_lost,residual_degree\n";
    for (std::size_t v = 0; v < stats.kept_sum.size(); ++v) {
        out << "vertex," << v << ',' << num(stats.kept_mean(static_cast<Vertex>(v))) << ','
            << num(stats.kept_variance(static_cast<Vertex>(v))) << ',' << stats.kept_tail[v] << ",,,\n";
    }
    for (std::size_t c = 0; c < stats.degree_sum.size(); ++c) {
        out << "color," << c << ',' << num(stats.degree_mean(static_cast<Color>(c))) << ','
            << num(stats.degree_variance(static_cast<Color>(c))) << ',' << stats.degree_tail[c] << ",,,\n";
    }
    for (std::size_t t = 0; t < stats.anchor_samples.size(); ++t) {
        const auto& a = stats.anchor_samples[t];
        out << "anchor_trial," << t << ",,,," << a.uncolored << ',' << a.uncolored_lost << ',' << a.residual_degree
            << '\n';
    }
}

Json stats_summary(const DpCover& c, const RoundParams& p, const RoundStats& stats, const Json& config)
{
    Json j;
    j["config"] = config;
    j["trials"] = stats.trials;
    j["identity_failures"] = stats.identity_failures;
    std::uint64_t kept_tail = 0;
    std::uint64_t degree_tail = 0;
    for (auto x : stats.kept_tail) {
        kept_tail += x;
    }
    for (auto x : stats.degree_tail) {
        degree_tail += x;
    }
    j["kept_tail_frequency"] =
        stats.kept_tail.empty() || stats.trials == 0
            ? 0.0
            : static_cast<double>(kept_tail) / static_cast<double>(stats.kept_tail.size() * stats.trials);
    j["degree_tail_frequency"] =
        stats.degree_tail.empty() || stats.trials == 0
            ? 0.0
            : static_cast<double>(degree_tail) / static_cast<double>(stats.degree_tail.size() * stats.trials);

    bool regular = c.vertex_count() > 0;
    for (Vertex v = 0; v < static_cast<Vertex>(c.vertex_count()) && regular; ++v) {
        regular = c.list(v).size() == p.ell;
    }
    for (Color x = 0; x < static_cast<Color>(c.color_count()) && regular; ++x) {
        regular = c.cover().degree(x) == p.d;
    }
    j["regular"] = regular;
    if (!regular || stats.trials < 2) {
        return j;
    }
    const auto d = static_cast<long double>(p.d);
    const auto ell = static_cast<long double>(p.ell);
    const double keep = static_cast<double>(keep_fn(d, ell, p.eta));
    const double uncolor = static_cast<double>(uncolor_fn(d, ell, p.eta));
    const double trials = static_cast<double>(stats.trials);

    const double kept_expected = keep * static_cast<double>(p.ell);
    const double kept_mean = stats.kept_mean(0);
    const double kept_se = std::sqrt(stats.kept_variance(0) / trials);
    const bool kept_pass = kept_se == 0.0 ? std::fabs(kept_mean - kept_expected) <= 1e-9 * kept_expected
                                          : std::fabs(kept_mean - kept_expected) <= 3.0 * kept_se;
    j["kept"] = {{"vertex", 0},
                 {"mean", kept_mean},
                 {"expected", kept_expected},
                 {"standard_error", kept_se},
                 {"pass", kept_pass}};

    const double degree_bound = keep * uncolor * static_cast<double>(p.d) +
                                static_cast<double>(p.d) / static_cast<double>(p.ell);
    const double degree_mean = stats.degree_mean(0);
    const double degree_se = std::sqrt(stats.degree_variance(0) / trials);
    j["residual_degree"] = {{"color", 0},
                            {"mean", degree_mean},
                            {"bound", degree_bound},
                            {"standard_error", degree_se},
                            {"pass", degree_mean <= degree_bound + 3.0 * degree_se}};
    return j;
}

std::string digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

} // namespace dpc
