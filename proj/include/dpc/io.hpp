#pragma once

#include "dpc/analysis.hpp"
#include "dpc/cover.hpp"
#include "dpc/generators.hpp"
#include "dpc/pipeline.hpp"
#include "dpc/schedule.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dpc {

using Json = nlohmann::ordered_json;

/// {"base": {"vertex_count", "edges"}, "lists": [[color...]...], "cover_edges": [[a, b]...]}
Json cover_to_json(const DpCover& c);

/// Throws ParseError on a malformed document and InvalidCover when the cover
/// breaks an invariant.
DpCover cover_from_json(const Json& j);

void write_cover(std::ostream& out, const DpCover& c);
DpCover read_cover(std::istream& in);

Json to_json(const ScheduleInput& in);
Json to_json(const PipelineConfig& cfg);
Json to_json(const GenSpec& spec);
Json to_json(const RoundTelemetry& t);

/// Fields missing from `j` keep their value in `base`. Unknown keys are ParseErrors.
ScheduleInput schedule_input_from_json(const Json& j, ScheduleInput base = {});
PipelineConfig pipeline_config_from_json(const Json& j, PipelineConfig base = {});
GenSpec gen_spec_from_json(const Json& j, GenSpec base = {});

/// Result document for cmd_color. Exactly one of `result` and `error` is set.
Json result_to_json(const PipelineConfig& cfg, const ColoringResult* result, const std::string& status,
                    const std::string& error, const std::vector<RoundTelemetry>& failed_rounds);

/// Columns i, ell, d, keep, uncolor, ratio, ell_hat, d_hat, cond1..cond5,
/// then one "i_star,<value>" line.
void write_schedule_csv(std::ostream& out, const Schedule& s);

/// One row per vertex and per color, plus one row per trial in anchor mode.
/// The first line is a comment holding the configuration.
void write_stats_csv(std::ostream& out, const Json& config, const RoundStats& stats);

/// Mean comparisons against the closed forms for a fixed vertex and color,
/// made only when the cover is p.d-regular with uniform lists of size p.ell.
Json stats_summary(const DpCover& c, const RoundParams& p, const RoundStats& stats, const Json& config);

/// FNV-1a 64-bit hash as 16 hex digits.
std::string digest(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace dpc
