#pragma once

#include "dpc/cover.hpp"
#include "dpc/error.hpp"
#include "dpc/schedule.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dpc {

struct PipelineConfig {
    ScheduleInput schedule_input;              // d = 0 means the input's max cover degree
    double slack = 1.0;                        // targets become ell'/slack and d' * slack
    std::size_t max_round_retries = 50;        // attempts per round
    std::size_t max_finish_resamples = 1000000;
    Seed seed = 0;
    bool regularize_first = false;
    std::optional<double> eta;                 // overrides kappa / ln d
    std::size_t max_rounds = 10000;
    bool retrim = false;                       // re-trim to the smallest surviving list after each round
    bool check_composition = false;            // full scan after every round
};

/// Throws PreconditionError when slack < 1, a budget is 0 or eta is outside (0, 1].
void check(const PipelineConfig& cfg);

struct RoundTelemetry {
    std::size_t iteration = 0;
    std::size_t retries = 0;
    std::size_t ell = 0;                  // uniform list size entering the round
    std::size_t d = 0;                    // degree bound used for the round
    double ell_target = 0;
    double d_target = 0;
    std::size_t min_kept = 0;             // over vertices left uncolored
    std::size_t max_residual_degree = 0;
    std::size_t colored = 0;              // vertices colored by this round
    std::size_t remaining = 0;            // uncolored vertices after the round
};

struct FinishResult {
    PartialColoring coloring;
    std::size_t resamples = 0;
    std::vector<std::size_t> conflicts; // violated cover edges before each step
};

class ResampleBudgetExhausted : public BudgetExceeded {
public:
    ResampleBudgetExhausted(std::size_t budget, std::vector<std::size_t> conflicts);
    const std::vector<std::size_t>& conflicts() const noexcept { return conflicts_; }

private:
    std::vector<std::size_t> conflicts_;
};

/// Completes a coloring by resampling: every vertex takes a uniform color of
/// its list, then while some cover edge joins two chosen colors the vertices
/// of the lowest such edge both redraw. Requires every list to have at least
/// 8 * max cover degree colors.
FinishResult finish(const DpCover& c, std::size_t max_resamples, Seed seed);

struct ColoringResult {
    PartialColoring coloring; // total and proper on the input cover
    std::vector<RoundTelemetry> rounds;
    std::size_t finish_resamples = 0;
};

/// Raised when a stage ran out of budget; carries the telemetry so far.
class PipelineError : public BudgetExceeded {
public:
    PipelineError(std::string stage, const std::string& what, std::vector<RoundTelemetry> rounds);
    const std::string& stage() const noexcept { return stage_; }
    const std::vector<RoundTelemetry>& rounds() const noexcept { return rounds_; }

private:
    std::string stage_;
    std::vector<RoundTelemetry> rounds_;
};

/// Trims to uniform lists, runs good rounds until the smallest list holds at
/// least 8 times the largest residual cover degree, then finishes. The result
/// is verified before it is returned.
ColoringResult color_graph(const DpCover& c, const PipelineConfig& cfg);

} // namespace dpc
