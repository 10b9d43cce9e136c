#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dpc {

struct ScheduleInput {
    std::int64_t d = 0;
    double epsilon = 0.1;
    std::int64_t s = 1;
    std::int64_t t = 1;
    double d_tilde = 2.0;     // stand-in for the unspecified degree threshold of condition (1)
    double alpha_tilde = 1.0; // stand-in for the unspecified constant of condition (4)
};

/// Upper end of the accepted epsilon range.
inline constexpr double kMaxEpsilon = 0.1;

/// Throws PreconditionError unless 0 < epsilon <= kMaxEpsilon, s, t >= 1 and d >= 3.
void check(const ScheduleInput& in);

struct ScheduleConstants {
    long double kappa = 0;
    long double eta = 0;
    long double beta = 0;
    std::int64_t ell_1 = 0;
};

/// kappa = (1 + eps/2) ln(1 + eps/100), eta = kappa / ln d, beta = 1/(25 t),
/// ell_1 = round((1 + eps) d / ln d).
ScheduleConstants derive_constants(const ScheduleInput& in);

struct ScheduleState {
    std::int64_t ell = 0;
    std::int64_t d = 0;
    long double keep = 0;
    long double uncolor = 0;
    long double ell_hat = 0;
    long double d_hat = 0;
    std::array<bool, 5> conditions{};
};

enum class ScheduleEnd {
    Reached,   // ell >= 8 d at the last state
    MaxIters,  // iteration cap hit first
    Collapsed, // the next ell or d would be <= 0
};

struct Schedule {
    ScheduleInput input;
    ScheduleConstants constants;
    std::vector<ScheduleState> states; // states[i-1] is iteration i
    ScheduleEnd end = ScheduleEnd::MaxIters;
    std::optional<std::size_t> i_star; // 1-based
    /// The (ell, d) pair that ended a collapsed schedule.
    std::optional<std::pair<std::int64_t, std::int64_t>> collapse;
};

/// Runs ell_{i+1} = ceil(keep_i ell_i - ell_i^(1-beta)) and
/// d_{i+1} = floor(keep_i uncolor_i d_i + d_i^(1-beta)) from (ell_1, d) until
/// ell_i >= 8 d_i, a nonpositive value, or max_iters states.
Schedule compute_schedule(const ScheduleInput& in, std::size_t max_iters);

struct HatDeviation {
    long double ell_ratio = 0; // |ell_i - ell_hat_i| / ell_hat_i^(1-beta/2)
    long double d_ratio = 0;   // |d_i - d_hat_i| / d_hat_i^(1-beta/2)
};

std::vector<HatDeviation> hat_deviation_report(const Schedule& s);

/// Numeric checks of the schedule lemmas on one computed schedule.
struct ScheduleLaws {
    // Ratio d_i/ell_i nonincreasing over the prefix where ell_j^beta and
    // d_j^beta are >= 30 ln^2 d and ell_j <= 8 d_j.
    std::size_t ratio_checked = 0;
    std::size_t ratio_violations = 0;
    // ell_i >= d^(eps/15) for i < i_star; a collapse counts as one violation.
    std::size_t floor_checked = 0;
    std::size_t floor_violations = 0;
    // i_star reached and <= (10/kappa) ln d ln ln d.
    bool reached = false;
    long double i_star_bound = 0;
    bool termination_ok = false;
    // Hat ratios <= 1 and keep bounds over the prefix where ell_j^beta and
    // d_j^beta are >= 30 ln^4 d.
    std::size_t hat_checked = 0;
    std::size_t hat_violations = 0;
    std::size_t keep_checked = 0;
    std::size_t keep_violations = 0;
};

ScheduleLaws check_schedule_laws(const Schedule& s);

} // namespace dpc
