#pragma once

#include "dpc/cover.hpp"
#include "dpc/error.hpp"
#include "dpc/rng.hpp"

#include <cstddef>
#include <vector>

namespace dpc {

/// (1 - eta/ell)^d.
long double keep_fn(long double d, long double ell, long double eta);

/// 1 - eta * keep.
long double uncolor_fn(long double d, long double ell, long double eta);

/// keep * ell - ell^(1-beta).
long double ell_next(long double d, long double ell, long double eta, long double beta);

/// keep * uncolor * d + d^(1-beta).
long double d_next(long double d, long double ell, long double eta, long double beta);

struct RoundParams {
    double eta = 0.0;
    std::size_t d = 1;
    std::size_t ell = 1;
    double beta = 0.04;
};

/// Throws PreconditionError unless 0 < eta <= 1, d >= 1, ell >= 1, 0 < beta < 1.
void check(const RoundParams& p);

/// One round of the wasteful procedure. Every vertex v independently joins
/// the activated set with probability eta and, if it does, is assigned a
/// uniform color of its list. kept(v) holds the colors of L(v) with no cover
/// neighbor among the assigned colors; v is colored iff its assigned color
/// was kept.
struct RoundOutcome {
    Seed seed = 0;
    std::vector<Vertex> activated;           // ascending
    std::vector<Color> assigned;             // per vertex; kBlank unless activated
    std::vector<std::vector<Color>> kept;    // per vertex, ascending
    PartialColoring coloring;
    Subcover residual;                       // empty when not requested
};

/// Each vertex draws exactly two words from a stream seeded by (seed, v):
/// the activation coin and the color index. Only eta is read from `p`.
RoundOutcome run_round(const DpCover& c, const RoundParams& p, Seed seed, bool with_residual = true);

/// Counts of the events |kept(v)| <= ell_target and d'(c) >= d_target, where
/// d'(c) is the degree of a residual color in the residual cover.
struct RoundEvents {
    std::size_t list_events = 0;
    std::size_t degree_events = 0;

    std::size_t total() const noexcept { return list_events + degree_events; }
    bool good() const noexcept { return total() == 0; }
};

RoundEvents count_events(const RoundOutcome& o, double ell_target, double d_target);

bool round_is_good(const RoundOutcome& o, double ell_target, double d_target);

/// Raised when no good round was found; carries the outcome with the fewest events.
class RetriesExhausted : public BudgetExceeded {
public:
    RetriesExhausted(std::size_t attempts, RoundOutcome best, RoundEvents best_events);

    std::size_t attempts() const noexcept { return attempts_; }
    const RoundOutcome& best() const noexcept { return best_; }
    const RoundEvents& best_events() const noexcept { return best_events_; }

private:
    std::size_t attempts_;
    RoundOutcome best_;
    RoundEvents best_events_;
};

/// Runs rounds with seeds seed, seed+1, ... (at most max_attempts of them)
/// and returns the first good one. Retries used = outcome.seed - seed.
RoundOutcome run_round_until_good(const DpCover& c, const RoundParams& p, double ell_target, double d_target,
                                  std::size_t max_attempts, Seed seed);

} // namespace dpc
