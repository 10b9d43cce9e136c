#include "dpc/analysis.hpp"
#include "dpc/generators.hpp"
#include "dpc/nibble.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace dpc;

namespace {

DpCover k2_cover(std::size_t ell)
{
    std::vector<std::vector<std::int64_t>> labels(2);
    for (std::size_t i = 0; i < ell; ++i) {
        labels[0].push_back(static_cast<std::int64_t>(i));
        labels[1].push_back(static_cast<std::int64_t>(i));
    }
    return from_list_assignment(testing::complete(2), labels);
}

} // namespace

TEST_CASE("closed-form parameter functions")
{
    CHECK(keep_fn(7, 3, 0) == 1.0L);
    CHECK(keep_fn(1, 1, 1) == 0.0L);
    CHECK(static_cast<double>(keep_fn(2, 4, 1)) == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(uncolor_fn(5, 3, 0) == 1.0L);
    CHECK(static_cast<double>(uncolor_fn(2, 4, 1)) == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK(uncolor_fn(1, 1, 1) == 1.0L);
    CHECK(static_cast<double>(ell_next(2, 4, 1, 0.5)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(static_cast<double>(d_next(2, 4, 1, 0.5)) == doctest::Approx(0.4921875 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(static_cast<double>(ell_next(9, 16, 0, 0.25)) == doctest::Approx(16 - 8).epsilon(1e-14));
}

TEST_CASE("run_round micro examples")
{
    const RoundParams p{1.0, 1, 3, 0.5};
    const DpCover lone = from_list_assignment(Graph(1), {{1, 2, 3}});
    const RoundOutcome o = run_round(lone, p, 5);
    CHECK(o.activated == std::vector<Vertex>{0});
    CHECK(o.kept[0].size() == 3);
    CHECK(o.coloring.colored(0));

    const DpCover k2 = k2_cover(1);
    const RoundOutcome q = run_round(k2, p, 7);
    CHECK(q.activated.size() == 2);
    CHECK(q.kept[0].empty());
    CHECK(q.kept[1].empty());
    CHECK_FALSE(q.coloring.colored(0));
    CHECK_FALSE(q.coloring.colored(1));
}

TEST_CASE("K2 perfect matching with ell = 2: enumeration equals keep * ell, Monte Carlo agrees")
{
    const DpCover k2 = k2_cover(2);
    const RoundParams p{1.0, 1, 2, 0.5};
    // Four equally likely outcomes: equal labels clash (both lists lose one color), distinct labels
    // each remove the partner's matched color. |K(0)| is 1 in every outcome.
    const ExactExpectation exact = exact_round_expectation(k2, p);
    CHECK(static_cast<double>(exact.kept[0]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(static_cast<double>(keep_fn(1, 2, 1) * 2) == doctest::Approx(1.0).epsilon(1e-15));
    double sum = 0;
    const int trials = 4000;
    for (int s = 0; s < trials; ++s) {
        sum += static_cast<double>(run_round(k2, p, static_cast<Seed>(s), false).kept[0].size());
    }
    CHECK(sum / trials == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round outcome invariants on random covers")
{
    for (Seed seed = 0; seed < 30; ++seed) {
        const DpCover c = random_dp_cover(random_regular(50, 4, seed), 6, 0.7, seed);
        const RoundParams p{0.3, 4, 6, 0.2};
        const RoundOutcome o = run_round(c, p, seed * 13);
        std::vector<char> chosen(c.color_count(), 0);
        for (Vertex v : o.activated) {
            const auto l = c.list(v);
            CHECK(std::find(l.begin(), l.end(), o.assigned[v]) != l.end());
            chosen[o.assigned[v]] = 1;
        }
        for (Vertex v = 0; v < 50; ++v) {
            // Kept set recomputed from scratch.
            std::vector<Color> want;
            for (Color x : c.list(v)) {
                bool blocked = false;
                for (Color y = 0; y < static_cast<Color>(c.color_count()); ++y) {
                    blocked = blocked || (chosen[y] != 0 && testing::adjacent(c.cover(), x, y));
                }
                if (!blocked) {
                    want.push_back(x);
                }
            }
            CHECK(o.kept[v] == want);
            const bool should = o.assigned[v] != kBlank &&
                                std::find(want.begin(), want.end(), o.assigned[v]) != want.end();
            CHECK(o.coloring.colored(v) == should);
        }
        CHECK(verify_proper(c, o.coloring).proper);
        // The residual's colors see no assigned color.
        for (Color x = 0; x < static_cast<Color>(o.residual.cover.color_count()); ++x) {
            for (Color y : c.cover().neighbors(o.residual.color_origin[x])) {
                const bool hit = o.coloring.colored(c.owner(y)) && o.coloring[c.owner(y)] == y;
                CHECK_FALSE(hit);
            }
        }
    }
}

TEST_CASE("run_round is deterministic")
{
    const DpCover c = random_dp_cover(random_regular(40, 3, 1), 5, 1.0, 2);
    const RoundParams p{0.4, 3, 5, 0.2};
    const RoundOutcome a = run_round(c, p, 99);
    const RoundOutcome b = run_round(c, p, 99);
    CHECK(a.assigned == b.assigned);
    CHECK(a.kept == b.kept);
    CHECK(a.coloring == b.coloring);
    CHECK(a.residual.cover == b.residual.cover);
}

TEST_CASE("round_is_good and the retry loop")
{
    const DpCover c = random_dp_cover(random_regular(40, 3, 1), 5, 1.0, 2);
    const RoundParams p{0.4, 3, 5, 0.2};
    const RoundOutcome intact = run_round(c, RoundParams{0.0, 3, 5, 0.2}, 1);
    CHECK(round_is_good(intact, 4.5, 4.0));

    const RoundOutcome k2 = run_round(k2_cover(1), RoundParams{1.0, 1, 1, 0.5}, 1);
    CHECK_FALSE(round_is_good(k2, 0.0, 10.0));

    const RoundOutcome first = run_round_until_good(c, p, -1.0, 4.0, 5, 70);
    CHECK(first.seed == 70);

    try {
        run_round_until_good(c, p, 5.0, -1.0, 4, 70);
        FAIL("expected RetriesExhausted");
    } catch (const RetriesExhausted& e) {
        CHECK(e.attempts() == 4);
        CHECK(e.best_events().degree_events > 0);
    }
}

TEST_CASE("good-round frequency grows with slack")
{
    const DpCover c = random_dp_cover(random_regular(60, 16, 3), 12, 1.0, 4);
    const double eta = 0.1;
    const double beta = 0.2;
    auto good_fraction = [&](double slack) {
        int good = 0;
        for (Seed s = 0; s < 200; ++s) {
            const RoundOutcome o = run_round(c, RoundParams{eta, 16, 12, beta}, s);
            const double lt = std::max(0.0, static_cast<double>(ell_next(16, 12, eta, beta)) / slack);
            const double dt = static_cast<double>(d_next(16, 12, eta, beta)) * slack;
            good += round_is_good(o, lt, dt) ? 1 : 0;
        }
        return good;
    };
    const int g1 = good_fraction(1.0);
    const int g15 = good_fraction(1.5);
    const int g3 = good_fraction(3.0);
    CHECK(g1 <= g15);
    CHECK(g15 <= g3);
}

TEST_CASE("round targets with slack 1.5 on a 16-regular cover succeed within 50 retries")
{
    const double eta = 0.1;
    const double beta = 1.0 / 25.0;
    int ok = 0;
    for (Seed run = 0; run < 100; ++run) {
        const DpCover c = random_dp_cover(random_regular(40, 16, run), 12, 1.0, run + 1000);
        const double lt = std::max(0.0, static_cast<double>(ell_next(16, 12, eta, beta)) / 1.5);
        const double dt = static_cast<double>(d_next(16, 12, eta, beta)) * 1.5;
        try {
            run_round_until_good(c, RoundParams{eta, 16, 12, beta}, lt, dt, 50, run * 1000);
            ++ok;
        } catch (const RetriesExhausted&) {
        }
    }
    CHECK(ok >= 99);
}
