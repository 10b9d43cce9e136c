#include "dpc/analysis.hpp"
#include "dpc/generators.hpp"
#include "dpc/pipeline.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace dpc;

namespace {

// K2 with lists of size 8 sharing exactly one label: one cover edge, Delta(cover) = 1.
DpCover single_edge_cover()
{
    return from_list_assignment(testing::complete(2), {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 11, 12, 13, 14, 15, 16, 17}});
}

} // namespace

TEST_CASE("finish on an edgeless cover accepts the first draw")
{
    const DpCover c = random_dp_cover(testing::cycle(6), 3, 0.0, 1);
    const FinishResult r = finish(c, 10, 4);
    CHECK(r.resamples == 0);
    CHECK(r.coloring.is_total());
    CHECK(r.conflicts == std::vector<std::size_t>{0});
}

TEST_CASE("finish on one cover edge: mean resamples equals the geometric expectation 1/63")
{
    const DpCover c = single_edge_cover();
    REQUIRE(max_degree(c.cover()) == 1);
    // Each draw of the pair clashes with probability 1/64, independently; the
    // number of resamples is geometric with mean (1/64) / (1 - 1/64).
    double clash = 0;
    for (Color a = 0; a < 8; ++a) {
        for (Color b = 8; b < 16; ++b) {
            clash += testing::adjacent(c.cover(), a, b) ? 1.0 : 0.0;
        }
    }
    clash /= 64.0;
    const double expected = clash / (1.0 - clash);
    CHECK(expected == doctest::Approx(1.0 / 63.0).epsilon(1e-15));

    const int runs = 200000;
    double sum = 0;
    double sq = 0;
    for (int s = 0; s < runs; ++s) {
        const FinishResult r = finish(c, 1000, static_cast<Seed>(s));
        CHECK(verify_proper(c, r.coloring).proper);
        sum += static_cast<double>(r.resamples);
        sq += static_cast<double>(r.resamples * r.resamples);
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sq / runs - mean * mean) / runs);
    CHECK(mean < 2.0);
    CHECK(std::fabs(mean - expected) <= 4 * se);
}

TEST_CASE("finish preconditions and budget")
{
    const DpCover k2 = from_list_assignment(testing::complete(2), {{0}, {0}});
    CHECK_THROWS_AS(finish(k2, 10, 1), PreconditionError);

    // Eight identical labels on K2: the finisher can still clash; a zero budget
    // fails exactly when the first draw clashes.
    const DpCover tight = from_list_assignment(testing::complete(2), {{0, 1, 2, 3, 4, 5, 6, 7},
                                                                      {0, 1, 2, 3, 4, 5, 6, 7}});
    int failures = 0;
    for (Seed s = 0; s < 400; ++s) {
        try {
            finish(tight, 0, s);
        } catch (const ResampleBudgetExhausted& e) {
            CHECK(e.conflicts() == std::vector<std::size_t>{1});
            ++failures;
        }
    }
    CHECK(failures > 0);
    CHECK(failures < 200);
}

TEST_CASE("finish completes dense-list random covers")
{
    for (Seed seed = 0; seed < 5; ++seed) {
        const DpCover c = random_dp_cover(random_regular(200, 4, seed), 32, 1.0, seed);
        const FinishResult r = finish(c, 100000, seed);
        CHECK(r.coloring.is_total());
        CHECK(verify_proper(c, r.coloring).proper);
        CHECK(r.conflicts.back() == 0);
    }
}

TEST_CASE("color_graph on an edgeless base runs no rounds")
{
    const DpCover c = from_list_assignment(Graph(5), {{1}, {2}, {3}, {1, 2}, {4}});
    PipelineConfig cfg;
    cfg.seed = 3;
    const ColoringResult r = color_graph(c, cfg);
    CHECK(r.rounds.empty());
    CHECK(r.finish_resamples == 0);
    CHECK(r.coloring.is_total());
    CHECK(verify_proper(c, r.coloring).proper);
}

TEST_CASE("color_graph skips rounds when lists are already 8 times the degree")
{
    const DpCover c = random_dp_cover(random_regular(60, 3, 2), 24, 1.0, 5);
    PipelineConfig cfg;
    cfg.seed = 9;
    const ColoringResult r = color_graph(c, cfg);
    CHECK(r.rounds.empty());
    CHECK(verify_proper(c, r.coloring).proper);
}

TEST_CASE("color_graph runs nibble rounds with composition checks")
{
    const DpCover c = list_cover(random_girth5_regular(300, 8, 1), 16, 16, 2);
    PipelineConfig cfg;
    cfg.seed = 4;
    cfg.eta = 0.1;
    cfg.check_composition = true;
    const ColoringResult r = color_graph(c, cfg);
    CHECK_FALSE(r.rounds.empty());
    CHECK(r.coloring.is_total());
    CHECK(verify_proper(c, r.coloring).proper);
    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
        CHECK(r.rounds[i].iteration == i + 1);
        CHECK(r.rounds[i].retries < cfg.max_round_retries);
    }

    const ColoringResult again = color_graph(c, cfg);
    CHECK(again.coloring == r.coloring);
}

TEST_CASE("color_graph error paths")
{
    const DpCover k2 = from_list_assignment(testing::complete(2), {{0}, {0}});
    PipelineConfig cfg;
    CHECK_THROWS_AS(color_graph(k2, cfg), PreconditionError);

    cfg.slack = 0.5;
    CHECK_THROWS_AS(color_graph(k2, cfg), PreconditionError);
    cfg.slack = 1.0;
    cfg.eta = 1.5;
    CHECK_THROWS_AS(color_graph(k2, cfg), PreconditionError);
    cfg.eta.reset();

    DpCover broken(testing::complete(2), Graph(2), {{0, 1}, {1}});
    CHECK_THROWS_AS(color_graph(broken, cfg), InvalidCover);

    cfg.schedule_input.d = 1;
    const DpCover c = random_dp_cover(random_regular(20, 3, 1), 24, 1.0, 1);
    CHECK_THROWS_AS(color_graph(c, cfg), PreconditionError);
}

TEST_CASE("color_graph reports an exhausted round budget with telemetry")
{
    const DpCover c = list_cover(random_girth5_regular(300, 8, 1), 16, 16, 2);
    PipelineConfig cfg;
    cfg.seed = 4;
    cfg.eta = 0.1;
    cfg.max_rounds = 1;
    try {
        color_graph(c, cfg);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.stage() == "rounds");
        CHECK(e.rounds().size() == 1);
    }
}
