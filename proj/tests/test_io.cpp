#include "dpc/generators.hpp"
#include "dpc/io.hpp"

#include <doctest.h>

#include <sstream>

#include "oracles.hpp"

using namespace dpc;

TEST_CASE("cover JSON round trip")
{
    const DpCover c = random_dp_cover(random_regular(30, 4, 2), 5, 0.7, 3);
    std::stringstream ss;
    write_cover(ss, c);
    const std::string first = ss.str();
    CHECK(read_cover(ss) == c);
    std::stringstream again;
    write_cover(again, cover_from_json(cover_to_json(c)));
    CHECK(again.str() == first);
}

TEST_CASE("cover JSON rejects malformed and invalid documents")
{
    CHECK_THROWS_AS(cover_from_json(Json::parse(R"({"lists": []})")), ParseError);
    CHECK_THROWS_AS(cover_from_json(Json::parse(R"({"base": {"vertex_count": 2, "edges": [[0, 0]]},
        "lists": [[0], [1]], "cover_edges": []})")),
                    ParseError);
    // Cover edge inside a list.
    CHECK_THROWS_AS(cover_from_json(Json::parse(R"({"base": {"vertex_count": 2, "edges": [[0, 1]]},
        "lists": [[0, 1], [2]], "cover_edges": [[0, 1]]})")),
                    InvalidCover);
    // Cover edge across a non-edge.
    CHECK_THROWS_AS(cover_from_json(Json::parse(R"({"base": {"vertex_count": 2, "edges": []},
        "lists": [[0], [1]], "cover_edges": [[0, 1]]})")),
                    InvalidCover);
    std::istringstream junk("{not json");
    CHECK_THROWS_AS(read_cover(junk), ParseError);
}

TEST_CASE("config parsing")
{
    const PipelineConfig cfg = pipeline_config_from_json(
        Json::parse(R"({"seed": 12, "eta": 0.1, "slack": 2.0, "schedule": {"epsilon": 0.05, "t": 2}})"));
    CHECK(cfg.seed == 12);
    REQUIRE(cfg.eta.has_value());
    CHECK(*cfg.eta == 0.1);
    CHECK(cfg.slack == 2.0);
    CHECK(cfg.schedule_input.epsilon == 0.05);
    CHECK(cfg.schedule_input.t == 2);
    CHECK_FALSE(cfg.retrim);

    const PipelineConfig back = pipeline_config_from_json(to_json(cfg));
    CHECK(to_json(back) == to_json(cfg));

    CHECK_THROWS_AS(pipeline_config_from_json(Json::parse(R"({"sede": 1})")), ParseError);
    CHECK_THROWS_AS(pipeline_config_from_json(Json::parse(R"({"slack": "big"})")), ParseError);
    CHECK_THROWS_AS(schedule_input_from_json(Json::parse(R"([1])")), ParseError);

    GenSpec spec;
    spec.kind = GenKind::DpCover;
    spec.n = 10;
    spec.d = 3;
    spec.ell = 4;
    spec.rho = 0.5;
    spec.seed = 8;
    const GenSpec parsed = gen_spec_from_json(to_json(spec));
    CHECK(to_json(parsed) == to_json(spec));
    CHECK_THROWS_AS(gen_spec_from_json(Json::parse(R"({"kind": "torus"})")), std::exception);
}

TEST_CASE("digest is 64-bit FNV-1a")
{
    CHECK(digest("") == "cbf29ce484222325");
    CHECK(digest("a") == "af63dc4c8601ec8c");
    CHECK(digest("foobar") == "85944171f73967e8");
}

TEST_CASE("schedule CSV layout")
{
    ScheduleInput in;
    in.d = 1000000;
    in.epsilon = 0.1;
    in.t = 2;
    const Schedule s = compute_schedule(in, 100000);
    std::ostringstream out;
    write_schedule_csv(out, s);
    const std::string csv = out.str();
    CHECK(csv.rfind("i,ell,d,keep,uncolor,ratio,ell_hat,d_hat,cond1,cond2,cond3,cond4,cond5\n", 0) == 0);
    CHECK(csv.find("\n1,79621,1000000,") != std::string::npos);
    CHECK(csv.find("i_star,") != std::string::npos);
    std::ostringstream again;
    write_schedule_csv(again, compute_schedule(in, 100000));
    CHECK(again.str() == csv);
}

TEST_CASE("stats CSV and summary")
{
    const DpCover c = random_dp_cover(random_regular(20, 3, 1), 4, 1.0, 1);
    const RoundParams p{0.3, 3, 4, 0.2};
    const RoundStats one = round_stats(c, p, Color{0}, 1, 5);
    std::ostringstream csv;
    write_stats_csv(csv, Json{{"trials", 1}}, one);
    const std::string text = csv.str();
    CHECK(text.rfind("# config {\"trials\":1}\n", 0) == 0);
    CHECK(text.find("anchor_trial,0,") != std::string::npos);

    const RoundStats many = round_stats(c, p, std::nullopt, 2000, 5);
    const Json summary = stats_summary(c, p, many, Json::object());
    CHECK(summary["regular"] == true);
    CHECK(summary["kept"]["pass"] == true);
    CHECK(summary["identity_failures"] == 0);
}
