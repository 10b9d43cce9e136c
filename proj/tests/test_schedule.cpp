#include "dpc/error.hpp"
#include "dpc/schedule.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <doctest.h>

using namespace dpc;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

ScheduleInput input(std::int64_t d, double eps, std::int64_t t)
{
    ScheduleInput in;
    in.d = d;
    in.epsilon = eps;
    in.t = t;
    return in;
}

} // namespace

TEST_CASE("derive_constants examples")
{
    const ScheduleConstants k = derive_constants(input(1000, 0.01, 1));
    CHECK(static_cast<double>(k.kappa) == doctest::Approx(1.005 * std::log1p(0.0001)).epsilon(1e-14));
    CHECK(static_cast<double>(k.kappa) == doctest::Approx(1.00495e-4).epsilon(1e-5));
    CHECK(static_cast<double>(derive_constants(input(1000, 0.1, 2)).beta) == doctest::Approx(0.02).epsilon(1e-15));

    const ScheduleConstants big = derive_constants(input(1000000, 0.1, 1));
    CHECK(big.ell_1 == 79621);
    // Independent 50-digit evaluation of (1 + eps) d / ln d.
    const Big want = Big("1.1") * Big(1000000) / boost::multiprecision::log(Big(1000000));
    CHECK(big.ell_1 == boost::multiprecision::llround(want));
    CHECK(static_cast<double>(big.eta) ==
          doctest::Approx(static_cast<double>(big.kappa / std::log(1e6L))).epsilon(1e-15));
}

TEST_CASE("schedule input preconditions")
{
    CHECK_THROWS_AS(derive_constants(input(1000, 0.0, 1)), PreconditionError);
    CHECK_THROWS_AS(derive_constants(input(1000, 0.2, 1)), PreconditionError);
    CHECK_THROWS_AS(derive_constants(input(1000, 0.1, 0)), PreconditionError);
    CHECK_THROWS_AS(derive_constants(input(2, 0.1, 1)), PreconditionError);
}

TEST_CASE("computed schedule matches a 50-digit recomputation of the recursion")
{
    for (std::int64_t d : {10000, 1000000}) {
        for (double eps : {0.02, 0.1}) {
            const ScheduleInput in = input(d, eps, 2);
            const Schedule s = compute_schedule(in, 1000);
            CAPTURE(d);
            CAPTURE(eps);
            REQUIRE_FALSE(s.states.empty());
            const Big log_d = boost::multiprecision::log(Big(d));
            const Big e(eps);
            const Big kappa = (1 + e / 2) * boost::multiprecision::log1p(e / 100);
            const Big eta = kappa / log_d;
            const Big beta = Big(1) / 50;
            CHECK(static_cast<double>(s.constants.kappa) ==
                  doctest::Approx(static_cast<double>(kappa)).epsilon(1e-15));
            Big ell(s.states[0].ell);
            Big dd(d);
            for (std::size_t i = 0; i < s.states.size(); ++i) {
                const auto& st = s.states[i];
                CHECK(st.ell == static_cast<std::int64_t>(ell));
                CHECK(st.d == static_cast<std::int64_t>(dd));
                const Big keep = boost::multiprecision::pow(1 - eta / ell, dd);
                CHECK(static_cast<double>(st.keep) == doctest::Approx(static_cast<double>(keep)).epsilon(1e-13));
                const Big uncolor = 1 - eta * keep;
                ell = boost::multiprecision::ceil(keep * ell - boost::multiprecision::pow(ell, 1 - beta));
                dd = boost::multiprecision::floor(keep * uncolor * dd + boost::multiprecision::pow(dd, 1 - beta));
            }
        }
    }
}

TEST_CASE("first schedule state instantiates the definitions")
{
    const Schedule s = compute_schedule(input(1000000, 0.1, 2), 1000);
    const auto& st = s.states.front();
    CHECK(st.ell == 79621);
    CHECK(st.d == 1000000);
    const long double want = std::pow(1.0L - s.constants.kappa / (79621.0L * std::log(1e6L)), 1e6L);
    CHECK(static_cast<double>(st.keep) == doctest::Approx(static_cast<double>(want)).epsilon(1e-12));
    CHECK(static_cast<double>(st.uncolor) ==
          doctest::Approx(static_cast<double>(1.0L - s.constants.eta * st.keep)).epsilon(1e-15));
}

TEST_CASE("hat deviation report")
{
    const Schedule s = compute_schedule(input(1000000, 0.1, 2), 1000);
    const auto hats = hat_deviation_report(s);
    REQUIRE(hats.size() == s.states.size());
    CHECK(hats[0].ell_ratio == 0.0L);
    CHECK(hats[0].d_ratio == 0.0L);

    const Schedule one = compute_schedule(input(1000000, 0.1, 2), 1);
    CHECK(one.states.size() == 1);
    CHECK(one.end == ScheduleEnd::MaxIters);
    CHECK(hat_deviation_report(one).size() == 1);
}

TEST_CASE("a schedule ends by reaching, collapsing or the cap")
{
    for (std::int64_t d : {10000, 100000, 1000000}) {
        for (std::int64_t t : {1, 2, 3}) {
            const Schedule s = compute_schedule(input(d, 0.1, t), 100000);
            CAPTURE(d);
            CAPTURE(t);
            switch (s.end) {
            case ScheduleEnd::Reached:
                REQUIRE(s.i_star.has_value());
                CHECK(*s.i_star == s.states.size());
                CHECK(s.states.back().ell >= 8 * s.states.back().d);
                break;
            case ScheduleEnd::Collapsed:
                REQUIRE(s.collapse.has_value());
                CHECK((s.collapse->first <= 0 || s.collapse->second <= 0));
                CHECK_FALSE(s.i_star.has_value());
                break;
            case ScheduleEnd::MaxIters:
                CHECK(s.states.size() == 100000);
                break;
            }
            for (const auto& st : s.states) {
                CHECK(st.ell > 0);
                CHECK(st.d > 0);
            }
        }
    }
}

TEST_CASE("ratio law holds pointwise on the checked prefix")
{
    for (std::int64_t d : {10000, 1000000, 10000000}) {
        const Schedule s = compute_schedule(input(d, 0.05, 1), 100000);
        const ScheduleLaws laws = check_schedule_laws(s);
        CHECK(laws.ratio_violations == 0);
        CHECK(laws.hat_violations == 0);
    }
}
