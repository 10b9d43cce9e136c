#include "dpc/schedule.hpp"

#include "dpc/error.hpp"
#include "dpc/nibble.hpp"

#include <cmath>
#include <string>

namespace dpc {

void check(const ScheduleInput& in)
{
    if (!(in.epsilon > 0.0 && in.epsilon <= kMaxEpsilon)) {
        throw PreconditionError("schedule: epsilon must lie in (0, " + std::to_string(kMaxEpsilon) + "]");
    }
    if (in.s < 1 || in.t < 1) {
        throw PreconditionError("schedule: s and t must be positive");
    }
    if (in.d < 3) {
        throw PreconditionError("schedule: d must be at least 3");
    }
}

ScheduleConstants derive_constants(const ScheduleInput& in)
{
    check(in);
    const long double eps = in.epsilon;
    const long double log_d = std::log(static_cast<long double>(in.d));
    ScheduleConstants k;
    k.kappa = (1.0L + eps / 2.0L) * std::log1p(eps / 100.0L);
    k.eta = k.kappa / log_d;
    k.beta = 1.0L / (25.0L * static_cast<long double>(in.t));
    k.ell_1 = std::llround((1.0L + eps) * static_cast<long double>(in.d) / log_d);
    if (!(k.eta < 1.0L) || k.ell_1 < 1) {
        throw PreconditionError("schedule: d = " + std::to_string(in.d) + " is too small");
    }
    return k;
}

namespace {

std::array<bool, 5> conditions(const ScheduleInput& in, const ScheduleConstants& k, std::int64_t ell, std::int64_t d)
{
    const long double dl = static_cast<long double>(d);
    const long double el = static_cast<long double>(ell);
    const long double log_di = std::log(dl);
    std::array<bool, 5> c{};
    c[0] = dl >= in.d_tilde;
    c[1] = k.eta * dl < el && el < 8.0L * dl;
    c[2] = static_cast<long double>(in.s) <= std::pow(dl, 0.25L);
    c[3] = log_di > 1.0L && static_cast<long double>(in.t) <= in.alpha_tilde * log_di / std::log(log_di);
    c[4] = log_di > 0.0L && 1.0L / std::pow(log_di, 5.0L) < k.eta && k.eta < 1.0L / log_di;
    return c;
}

} // namespace

Schedule compute_schedule(const ScheduleInput& in, std::size_t max_iters)
{
    Schedule s;
    s.input = in;
    s.constants = derive_constants(in);
    const auto& k = s.constants;

    std::int64_t ell = k.ell_1;
    std::int64_t d = in.d;
    long double ell_hat = static_cast<long double>(ell);
    long double d_hat = static_cast<long double>(d);
    while (s.states.size() < max_iters) {
        ScheduleState st;
        st.ell = ell;
        st.d = d;
        st.keep = keep_fn(static_cast<long double>(d), static_cast<long double>(ell), k.eta);
        st.uncolor = 1.0L - k.eta * st.keep;
        st.ell_hat = ell_hat;
        st.d_hat = d_hat;
        st.conditions = conditions(in, k, ell, d);
        s.states.push_back(st);
        if (ell >= 8 * d) {
            s.end = ScheduleEnd::Reached;
            s.i_star = s.states.size();
            return s;
        }
        const long double el = static_cast<long double>(ell);
        const long double dl = static_cast<long double>(d);
        const long double next_ell = std::ceil(st.keep * el - std::pow(el, 1.0L - k.beta));
        const long double next_d = std::floor(st.keep * st.uncolor * dl + std::pow(dl, 1.0L - k.beta));
        ell_hat *= st.keep;
        d_hat *= st.keep * st.uncolor;
        if (next_ell <= 0 || next_d <= 0) {
            s.end = ScheduleEnd::Collapsed;
            s.collapse = {static_cast<std::int64_t>(next_ell), static_cast<std::int64_t>(next_d)};
            return s;
        }
        ell = static_cast<std::int64_t>(next_ell);
        d = static_cast<std::int64_t>(next_d);
    }
    s.end = ScheduleEnd::MaxIters;
    return s;
}

std::vector<HatDeviation> hat_deviation_report(const Schedule& s)
{
    const long double exponent = 1.0L - s.constants.beta / 2.0L;
    std::vector<HatDeviation> out;
    out.reserve(s.states.size());
    for (const auto& st : s.states) {
        HatDeviation h;
        h.ell_ratio = std::fabs(static_cast<long double>(st.ell) - st.ell_hat) / std::pow(st.ell_hat, exponent);
        h.d_ratio = std::fabs(static_cast<long double>(st.d) - st.d_hat) / std::pow(st.d_hat, exponent);
        out.push_back(h);
    }
    return out;
}

ScheduleLaws check_schedule_laws(const Schedule& s)
{
    ScheduleLaws laws;
    const auto& k = s.constants;
    const long double d = static_cast<long double>(s.input.d);
    const long double log_d = std::log(d);
    const long double log2_floor = 30.0L * log_d * log_d;
    const long double log4_floor = log2_floor * log_d * log_d;

    auto powers_at_least = [&](const ScheduleState& st, long double floor) {
        return std::pow(static_cast<long double>(st.ell), k.beta) >= floor &&
               std::pow(static_cast<long double>(st.d), k.beta) >= floor;
    };

    // Monotone ratio over the prefix satisfying its hypotheses.
    for (std::size_t i = 0; i + 1 < s.states.size(); ++i) {
        const auto& st = s.states[i];
        if (!powers_at_least(st, log2_floor) || st.ell > 8 * st.d) {
            break;
        }
        const auto& nx = s.states[i + 1];
        ++laws.ratio_checked;
        const long double now = static_cast<long double>(st.d) / static_cast<long double>(st.ell);
        const long double next = static_cast<long double>(nx.d) / static_cast<long double>(nx.ell);
        if (next > now) {
            ++laws.ratio_violations;
        }
    }

    // List floor for i < i_star.
    const long double floor = std::pow(d, static_cast<long double>(s.input.epsilon) / 15.0L);
    const std::size_t before_star = s.i_star ? *s.i_star - 1 : s.states.size();
    for (std::size_t i = 0; i < before_star; ++i) {
        ++laws.floor_checked;
        if (static_cast<long double>(s.states[i].ell) < floor) {
            ++laws.floor_violations;
        }
    }
    if (s.collapse) {
        ++laws.floor_checked;
        if (static_cast<long double>(s.collapse->first) < floor) {
            ++laws.floor_violations;
        }
    }

    laws.reached = s.i_star.has_value();
    laws.i_star_bound = 10.0L / k.kappa * log_d * std::log(log_d);
    laws.termination_ok = laws.reached && static_cast<long double>(*s.i_star) <= laws.i_star_bound;

    // Hat deviation and keep bounds over the prefix satisfying the stronger hypotheses.
    const auto hats = hat_deviation_report(s);
    for (std::size_t i = 0; i < s.states.size(); ++i) {
        const auto& st = s.states[i];
        if (!powers_at_least(st, log4_floor)) {
            break;
        }
        ++laws.hat_checked;
        if (hats[i].ell_ratio > 1.0L || hats[i].d_ratio > 1.0L) {
            ++laws.hat_violations;
        }
        ++laws.keep_checked;
        const long double lower =
            1.0L - k.kappa * static_cast<long double>(st.d) / (static_cast<long double>(st.ell) * log_d);
        const long double upper = 1.0L - k.kappa / (10.0L * log_d);
        if (st.keep < lower || st.keep > upper) {
            ++laws.keep_violations;
        }
    }
    return laws;
}

} // namespace dpc
