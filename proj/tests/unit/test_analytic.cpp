#include "nasearch/analytic.hpp"
#include "nasearch/errors.hpp"
#include "nasearch/propagator.hpp"
#include "long_time.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nasearch;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kInf = 0;

struct LimitCase {
    std::int64_t n;  // kInf for N -> infinity
    double a;
    double b;
    double p;
};

// Coefficient formula evaluated with mpmath.pcfd at 40 digits, denominator
// taken from the D values rather than the Gamma closed form.
const LimitCase kLimit[] = {
    {100, 1, 4.5, 0.95233778305088773815},      {100, 5, 4.5, 0.40271555472964821613},
    {100, 20, 4.5, 0.18866307216779964769},     {100, 0.2, 0, 0.40084276457114013339},
    {100, 0.2, 10, 0.97774379669341934271},     {100, 25, 10, 0.12617728583310541879},
    {100, 3, 7, 0.56312179810138273597},        {100, 1, 0, 0.31142176679703310012},
    {1000000, 1, 4.5, 0.96501223075820641922},  {1000000, 5, 4.5, 0.43704424454747367137},
    {1000000, 20, 4.5, 0.15115498909719150954}, {1000000, 0.2, 0, 0.49881124334955202625},
    {1000000, 0.2, 10, 0.99744409990429357941}, {1000000, 25, 10, 0.119350258320112134},
    {1000000, 3, 7, 0.61557386698013936621},    {1000000, 1, 0, 0.39518887907766615954},
    {kInf, 1, 4.5, 0.96504741943931660212},     {kInf, 5, 4.5, 0.43740534670364587717},
    {kInf, 20, 4.5, 0.15084438172063597586},    {kInf, 0.2, 0, 0.49980589839803661679},
    {kInf, 0.2, 10, 0.99754408520597231993},    {kInf, 25, 10, 0.11935746730380118622},
    {kInf, 3, 7, 0.61608304588929337523},       {kInf, 1, 0, 0.39606021182461904573},
    {2, 1, 4.5, 0.48287069829969487924},        {2, 5, 4.5, 0.31938623695369664626},
    {2, 20, 4.5, 0.65495461013681191154},       {2, 0.2, 0, 0.0026720329920570946824},
    {2, 0.2, 10, 0.45050486849826377713},       {2, 25, 10, 0.49601486363020900789},
    {2, 3, 7, 0.24552650123210359105},          {2, 1, 0, 0.064229468850061481596},
};

LimitProbability limit(std::int64_t n, double a, double b) {
    return n == kInf ? algII_limit_prob_inf(a, b) : algII_limit_prob(n, a, b);
}

IntegratorSettings tight() {
    IntegratorSettings s;
    s.tol = 1e-12;
    return s;
}

}  // namespace

TEST_CASE("peak times") {
    const ScheduleI s(100, 1.0, 1.0);
    const auto peaks = algI_peak_times(s, 4);
    REQUIRE(peaks.size() == 4);
    CHECK(peaks[0] == Approx(15.7871).epsilon(1e-5));
    for (int l = 1; l <= 4; ++l) {
        CHECK(peaks[static_cast<std::size_t>(l - 1)] == Approx(l * s.tau()).epsilon(1e-15));
    }
    CHECK(algI_peak_times(ScheduleI(10'000, 1.0, 1.0), 1)[0] == Approx(157.0876).epsilon(1e-6));

    const double tau = ScheduleI(5000, 1.0, 1.0).tau();
    const ScheduleI neg(5000, 1.0, -0.10 / tau);
    const auto kept = algI_peak_times(neg, 30);
    CHECK(kept.size() == 9);
    for (double t : kept) {
        CHECK(t < 10 * tau);
    }
    CHECK_THROWS_AS(algI_peak_times(s, 0), ValidationError);
}

TEST_CASE("close approach times") {
    const double tau = ScheduleI(5000, 1.0, 1.0).tau();
    CHECK(close_approach_time(ScheduleI(5000, 1.0, -0.05 / tau)).value() == Approx(20 * tau).epsilon(1e-14));
    CHECK_FALSE(close_approach_time(ScheduleI(5000, 1.0, 1.0)).has_value());
    CHECK(close_approach_time(ScheduleII(100, 5.0, 4.5)).value() == Approx(0.9));
    CHECK(close_approach_time(ScheduleII(1'000'000, 20.0, 4.5)).value() == Approx(0.225));
    CHECK_FALSE(close_approach_time(ScheduleII(100, 1.0, 0.0)).has_value());
    CHECK_FALSE(close_approach_time(ScheduleII(100, 1.0, -2.0)).has_value());
}

TEST_CASE("resonance approximation") {
    for (std::int64_t n : {2, 50, 5000}) {
        const ScheduleI s(n, 1.0, 1.0);
        const auto p0 = algI_approx_probs(s, 0.0);
        CHECK(p0.p_s == 0.0);
        CHECK(p0.p_p == 1.0);
        const auto p1 = algI_approx_probs(s, s.tau());
        CHECK(p1.p_s == Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(p1.p_p) < 1e-15);
        // The offset form starts at the true initial probability 1/N.
        const auto q0 = algI_approx_probs(s, 0.0, ResonanceForm::offset);
        CHECK(q0.p_s == Approx(1.0 / static_cast<double>(n)).epsilon(1e-12));
        for (double t : {0.3, 7.0, 40.0}) {
            const auto p = algI_approx_probs(s, t);
            CHECK(p.p_s + p.p_p == Approx(1.0));
        }
    }
}

TEST_CASE("algorithm I closed form against the mobile ODE") {
    SUBCASE("N = 5000, alpha = 1") {
        const ScheduleI s(5000, 1.0, 1.0);
        const auto sol = algI_solution(s);
        const auto ode = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, uniform_grid(2 * s.tau(), 150), tight());
        for (const auto& x : ode.samples) {
            const auto m = algI_amplitudes(sol, s, x.t);
            CHECK(std::abs(m.a_minus - x.state.a_minus) < 1e-6);
            CHECK(std::abs(m.a_plus - x.state.a_plus) < 1e-6);
            CHECK(std::abs(m.a_minus) >= 0.999);
        }
    }
    SUBCASE("N = 500, alpha = 0.5 at the first peak") {
        const ScheduleI s(500, 1.0, 0.5);
        const auto ode = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, std::vector<double>{0.0, s.tau()}, tight());
        const auto m = algI_amplitudes(algI_solution(s), s, s.tau());
        CHECK(std::abs(m.a_minus - ode.samples.back().state.a_minus) < 1e-6);
        CHECK(std::abs(m.a_plus - ode.samples.back().state.a_plus) < 1e-6);
    }
    SUBCASE("negative alpha up to the crossing") {
        const double tau = ScheduleI(5000, 1.0, 1.0).tau();
        const ScheduleI s(5000, 1.0, -0.31 / tau);
        const auto sol = algI_solution(s);
        const double tc = *s.crossing_time();
        REQUIRE(sol.valid_until.has_value());
        CHECK(*sol.valid_until == Approx(tc));
        const auto ode = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, uniform_grid(tc, 120), tight());
        for (const auto& x : ode.samples) {
            const auto m = algI_amplitudes(sol, s, x.t);
            CHECK(std::abs(std::abs(m.a_minus) - std::abs(x.state.a_minus)) < 1e-6);
        }
        CHECK_THROWS_AS(algI_amplitudes(sol, s, 1.01 * tc), ValidationError);
        CHECK_THROWS_AS(algI_amplitudes(sol, s, -1.0), ValidationError);
    }
    SUBCASE("scale squares to -i alpha") {
        for (double alpha : {0.7, -0.2}) {
            const auto sol = algI_solution(ScheduleI(100, 1.0, alpha));
            CHECK(std::abs(sol.scale * sol.scale - cplx(0.0, -alpha)) < 1e-14);
            CHECK(std::abs(sol.denominator - std::sqrt(2 * kPi) * reciprocal_gamma(1.0 - sol.eta)) <
                  1e-12 * std::abs(sol.denominator));
        }
    }
    CHECK_THROWS_AS(algI_solution(ScheduleI(100, 1.0, 0.0)), UsageError);
}

TEST_CASE("algorithm I decoupled limit") {
    const ScheduleI s(100, 1e-6, 0.8);
    const auto sol = algI_solution(s);
    for (double t : {0.0, 1.0, 5.0, 25.0}) {
        CHECK(std::abs(std::abs(algI_amplitudes(sol, s, t).a_minus) - 1.0) < 1e-6);
    }
}

TEST_CASE("algorithm I initial values") {
    for (double alpha : {1.0, 0.5, -0.002, 3.0}) {
        const ScheduleI s(5000, 1.0, alpha);
        const auto m = algI_amplitudes(algI_solution(s), s, 0.0);
        CHECK(std::abs(m.a_plus) < 1e-10);
        CHECK(std::abs(m.a_minus - 1.0) < 1e-10);
    }
}

TEST_CASE("algorithm I with constant gap") {
    const ScheduleI s(500, 1.0, 0.0);
    const auto m0 = algI_alpha0(s, 0.0);
    CHECK(std::abs(m0.a_plus) == 0.0);
    CHECK(std::abs(m0.a_minus - 1.0) < 1e-15);

    IntegratorSettings tighter;
    tighter.tol = 1e-13;
    const auto ode = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, uniform_grid(2 * s.tau(), 100), tighter);
    for (const auto& x : ode.samples) {
        const auto m = algI_alpha0(s, x.t);
        CHECK(std::abs(std::abs(m.a_minus) - std::abs(x.state.a_minus)) < 1e-8);
        CHECK(std::abs(std::abs(m.a_plus) - std::abs(x.state.a_plus)) < 1e-8);
        CHECK(m.norm_sq() == Approx(1.0).epsilon(1e-14));
    }

    const ScheduleI off(500, 0.0, 0.0);
    for (double t : {0.5, 3.0, 11.0}) {
        const auto m = algI_alpha0(off, t);
        CHECK(std::abs(m.a_plus) == 0.0);
        CHECK(std::abs(m.a_minus) == Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(algI_alpha0(ScheduleI(500, 1.0, 0.1), 1.0), UsageError);
}

TEST_CASE("algorithm I breakdown after the crossing") {
    const double tau = ScheduleI(5000, 1.0, 1.0).tau();
    const ScheduleI s(5000, 1.0, -0.31 / tau);
    const double tc = *s.crossing_time();
    const auto tr = simulate_I(s, uniform_grid(3 * tc, 1500));
    double before = 0.0;
    double after = 0.0;
    for (const auto& x : tr.samples) {
        const double d = std::abs(x.p_s - algI_approx_probs(s, x.t, ResonanceForm::offset).p_s);
        if (x.t < 0.9 * tc) {
            before = std::max(before, d);
        } else if (x.t > tc) {
            after = std::max(after, d);
        }
    }
    CHECK(before < 0.05);
    CHECK(after > 0.05);
}

TEST_CASE("algorithm II closed form against the ODE") {
    const auto sol = algII_solution(100, 1.0, 4.5);
    const auto tr = simulate_II(ScheduleII(100, 1.0, 4.5), uniform_grid(20.0, 200), tight());
    for (const auto& x : tr.samples) {
        CHECK(std::abs(algII_amplitudes(sol, x.t).prob_s() - x.p_s) < 1e-5);
    }
    CHECK(std::abs(sol.denominator - std::sqrt(2 * kPi) * reciprocal_gamma(1.0 - sol.eta)) <
          1e-12 * std::abs(sol.denominator));
    CHECK(sol.k == Approx(0.5));
    CHECK(sol.n.value() == 100);
    CHECK_THROWS_AS(algII_amplitudes(sol, -0.1), ValidationError);
}

TEST_CASE("algorithm II initial values") {
    for (std::int64_t n : {2, 100, 1'000'000}) {
        for (double b : {0.0, 4.5, 10.0}) {
            for (double a : {0.2, 1.0, 25.0}) {
                const auto st = algII_amplitudes(algII_solution(n, a, b), 0.0);
                const auto psi = initial_state(SearchProblem(n));
                CHECK(std::abs(st.a_s - psi.a_s) < 1e-9);
                CHECK(std::abs(st.a_p - psi.a_p) < 1e-9);
            }
        }
    }
    const auto st = algII_amplitudes(algII_solution(2, 1.0, 0.0), 0.0);
    CHECK(std::abs(st.a_s - 1 / std::sqrt(2.0)) < 1e-12);
    const auto inf0 = algII_amplitudes(algII_solution_inf(1.0, 4.5), 0.0);
    CHECK(std::abs(inf0.a_s) < 1e-12);
    CHECK(std::abs(inf0.a_p - 1.0) < 1e-12);
    CHECK_FALSE(algII_solution_inf(1.0, 4.5).n.has_value());
    CHECK_THROWS_AS(algII_solution(100, 0.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(algII_solution(1, 1.0, 1.0), InvalidProblem);
}

TEST_CASE("limiting probability against high-precision reference") {
    for (const auto& c : kLimit) {
        INFO("N = " << c.n << " a = " << c.a << " b = " << c.b);
        const auto lp = limit(c.n, c.a, c.b);
        CHECK(lp.value == Approx(c.p).epsilon(1e-9));
        CHECK(lp.accurate);
        CHECK(lp.estimated_error < 1e-8);
    }
}

TEST_CASE("limiting probability matches the late-time ODE average") {
    for (double a : {1.0, 5.0}) {
        const double p = algII_limit_prob(1'000'000, a, 4.5).value;
        const auto [t0, t1] = testing::settled_window(a, 4.5);
        CHECK(std::abs(testing::late_window(1'000'000, a, 4.5, t0, t1).mean - p) < 1e-4);
    }
}

TEST_CASE("limiting probability limits") {
    SUBCASE("large N saturates") {
        const double inf = algII_limit_prob_inf(1.0, 4.5).value;
        CHECK(std::abs(algII_limit_prob(100'000'000, 1.0, 4.5).value - inf) < 1e-3);
        CHECK(std::abs(algII_limit_prob(1'000'000, 1.0, 4.5).value - inf) < 1e-2);
    }
    SUBCASE("sudden sweep keeps the initial probability") {
        for (double b : {0.0, 2.0, 4.5}) {
            const double p = algII_limit_prob(100, 1e3, b).value;
            CHECK(std::abs(p - 0.01) < 1e-2);
            // ODE at a finite time well past the transition.
            const auto tr = simulate_II(ScheduleII(100, 1e3, b), std::vector<double>{0.0, b / 1e3 + 1.0});
            CHECK(std::abs(tr.samples.back().p_s - 0.01) < 1e-2);
        }
    }
    SUBCASE("range") {
        for (double a : {0.2, 0.9, 4.0, 25.0}) {
            for (double b : {-3.0, 0.0, 1.0, 9.9}) {
                const auto lp = algII_limit_prob(100, a, b);
                CHECK(lp.value >= 0.0);
                CHECK(lp.value <= 1.0);
            }
        }
    }
    CHECK_THROWS_AS(algII_limit_prob(100, -1.0, 0.0), InvalidProblem);
}
