#include "nasearch/errors.hpp"
#include "nasearch/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace nasearch;
using doctest::Approx;

TEST_CASE("uniform grid") {
    const auto g = uniform_grid(2.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 2.0);
    CHECK(g[1] == Approx(0.5));
    CHECK_THROWS_AS(uniform_grid(0.0, 5), ValidationError);
    CHECK_THROWS_AS(uniform_grid(1.0, 1), ValidationError);
}

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
    const StatePair psi{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
    const auto tr = integrate_fixed([](double) { return Ham2::Zero().eval(); }, psi, uniform_grid(10.0, 11));
    for (const auto& x : tr.samples) {
        CHECK(std::abs(x.state.a_s - psi.a_s) < 1e-15);
        CHECK(std::abs(x.state.a_p - psi.a_p) < 1e-15);
    }
}

TEST_CASE("constant Hamiltonian matches the matrix exponential") {
    // H = sigma_x: a_s(t) = cos t, a_p(t) = -i sin t from (1, 0).
    Ham2 h;
    h << 0, 1, 1, 0;
    const auto tr = integrate_fixed([&](double) { return h; }, StatePair{1.0, 0.0}, uniform_grid(12.0, 25));
    for (const auto& x : tr.samples) {
        CHECK(std::abs(x.state.a_s - cplx(std::cos(x.t), 0.0)) < 1e-9);
        CHECK(std::abs(x.state.a_p - cplx(0.0, -std::sin(x.t))) < 1e-9);
    }
}

TEST_CASE("fixed-basis integration against high-precision reference") {
    // mpmath odefun (Taylor series, 18 digits) on the untraced Hamiltonians.
    const ScheduleI s1(50, 1.0, 0.5);
    const std::vector<double> g1{0.0, s1.tau() / 2, s1.tau()};
    IntegratorSettings tight;
    tight.tol = 1e-12;
    const auto t1 = integrate_fixed([&](double t) { return hamiltonian_I(s1, t); },
                                    initial_state(SearchProblem(50)), g1, tight);
    CHECK(std::abs(t1.samples[1].state.a_s - cplx(-0.484750273011375378, -0.152630187730993863)) < 1e-8);
    CHECK(std::abs(t1.samples[1].state.a_p - cplx(0.823121417197833771, 0.253362055483508202)) < 1e-8);
    CHECK(std::abs(t1.samples[2].state.a_s - cplx(0.921837754409737226, 0.380387667638508805)) < 1e-8);
    CHECK(std::abs(t1.samples[2].state.a_p - cplx(-0.0273962450905757341, -0.0690639023534397533)) < 1e-8);

    // The traceless route changes only the global phase.
    const auto t1b = simulate_I(s1, g1, tight);
    CHECK(t1b.samples[1].p_s == Approx(0.25827880139140139).epsilon(1e-8));
    CHECK(t1b.samples[2].p_s == Approx(0.99447962314665164).epsilon(1e-8));

    const ScheduleII s2(100, 1.0, 4.5);
    const auto t2 = simulate_II(s2, std::vector<double>{0.0, 3.0, 6.0}, tight);
    CHECK(std::abs(t2.samples[1].state.a_s - cplx(-0.0944353204147259207, 0.0440400106384847731)) < 1e-8);
    CHECK(std::abs(t2.samples[1].state.a_p - cplx(0.934982463984651614, 0.339043123750238954)) < 1e-8);
    CHECK(std::abs(t2.samples[2].state.a_s - cplx(0.822609920745090866, -0.562496478871585784)) < 1e-8);
    CHECK(t2.samples[2].p_s == Approx(0.99308937045117703).epsilon(1e-8));
}

TEST_CASE("search probability at the first peak") {
    const ScheduleI s(50, 1.0, 1.0);
    const auto tr = simulate_I(s, std::vector<double>{0.0, s.tau()});
    CHECK(tr.samples.back().p_s >= 0.99);
}

TEST_CASE("mobile-basis integration") {
    SUBCASE("decoupled limit keeps the amplitudes constant") {
        const ScheduleI s(100, 0.0, 1.0);
        const auto tr = integrate_mobile(s, MobilePair{0.6, cplx(0.0, 0.8), 0.0}, uniform_grid(20.0, 21));
        for (const auto& x : tr.samples) {
            CHECK(std::abs(x.state.a_plus - 0.6) < 1e-14);
            CHECK(std::abs(x.state.a_minus - cplx(0.0, 0.8)) < 1e-14);
        }
    }
    SUBCASE("large N keeps |a-| near 1") {
        const ScheduleI s(5000, 1.0, 1.0);
        const auto tr = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, uniform_grid(2 * s.tau(), 400));
        for (const auto& x : tr.samples) {
            CHECK(std::abs(x.state.a_minus) >= 0.999);
        }
    }
    SUBCASE("both routes agree") {
        const ScheduleI s(500, 1.0, 0.5);
        IntegratorSettings tight;
        tight.tol = 1e-12;
        const auto grid = uniform_grid(2 * s.tau(), 200);
        const auto mobile = integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, grid, tight);
        const auto fixed = integrate_fixed([&](double t) { return hamiltonian_I(s, t); },
                                           initial_state(SearchProblem(500)), grid, tight);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& m = mobile.samples[i];
            const auto st = mobile_to_fixed(m.state, s.theta(m.t), m.state.accumulated_phase);
            // The fixed-basis route carries the trace phase int (f + g)/2.
            const cplx ref_phase = fixed.samples[i].state.a_p / std::abs(fixed.samples[i].state.a_p);
            const cplx mob_phase = st.a_p / std::abs(st.a_p);
            const cplx rot = ref_phase / mob_phase;
            worst = std::max({worst, std::abs(st.a_s * rot - fixed.samples[i].state.a_s),
                              std::abs(st.a_p * rot - fixed.samples[i].state.a_p)});
        }
        CHECK(worst < 1e-6);
    }
    CHECK_THROWS_AS(integrate_mobile(ScheduleI(10, 1.0, 1.0), MobilePair{1.0, 1.0, 0.0}, uniform_grid(1.0, 2)),
                    ValidationError);
}

TEST_CASE("mobile to fixed basis") {
    for (std::int64_t n : {2, 3, 100, 5000}) {
        const ScheduleI s(n, 1.0, 1.0);
        const auto st = mobile_to_fixed(MobilePair{0.0, 1.0, 0.0}, s.theta0(), 0.0);
        const auto psi = initial_state(SearchProblem(n));
        CHECK(std::abs(st.a_s - psi.a_s) < 1e-12);
        CHECK(std::abs(st.a_p - psi.a_p) < 1e-12);
    }
    for (double phase : {0.0, 1.3, -7.0}) {
        const auto st = mobile_to_fixed(MobilePair{1.0, 0.0, 0.0}, 0.0, phase);
        CHECK(std::abs(st.a_s - std::polar(1.0, -phase / 2)) < 1e-15);
        CHECK(std::abs(st.a_p) < 1e-15);
        CHECK(st.prob_s() == Approx(1.0));
    }
    for (std::int64_t n : {3, 50, 5000}) {
        const ScheduleI s(n, 1.0, 1.0);
        const auto st = mobile_to_fixed(MobilePair{0.0, 1.0, 0.0}, s.theta(s.tau()), 2.7);
        CHECK(st.prob_s() == Approx(1.0 - 1.0 / static_cast<double>(n)).epsilon(1e-12));
        CHECK(st.prob_s() == Approx(std::pow(std::cos(s.theta0() / 2), 2)).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
    const auto h = [](double) { return Ham2::Zero().eval(); };
    const StatePair psi{1.0, 0.0};
    CHECK_THROWS_AS(integrate_fixed(h, StatePair{1.0, 1.0}, uniform_grid(1.0, 3)), ValidationError);
    CHECK_THROWS_AS(integrate_fixed(h, psi, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(integrate_fixed(h, psi, std::vector<double>{0.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(integrate_fixed(h, psi, std::vector<double>{0.0, 1.0, 1.0}), ValidationError);
    IntegratorSettings loose;
    loose.tol = 1e-3;
    CHECK_THROWS_AS(integrate_fixed(h, psi, uniform_grid(1.0, 3), loose), ValidationError);
    IntegratorSettings tiny;
    tiny.tol = 1e-15;
    CHECK_THROWS_AS(integrate_fixed(h, psi, uniform_grid(1.0, 3), tiny), ValidationError);
}

TEST_CASE("integration failures carry the failing time") {
    IntegratorSettings budget;
    budget.max_steps = 10;
    const ScheduleII s(100, 1.0, 4.5);
    try {
        simulate_II(s, uniform_grid(50.0, 3), budget);
        FAIL("expected an integration failure");
    } catch (const IntegrationError& e) {
        CHECK(e.failing_time() > 0.0);
        CHECK(e.failing_time() < 50.0);
    }
}

TEST_CASE("trajectory bookkeeping") {
    const ScheduleI s(500, 1.0, -0.01);
    const auto tr = simulate_I(s, uniform_grid(10.0, 11));
    CHECK(tr.samples.size() == 11);
    CHECK(tr.label == "algorithm-1");
    CHECK(tr.stats.steps > 0);
    CHECK(tr.stats.max_norm_drift < 1e-8);
    bool has_tc = false;
    for (const auto& [k, v] : tr.parameters) {
        has_tc = has_tc || (k == "t_c" && v == Approx(100.0));
    }
    CHECK(has_tc);
    for (const auto& x : tr.samples) {
        CHECK(x.p_s + x.p_p == Approx(1.0).epsilon(1e-8));
    }
}
