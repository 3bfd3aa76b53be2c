#include "nasearch/errors.hpp"
#include "nasearch/model.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace nasearch;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Ham2& m) { return m.cwiseAbs().maxCoeff(); }

Ham2 reconstruct(const BlochDecomposition& d) {
    const cplx i{0.0, 1.0};
    Ham2 sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -i, i, 0;
    sz << 1, 0, 0, -1;
    return d.phase_coefficient * Ham2::Identity() +
           0.5 * d.gap * (d.axis[0] * sx + d.axis[1] * sy + d.axis[2] * sz);
}

}  // namespace

TEST_CASE("initial state") {
    const auto s4 = initial_state(SearchProblem(4));
    CHECK(s4.a_s.real() == Approx(0.5).epsilon(1e-15));
    CHECK(s4.a_p.real() == Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(s4.a_p.real() == Approx(0.8660254).epsilon(1e-7));
    CHECK(s4.a_s.imag() == 0.0);

    const auto s2 = initial_state(SearchProblem(2));
    CHECK(s2.a_s.real() == Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s2.a_p.real() == Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

    for (std::int64_t n : {2, 3, 100, 1'000'000, 100'000'000}) {
        CHECK(std::abs(initial_state(SearchProblem(n)).norm_sq() - 1.0) < 1e-15);
    }
    CHECK_THROWS_AS(SearchProblem(1), InvalidProblem);
    CHECK_THROWS_AS(SearchProblem(0), InvalidProblem);
    CHECK_THROWS_AS(SearchProblem(-5), InvalidProblem);
}

TEST_CASE("schedule I constants") {
    const ScheduleI s(100, 1.0, 1.0);
    CHECK(s.tau() == Approx(15.7871).epsilon(1e-5));
    CHECK(s.tau() == Approx(kPi * 100 / (2 * std::sqrt(99.0))).epsilon(1e-15));
    CHECK(s.omega0() * s.tau() == Approx(kPi / 2).epsilon(1e-15));

    const ScheduleI big(10'000, 1.0, 1.0);
    CHECK(big.tau() == Approx(157.0876).epsilon(1e-6));
    CHECK((big.tau() - 50 * kPi) / big.tau() == Approx(5e-5).epsilon(0.01));

    CHECK_THROWS_AS(ScheduleI(1, 1.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(ScheduleI(10, -1.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(ScheduleI(10, 1.0, std::nan("")), InvalidProblem);
    CHECK_FALSE(ScheduleI(10, 1.0, 1.0).crossing_time().has_value());
    CHECK(ScheduleI(10, 1.0, -0.25).crossing_time().value() == Approx(4.0));
    CHECK(std::isinf(ScheduleI(10, 0.0, 1.0).tau()));
}

TEST_CASE("schedule I f and g") {
    for (std::int64_t n : {2, 5, 50, 5000, 1'000'000}) {
        const ScheduleI s(n, 1.0, 0.7);
        const auto fg = schedule_I_fg(s, 0.0);
        CHECK(fg.f == Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(fg.g) < 1e-12);
    }
    CHECK(ScheduleI(5000, 1.0, 1.0).gap(0.0) == 1.0);

    // Independent evaluation: theta and omega first, then the f, g formulas
    // with beta reconstructed from sin(beta) = (2 - N)/N, cos(beta) > 0.
    const ScheduleI s(50, 1.0, 0.5);
    const double t = s.tau() / 2;
    const double n = 50.0;
    const double omega0 = std::sqrt(n - 1) / n;
    const double theta = std::atan2(-2 * std::sqrt(n - 1) / n, 1 - 2 / n) + 2 * omega0 * t;
    const double omega = 0.5 * t + 1.0;
    const double beta = std::asin((2 - n) / n);
    const double f = -n / (2 * std::sqrt(n - 1)) * omega * std::sin(theta);
    const double g = -n / (2 * std::sqrt(n - 1)) * omega * std::cos(theta + beta);
    const auto fg = schedule_I_fg(s, t);
    CHECK(fg.f == Approx(f).epsilon(1e-13));
    CHECK(fg.g == Approx(g).epsilon(1e-13));
}

TEST_CASE("schedule I Hamiltonian") {
    for (std::int64_t n : {2, 7, 500}) {
        const double nd = static_cast<double>(n);
        Ham2 expected;
        expected << (nd - 1) / nd, -std::sqrt(nd - 1) / nd, -std::sqrt(nd - 1) / nd, 1 / nd;
        CHECK(max_abs(hamiltonian_I(ScheduleI(n, 1.0, 1.0), 0.0) - expected) < 1e-14);
    }
    Ham2 two;
    two << 0.5, -0.5, -0.5, 0.5;
    CHECK(max_abs(hamiltonian_I(ScheduleI(2, 1.0, 1.0), 0.0) - two) < 1e-15);

    const ScheduleI s(500, 1.0, -0.1);
    const auto d = bloch_decompose(hamiltonian_I(s, 3.0));
    CHECK(d.gap == Approx(0.7).epsilon(1e-10));
    CHECK(std::abs(d.gap - 0.7) < 1e-10);
}

TEST_CASE("schedule II Hamiltonian") {
    Ham2 m;
    m << 0, -1, -1, 9;
    CHECK(max_abs(hamiltonian_II(ScheduleII(100, 1.0, 4.5), 0.0) - m) == 0.0);
    m << 0, -1, -1, 0;
    CHECK(max_abs(hamiltonian_II(ScheduleII(100, 1.0, 0.0), 0.0) - m) == 0.0);
    const ScheduleII s(100, 5.0, 4.5);
    CHECK(s.transition_time() == Approx(0.9));
    CHECK(max_abs(hamiltonian_II(s, 0.9) - m) < 1e-15);
    CHECK(s.gap(0.9) == Approx(1.0).epsilon(1e-15));

    const auto phys = hamiltonian_II(s, 0.3, GlobalPhase::physical);
    const auto drop = hamiltonian_II(s, 0.3);
    CHECK(max_abs(phys - drop - std::sqrt(99.0) * Ham2::Identity()) < 1e-14);

    CHECK_THROWS_AS(ScheduleII(100, 0.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(ScheduleII(100, -1.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(ScheduleII(1, 1.0, 1.0), InvalidProblem);
}

TEST_CASE("schedule II matches its f, g form") {
    // H = (1/N) [[(N-1) f, -sqrt(N-1) f], [-sqrt(N-1) f, f + N g]] minus
    // sqrt(N-1) I reproduces the working matrix.
    for (std::int64_t n : {2, 100, 1'000'000}) {
        const ScheduleII s(n, 1.3, 2.0);
        const double nd = static_cast<double>(n);
        const double r = std::sqrt(nd - 1);
        for (double t : {0.0, 0.7, 3.1}) {
            const double f = s.f_const();
            const double g = s.g(t);
            Ham2 h;
            h << (nd - 1) * f / nd, -r * f / nd, -r * f / nd, (f + nd * g) / nd;
            CHECK(max_abs(h - hamiltonian_II(s, t, GlobalPhase::physical)) < 1e-12 * nd);
        }
    }
}

TEST_CASE("Bloch decomposition") {
    Ham2 half_z;
    half_z << 0.5, 0, 0, -0.5;
    const auto d = bloch_decompose(half_z);
    CHECK(std::abs(d.phase_coefficient) < 1e-15);
    CHECK(d.gap == Approx(1.0));
    CHECK(std::abs(d.axis[0]) < 1e-15);
    CHECK(d.axis[1] == 0.0);
    CHECK(d.axis[2] == Approx(1.0));
    CHECK(std::abs(d.theta) < 1e-15);

    const auto d50 = bloch_decompose(hamiltonian_I(ScheduleI(50, 1.0, 1.0), 0.0));
    CHECK(d50.gap == Approx(1.0).epsilon(1e-14));
    CHECK(std::sin(d50.theta) == Approx(-0.28).epsilon(1e-14));

    const Ham2 h2 = hamiltonian_II(ScheduleII(100, 1.0, 4.5), 0.0);
    const auto d2 = bloch_decompose(h2);
    CHECK(max_abs(reconstruct(d2) - h2) < 1e-12);
    // Full splitting is twice the sweep gap.
    CHECK(d2.gap == Approx(2 * std::hypot(4.5, 1.0)).epsilon(1e-14));

    Ham2 bad;
    bad << 0, cplx(0, 1), cplx(0, 1), 0;
    CHECK_THROWS_AS(bloch_decompose(bad), ValidationError);
}

TEST_CASE("eigenbasis rotation") {
    CHECK((eigenbasis_rotation(0.0) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-16);
    Eigen::Matrix2d r;
    r << 0, -1, 1, 0;
    CHECK((eigenbasis_rotation(kPi) - r).cwiseAbs().maxCoeff() < 1e-15);

    const ScheduleI s(100, 1.0, 1.0);
    const Eigen::Vector2d v = eigenbasis_rotation(s.theta0()) * Eigen::Vector2d(0.0, 1.0);
    CHECK(std::abs(v(0) - 0.1) < 1e-12);
    CHECK(std::abs(v(1) - std::sqrt(0.99)) < 1e-12);
    CHECK(std::sin(s.theta0() / 2) == Approx(-0.1).epsilon(1e-14));
}
