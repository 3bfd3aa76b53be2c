#include "verify.hpp"

#include "nasearch/analytic.hpp"
#include "nasearch/errors.hpp"
#include "nasearch/model.hpp"
#include "nasearch/propagator.hpp"
#include "nasearch/specfun.hpp"
#include "nasearch/sweep.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace nasearch::verify {

namespace {

constexpr double kPi = std::numbers::pi;

using Outcome = std::pair<bool, std::string>;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

class Suite {
public:
    explicit Suite(std::string name) : name_(std::move(name)) {}

    template <class F>
    void run(const std::string& check, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = body();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results_.push_back({name_, check, outcome.first, outcome.second, secs});
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::string name_;
    std::vector<CheckResult> results_;
};

Outcome bound(const std::string& what, double value, double limit) {
    return {value < limit, what + " = " + sci(value) + " (limit " + sci(limit) + ")"};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ------------------------------------------------------------------ model

std::vector<CheckResult> model_suite() {
    Suite s("model");
    s.run("initial_state_unit_norm", [] {
        double worst = 0.0;
        for (std::int64_t n : {2, 4, 50, 1'000'000}) {
            worst = std::max(worst, std::abs(initial_state(SearchProblem(n)).norm_sq() - 1.0));
        }
        return bound("max |norm - 1|", worst, 1e-14);
    });
    s.run("fg_start_values", [] {
        double worst = 0.0;
        for (std::int64_t n : {2, 3, 50, 500, 5000, 1'000'000}) {
            for (double alpha : {1.0, 0.0, -0.1}) {
                const auto fg = schedule_I_fg(ScheduleI(n, 1.0, alpha), 0.0);
                worst = std::max({worst, std::abs(fg.f - 1.0), std::abs(fg.g)});
            }
        }
        return bound("max |f(0) - 1|, |g(0)|", worst, 1e-12);
    });
    s.run("initial_mixing_angle", [] {
        bool in_range = true;
        double worst = 0.0;
        for (std::int64_t n : {3, 50, 5000, 1'000'000}) {
            const ScheduleI sch(n, 1.0, 1.0);
            const double nd = static_cast<double>(n);
            const double th = sch.theta0();
            in_range = in_range && th > -kPi / 2 && th <= 0.0;
            worst = std::max({worst, std::abs(std::sin(th) + 2.0 * std::sqrt(nd - 1.0) / nd),
                              std::abs(std::cos(th) - (1.0 - 2.0 / nd))});
        }
        return Outcome{in_range && worst < 1e-14, "max identity error " + sci(worst)};
    });
    s.run("fg_wronskian", [] {
        // With theta increasing at 2 Omega0 the combination is -eps (alpha t + gamma)^2.
        double worst = 0.0;
        const double h = 1e-5;
        for (std::int64_t n : {50, 5000}) {
            for (double eps : {1.0, 0.5}) {
                for (double alpha : {0.5, 1.0, -0.02}) {
                    const ScheduleI sch(n, eps, alpha);
                    for (double t : {0.5, 3.0, 17.0}) {
                        const auto p = schedule_I_fg(sch, t + h);
                        const auto m = schedule_I_fg(sch, t - h);
                        const auto c = schedule_I_fg(sch, t);
                        const double lhs = (p.g - m.g) / (2 * h) * c.f - c.g * (p.f - m.f) / (2 * h);
                        const double target = -eps * std::pow(alpha * t + 1.0, 2);
                        worst = std::max(worst, std::abs(lhs - target) / std::abs(target));
                    }
                }
            }
        }
        return bound("max relative error", worst, 1e-5);
    });
    s.run("gap_algorithm_1", [] {
        double worst = 0.0;
        for (std::int64_t n : {50, 500, 5000}) {
            for (double alpha : {1.0, -0.1, 0.0}) {
                const ScheduleI sch(n, 1.0, alpha);
                for (int i = 0; i <= 40; ++i) {
                    const double t = 0.5 * i;
                    worst = std::max(worst,
                                     std::abs(bloch_decompose(hamiltonian_I(sch, t)).gap - sch.gap(t)));
                }
            }
        }
        return bound("max |gap - |alpha t + gamma||", worst, 1e-9);
    });
    s.run("gap_algorithm_2", [] {
        double worst = 0.0;
        for (double a : {0.2, 1.0, 5.0, 20.0}) {
            const ScheduleII sch(100, a, 4.5);
            for (int i = 0; i <= 40; ++i) {
                const double t = 0.25 * i;
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(hamiltonian_II(sch, t));
                const double half_split = 0.5 * (es.eigenvalues()(1) - es.eigenvalues()(0));
                worst = std::max(worst, std::abs(half_split - sch.gap(t)));
            }
        }
        return bound("max |splitting/2 - omega|", worst, 1e-12);
    });
    s.run("rotation_orthogonal", [] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> angle(-10.0, 10.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto u = eigenbasis_rotation(angle(rng));
            worst = std::max(worst, (u * u.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
        }
        return bound("max |U^dagger U - I|", worst, 1e-12);
    });
    s.run("mobile_initial_condition", [] {
        double worst = 0.0;
        for (std::int64_t n : {2, 50, 5000, 1'000'000}) {
            const ScheduleI sch(n, 1.0, 1.0);
            const auto psi = initial_state(SearchProblem(n));
            const Eigen::Vector2d v(psi.a_s.real(), psi.a_p.real());
            const Eigen::Vector2d m = eigenbasis_rotation(sch.theta0()).transpose() * v;
            worst = std::max({worst, std::abs(m(0)), std::abs(m(1) - 1.0)});
        }
        return bound("max deviation from (0, 1)", worst, 1e-12);
    });
    s.run("sqrt_n_scaling", [] {
        const double ratio_f = ScheduleII(4'000'000, 1.0, 4.5).f_const() / ScheduleII(1'000'000, 1.0, 4.5).f_const();
        const double ratio_g = ScheduleII(4'000'000, 1.0, 4.5).g(1.0) / ScheduleII(1'000'000, 1.0, 4.5).g(1.0);
        return bound("max |ratio - 2| for N -> 4N", std::max(std::abs(ratio_f - 2.0), std::abs(ratio_g - 2.0)),
                     1e-2);
    });
    return s.take();
}

// ---------------------------------------------------------------- specfun

std::vector<CheckResult> specfun_suite(bool fast) {
    Suite s("specfun");
    s.run("gamma_examples", [] {
        const double e1 = std::abs(complex_gamma(1.0) - 1.0);
        const double e2 = std::abs(complex_gamma(0.5) - std::sqrt(kPi)) / std::sqrt(kPi);
        const double mod_i = std::sqrt(kPi / std::sinh(kPi));
        const double e3 = std::abs(std::abs(complex_gamma({0.0, 1.0})) - mod_i) / mod_i;
        return bound("max relative error", std::max({e1, e2, e3}), 1e-12);
    });
    s.run("gamma_reflection_recurrence", [] {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> re(-6.0, 6.0);
        std::uniform_real_distribution<double> im(-4.0, 4.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const cplx z{re(rng), im(rng)};
            worst = std::max(worst, rel(complex_gamma(z + 1.0), z * complex_gamma(z)));
            const cplx refl = complex_gamma(z) * complex_gamma(1.0 - z) * std::sin(kPi * z);
            worst = std::max(worst, rel(refl, kPi));
        }
        return bound("max relative error", worst, 1e-12);
    });
    s.run("kummer_identities", [] {
        const double e1 = std::abs(kummer_m({0.3, 1.0}, {1.5, -0.2}, 0.0).value - 1.0);
        const cplx z1{1.0, 1.0};
        const double e2 = rel(kummer_m({0.7, 0.2}, {0.7, 0.2}, z1).value, std::exp(z1));
        const cplx z2{0.7, -0.3};
        const double e3 = rel(kummer_m(1.0, 2.0, z2).value, (std::exp(z2) - 1.0) / z2);
        return bound("max relative error", std::max({e1, e2, e3}), 1e-13);
    });
    s.run("pcf_elementary_orders", [] {
        const cplx z0 = 1.3 * std::polar(1.0, kPi / 4);
        const cplx z1{2.0, -1.0};
        const double e0 = rel(pcf_d(0.0, z0).value, std::exp(-z0 * z0 / 4.0));
        const double e1 = rel(pcf_d(1.0, z1).value, z1 * std::exp(-z1 * z1 / 4.0));
        return bound("max relative error", std::max(e0, e1), 1e-12);
    });
    const int samples = fast ? 50 : 200;
    s.run("pcf_recurrence", [samples] {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> nu_part(-2.1, 2.1);
        std::uniform_real_distribution<double> radius(0.0, 12.0);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const cplx nu{nu_part(rng), nu_part(rng)};
            const cplx z = std::polar(radius(rng), angle(rng));
            const cplx up = pcf_d(nu + 1.0, z).value;
            const cplx mid = pcf_d(nu, z).value;
            const cplx down = pcf_d(nu - 1.0, z).value;
            const double scale = std::max({std::abs(up), std::abs(z * mid), std::abs(nu * down)});
            worst = std::max(worst, std::abs(up - z * mid + nu * down) / scale);
        }
        return bound("max relative residual", worst, 1e-9);
    });
    s.run("pcf_derivative", [samples] {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> nu_part(-2.0, 2.0);
        std::uniform_real_distribution<double> radius(0.2, 12.0);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        const double h = 1e-5;
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const cplx nu{nu_part(rng), nu_part(rng)};
            const cplx z = std::polar(radius(rng), angle(rng));
            const cplx d = (pcf_d(nu, z + h).value - pcf_d(nu, z - h).value) / (2 * h);
            const cplx v = pcf_d(nu, z).value;
            const cplx lower = pcf_d(nu - 1.0, z).value;
            const double scale = std::max({std::abs(d), std::abs(0.5 * z * v), std::abs(nu * lower)});
            worst = std::max(worst, std::abs(d + 0.5 * z * v - nu * lower) / scale);
        }
        return bound("max relative residual", worst, 1e-8);
    });
    s.run("weber_residual", [samples] {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> nu_part(-2.0, 2.0);
        std::uniform_real_distribution<double> radius(0.5, 11.0);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        const double h = 1e-3;
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const cplx nu{nu_part(rng), nu_part(rng)};
            const cplx z = std::polar(radius(rng), angle(rng));
            const cplx w = pcf_d(nu, z).value;
            // Fourth-order five-point stencil.
            const cplx second = (-pcf_d(nu, z + 2.0 * h).value + 16.0 * pcf_d(nu, z + h).value - 30.0 * w +
                                 16.0 * pcf_d(nu, z - h).value - pcf_d(nu, z - 2.0 * h).value) /
                                (12.0 * h * h);
            worst = std::max(worst, std::abs(second + (nu + 0.5 - z * z / 4.0) * w) / std::abs(w));
        }
        return bound("max |residual| / |W|", worst, 1e-6);
    });
    s.run("branch_overlap", [] {
        double worst = 0.0;
        for (double arg : {kPi / 4, -kPi / 4, 5 * kPi / 4, 3 * kPi / 4}) {
            for (double r = 7.0; r <= 9.0001; r += 0.25) {
                for (cplx nu : {cplx{0.0, -0.5}, cplx{0.0, 0.3}, cplx{-1.0, -0.025}, cplx{0.0, -2.5},
                                cplx{-1.0, 0.004}}) {
                    const cplx z = std::polar(r, arg);
                    worst = std::max(worst, rel(pcf_d_asymptotic(nu, z).value, pcf_d_series(nu, z).at_z.value));
                }
            }
        }
        return bound("max relative difference", worst, 1e-7);
    });
    return s.take();
}

// ------------------------------------------------------------- propagator

double norm_drift(const Trajectory& t) { return t.stats.max_norm_drift; }

std::vector<CheckResult> propagator_suite(bool fast) {
    Suite s("propagator");
    IntegratorSettings settings;
    s.run("norm_conservation", [&] {
        double worst = 0.0;
        for (std::int64_t n : {50, 5000}) {
            const ScheduleI sch(n, 1.0, 1.0);
            worst = std::max(worst, norm_drift(simulate_I(sch, uniform_grid(2 * sch.tau(), 400), settings)));
        }
        for (double a : {1.0, 20.0}) {
            worst = std::max(worst,
                             norm_drift(simulate_II(ScheduleII(1'000'000, a, 4.5), uniform_grid(20.0, 400), settings)));
        }
        return bound("max norm drift", worst, 100 * settings.tol);
    });
    s.run("basis_route_equivalence", [&] {
        double worst = 0.0;
        IntegratorSettings tight;
        tight.tol = 1e-12;
        const std::vector<std::int64_t> sizes = fast ? std::vector<std::int64_t>{50, 500}
                                                     : std::vector<std::int64_t>{50, 500, 5000};
        for (std::int64_t n : sizes) {
            const double tau = ScheduleI(n, 1.0, 0.0).tau();
            for (double alpha : {-0.3 / tau, 0.0, 1.0}) {
                const ScheduleI sch(n, 1.0, alpha);
                const auto grid = uniform_grid(2 * tau, 300);
                const auto fixed = simulate_I(sch, grid, tight);
                const auto mobile = integrate_mobile(sch, MobilePair{0.0, 1.0, 0.0}, grid, tight);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const auto& m = mobile.samples[i];
                    const auto st = mobile_to_fixed(m.state, sch.theta(m.t), m.state.accumulated_phase);
                    worst = std::max(worst, std::abs(st.prob_s() - fixed.samples[i].p_s));
                }
            }
        }
        return bound("max |P_s difference|", worst, 1e-6);
    });
    s.run("time_reversal", [&] {
        double worst = 0.0;
        IntegratorSettings tight;
        tight.remove_trace = true;
        const ScheduleI sch(500, 1.0, 0.5);
        const ScheduleII sch2(100, 1.0, 4.5);
        const std::vector<HamiltonianFn> hams{[&](double t) { return hamiltonian_I(sch, t); },
                                              [&](double t) { return hamiltonian_II(sch2, t); }};
        const StatePair psi0 = initial_state(SearchProblem(500));
        for (const auto& h : hams) {
            const double T = 30.0;
            const std::vector<double> grid{0.0, T};
            const auto fwd = integrate_fixed(h, psi0, grid, tight);
            const auto back = integrate_fixed([&](double t) -> Ham2 { return -h(T - t); },
                                              fwd.samples.back().state, grid, tight);
            const auto& end = back.samples.back().state;
            worst = std::max({worst, std::abs(end.a_s - psi0.a_s), std::abs(end.a_p - psi0.a_p)});
        }
        return bound("max amplitude error after round trip", worst, 1e-6);
    });
    s.run("global_phase_immunity", [&] {
        double worst = 0.0;
        IntegratorSettings tight;
        tight.tol = 1e-12;
        const ScheduleI sch(500, 1.0, 0.5);
        const ScheduleII sch2(100, 1.0, 4.5);
        const auto grid = uniform_grid(30.0, 200);
        const auto psi1 = initial_state(SearchProblem(500));
        const auto psi2 = initial_state(SearchProblem(100));
        auto h1 = [&](double t) { return hamiltonian_I(sch, t); };
        auto h1_shift = [&](double t) -> Ham2 {
            const auto fg = schedule_I_fg(sch, t);
            return hamiltonian_I(sch, t) + 0.5 * (fg.f + fg.g) * Ham2::Identity();
        };
        auto h2 = [&](double t) { return hamiltonian_II(sch2, t); };
        auto h2_shift = [&](double t) { return hamiltonian_II(sch2, t, GlobalPhase::physical); };
        const auto a = integrate_fixed(h1, psi1, grid, tight);
        const auto b = integrate_fixed(h1_shift, psi1, grid, tight);
        const auto c = integrate_fixed(h2, psi2, grid, tight);
        const auto d = integrate_fixed(h2_shift, psi2, grid, tight);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max({worst, std::abs(a.samples[i].p_s - b.samples[i].p_s),
                              std::abs(c.samples[i].p_s - d.samples[i].p_s)});
        }
        return bound("max |P_s difference|", worst, 1e-10);
    });
    return s.take();
}

// --------------------------------------------------------------- analytic

double resonance_deviation(std::int64_t n) {
    const ScheduleI sch(n, 1.0, 1.0);
    const auto traj = simulate_I(sch, uniform_grid(2 * sch.tau(), 4001));
    double worst = 0.0;
    for (const auto& x : traj.samples) {
        worst = std::max(worst, std::abs(x.p_s - algI_approx_probs(sch, x.t).p_s));
    }
    return worst;
}

std::vector<CheckResult> analytic_suite(bool fast) {
    Suite s("analytic");
    IntegratorSettings tight;
    tight.tol = 1e-12;
    s.run("pcf_vs_ode_algorithm_1", [&] {
        double worst = 0.0;
        const std::vector<std::int64_t> sizes = fast ? std::vector<std::int64_t>{500}
                                                     : std::vector<std::int64_t>{50, 500, 5000};
        for (std::int64_t n : sizes) {
            const double tau = ScheduleI(n, 1.0, 0.0).tau();
            for (double alpha : {1.0, 0.3, -0.31 / tau}) {
                const ScheduleI sch(n, 1.0, alpha);
                const auto sol = algI_solution(sch);
                const auto grid = uniform_grid(2 * tau, 200);
                const auto ode = integrate_mobile(sch, MobilePair{0.0, 1.0, 0.0}, grid, tight);
                for (const auto& x : ode.samples) {
                    const auto m = algI_amplitudes(sol, sch, x.t);
                    worst = std::max({worst, std::abs(std::abs(m.a_minus) - std::abs(x.state.a_minus)),
                                      std::abs(std::abs(m.a_plus) - std::abs(x.state.a_plus))});
                }
            }
        }
        return bound("max modulus error", worst, 1e-5);
    });
    s.run("pcf_vs_ode_algorithm_2", [&] {
        double worst = 0.0;
        for (std::int64_t n : {100, 1'000'000}) {
            for (double a : {1.0, 5.0, 20.0}) {
                const double b = 4.5;
                const auto sol = algII_solution(n, a, b);
                const auto traj = simulate_II(ScheduleII(n, a, b), uniform_grid(3 * b / a + 5, 200), tight);
                for (const auto& x : traj.samples) {
                    worst = std::max(worst, std::abs(algII_amplitudes(sol, x.t).prob_s() - x.p_s));
                }
            }
        }
        return bound("max |P_s error|", worst, 1e-5);
    });
    s.run("alpha0_vs_ode", [&] {
        IntegratorSettings tighter;
        tighter.tol = 1e-13;
        const ScheduleI sch(500, 1.0, 0.0);
        const auto ode = integrate_mobile(sch, MobilePair{0.0, 1.0, 0.0}, uniform_grid(2 * sch.tau(), 200), tighter);
        double worst = 0.0;
        for (const auto& x : ode.samples) {
            const auto m = algI_alpha0(sch, x.t);
            worst = std::max({worst, std::abs(std::abs(m.a_minus) - std::abs(x.state.a_minus)),
                              std::abs(std::abs(m.a_plus) - std::abs(x.state.a_plus))});
        }
        return bound("max modulus error", worst, 1e-8);
    });
    s.run("initial_value_invariants", [] {
        double worst = 0.0;
        for (double alpha : {1.0, 0.5, -0.002}) {
            const ScheduleI sch(5000, 1.0, alpha);
            const auto m = algI_amplitudes(algI_solution(sch), sch, 0.0);
            worst = std::max({worst, std::abs(m.a_plus), std::abs(m.a_minus - 1.0)});
        }
        for (std::int64_t n : {2, 100, 1'000'000}) {
            for (double b : {0.0, 4.5}) {
                const auto st = algII_amplitudes(algII_solution(n, 1.0, b), 0.0);
                const auto psi = initial_state(SearchProblem(n));
                worst = std::max({worst, std::abs(st.a_s - psi.a_s), std::abs(st.a_p - psi.a_p)});
            }
        }
        return bound("max initial amplitude error", worst, 1e-9);
    });
    s.run("resonance_monotone", [] {
        const double d50 = resonance_deviation(50);
        const double d500 = resonance_deviation(500);
        const double d5000 = resonance_deviation(5000);
        return Outcome{d500 <= d50 && d5000 <= d500,
                       "deviations " + sci(d50) + ", " + sci(d500) + ", " + sci(d5000)};
    });
    s.run("peak_times", [] {
        // P_s = sin^2 reaches its maxima at odd multiples of tau.
        const ScheduleI sch(5000, 1.0, 1.0);
        const auto traj = simulate_I(sch, uniform_grid(3.2 * sch.tau(), 16001));
        double worst = 0.0;
        for (int l : {1, 3}) {
            const double target = l * sch.tau();
            const auto peak = plateau_center(traj, target - 0.5 * sch.tau(), target + 0.5 * sch.tau(), 0.99);
            if (!peak) {
                return Outcome{false, "P_s never reaches 0.99 near l = " + std::to_string(l)};
            }
            worst = std::max(worst, std::abs(*peak - target) / sch.tau());
        }
        return bound("max |t_peak - l tau| / tau", worst, 0.01);
    });
    s.run("asymptotic_convergence", [] {
        const double a = 1.0;
        const double b = 4.5;
        const double tc = b / a;
        const auto traj = simulate_II(ScheduleII(1'000'000, a, b), uniform_grid(4 * tc, 4001));
        double sum = 0.0;
        double sum2 = 0.0;
        int count = 0;
        for (const auto& x : traj.samples) {
            if (x.t >= 2 * tc) {
                sum += x.p_s;
                sum2 += x.p_s * x.p_s;
                ++count;
            }
        }
        const double mean = sum / count;
        const double sd = std::sqrt(std::max(0.0, sum2 / count - mean * mean));
        const double p = algII_limit_prob(1'000'000, a, b).value;
        return Outcome{sd / mean < 0.01 && std::abs(mean - p) < 1e-3,
                       "std/mean " + sci(sd / mean) + ", |mean - p| " + sci(std::abs(mean - p))};
    });
    s.run("grover_time_separation", [] {
        const double p = algII_limit_prob(1'000'000, 1.0, 4.5).value;
        const auto traj = simulate_II(ScheduleII(1'000'000, 1.0, 4.5), uniform_grid(100.0, 20001));
        double last_violation = 0.0;
        for (const auto& x : traj.samples) {
            if (std::abs(x.p_s - p) >= 0.01) {
                last_violation = x.t;
            }
        }
        const double grover = kPi * std::sqrt(1e6) / 2;
        return Outcome{last_violation < 20.0 && last_violation < grover,
                       "convergence time " + sci(last_violation) + " vs Grover scale " + sci(grover)};
    });
    s.run("large_n_saturation", [] {
        const double inf = algII_limit_prob_inf(1.0, 4.5).value;
        const double e8 = std::abs(algII_limit_prob(100'000'000, 1.0, 4.5).value - inf);
        const double e6 = std::abs(algII_limit_prob(1'000'000, 1.0, 4.5).value - inf);
        return Outcome{e8 < 1e-3 && e6 < 1e-2, "|p(1e8) - p_inf| " + sci(e8) + ", |p(1e6) - p_inf| " + sci(e6)};
    });
    s.run("sudden_limit", [] {
        double worst = 0.0;
        for (double b : {0.0, 2.0, 4.5}) {
            worst = std::max(worst, std::abs(algII_limit_prob(100, 1e3, b).value - 0.01));
        }
        return bound("max |p - 1/N| at a = 1000", worst, 1e-2);
    });
    return s.take();
}

// ---------------------------------------------------------------- figures

std::vector<CheckResult> figures_suite(bool fast) {
    Suite s("figures");
    FigureOverrides ov;
    ov.samples = fast ? 1001 : 4001;
    s.run("fig1_search_peak", [&] {
        const auto trajs = figure_dataset(FigureId::fig1, ov);
        double worst_peak = 1.0;
        double dev_prev = 1e9;
        bool monotone = true;
        double last_dev = 0.0;
        for (const auto& tr : trajs) {
            double best = 0.0;
            double dev = 0.0;
            const double tau = tr.time_unit;
            const ScheduleI sch(static_cast<std::int64_t>(tr.parameters[0].second), 1.0, 1.0);
            for (const auto& x : tr.samples) {
                if (std::abs(x.t - tau) <= 0.01 * tau) {
                    best = std::max(best, x.p_s);
                }
                if (x.t <= 2 * tau) {
                    dev = std::max(dev, std::abs(x.p_s - algI_approx_probs(sch, x.t).p_s));
                }
            }
            worst_peak = std::min(worst_peak, best);
            monotone = monotone && dev <= dev_prev;
            dev_prev = dev;
            last_dev = dev;
        }
        return Outcome{worst_peak >= 0.99 && monotone && last_dev < 0.01,
                       "min peak " + sci(worst_peak) + ", N=5000 deviation " + sci(last_dev) +
                           (monotone ? ", monotone" : ", not monotone")};
    });
    s.run("fig2_breakdown", [&] {
        const auto trajs = figure_dataset(FigureId::fig2, ov);
        bool ok = true;
        std::string detail;
        std::vector<double> tcs;
        std::vector<double> rates{0.31, 0.10, 0.05};
        for (std::size_t k = 0; k < trajs.size(); ++k) {
            const auto& tr = trajs[k];
            const ScheduleI sch(5000, 1.0, -rates[k] / tr.time_unit);
            const double tc = *close_approach_time(sch);
            tcs.push_back(tc);
            double before = 0.0;
            double after = 0.0;
            for (const auto& x : tr.samples) {
                const double d = std::abs(x.p_s - algI_approx_probs(sch, x.t).p_s);
                if (x.t < 0.9 * tc) {
                    before = std::max(before, d);
                } else if (x.t > tc) {
                    after = std::max(after, d);
                }
            }
            ok = ok && before < 0.05 && after > 0.05;
            detail += "before " + sci(before) + " after " + sci(after) + "; ";
        }
        const double scale0 = tcs[0] * rates[0];
        for (std::size_t k = 1; k < tcs.size(); ++k) {
            ok = ok && std::abs(tcs[k] * rates[k] - scale0) / scale0 < 0.01;
        }
        return Outcome{ok, detail};
    });
    s.run("fig5_approach", [&] {
        const auto trajs = figure_dataset(FigureId::fig5, ov);
        double worst = 0.0;
        std::vector<double> as{1.0, 5.0, 20.0};
        for (std::size_t k = 0; k < trajs.size(); ++k) {
            const double p = algII_limit_prob(1'000'000, as[k], 4.5).value;
            double sum = 0.0;
            int count = 0;
            for (const auto& x : trajs[k].samples) {
                if (x.t >= 15.0) {
                    sum += x.p_s;
                    ++count;
                }
            }
            worst = std::max(worst, std::abs(sum / count - p));
        }
        return bound("max |mean P_s on [15, 20] - p|", worst, 0.02);
    });
    return s.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"model", "specfun", "propagator", "analytic", "figures"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, bool fast) {
    if (suite == "model") {
        return model_suite();
    }
    if (suite == "specfun") {
        return specfun_suite(fast);
    }
    if (suite == "propagator") {
        return propagator_suite(fast);
    }
    if (suite == "analytic") {
        return analytic_suite(fast);
    }
    if (suite == "figures") {
        return figures_suite(fast);
    }
    throw UsageError("unknown suite '" + suite + "'");
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto& r : results) {
        failed += r.passed ? 0 : 1;
        checks.push_back({{"suite", r.suite},
                          {"check", r.name},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    }
    return {{"passed", failed == 0}, {"failed", failed}, {"total", results.size()}, {"checks", checks}};
}

}  // namespace nasearch::verify
