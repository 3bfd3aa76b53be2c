#include "nasearch/propagator.hpp"

#include "nasearch/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace nasearch {

namespace {

namespace odeint = boost::numeric::odeint;

// (re, im) of the two amplitudes.
using State4 = std::array<double, 4>;

constexpr double kUnitNormTol = 1e-9;
// Per-step error target relative to the user tolerance. Global error grows
// with the step count (up to ~1e6 steps on the figure runs).
constexpr double kLocalFraction = 1e-3;
constexpr double kLocalFloor = 1e-15;

void validate_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) {
        throw ValidationError("time grid is empty");
    }
    if (t_grid.front() != 0.0) {
        throw ValidationError("time grid must start at t = 0");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ValidationError("time grid must be strictly increasing");
        }
    }
}

void validate_settings(const IntegratorSettings& settings) {
    if (!(settings.tol >= 1e-13 && settings.tol <= 1e-6)) {
        throw ValidationError("integrator tolerance must lie in [1e-13, 1e-6]");
    }
    if (!(settings.initial_step > 0.0)) {
        throw ValidationError("initial step must be positive");
    }
}

double norm_sq(const State4& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }

// Drives a dense-output dopri5 stepper over the sample grid and hands each
// interpolated state to `record`.
template <class System, class Record>
IntegratorStats drive(System&& system, State4 x0, std::span<const double> t_grid,
                      const IntegratorSettings& settings, Record&& record) {
    const double local = std::max(settings.tol * kLocalFraction, kLocalFloor);
    auto stepper = odeint::make_dense_output(local, local, odeint::runge_kutta_dopri5<State4>());
    IntegratorStats stats;
    record(t_grid[0], x0);
    stats.max_norm_drift = std::abs(norm_sq(x0) - 1.0);
    if (t_grid.size() == 1) {
        return stats;
    }

    const double span = t_grid.back();
    stepper.initialize(x0, 0.0, std::min(settings.initial_step, span));
    std::size_t next = 1;
    State4 x{};
    while (next < t_grid.size()) {
        const double t_now = stepper.current_time();
        try {
            stepper.do_step(system);
        } catch (const odeint::odeint_error& e) {
            throw IntegrationError(std::string("step size control failed: ") + e.what(), t_now);
        }
        ++stats.steps;
        const double dt = stepper.current_time_step();
        if (dt < 1e-14 * std::max(1.0, std::abs(stepper.current_time()))) {
            throw IntegrationError("step size underflow", stepper.current_time());
        }
        if (stats.steps > settings.max_steps) {
            throw IntegrationError("step budget exhausted", stepper.current_time());
        }
        while (next < t_grid.size() && t_grid[next] <= stepper.current_time()) {
            stepper.calc_state(t_grid[next], x);
            stats.max_norm_drift = std::max(stats.max_norm_drift, std::abs(norm_sq(x) - 1.0));
            record(t_grid[next], x);
            ++next;
        }
    }
    return stats;
}

}  // namespace

std::vector<double> uniform_grid(double t_max, std::size_t count) {
    if (count < 2 || !(t_max > 0.0)) {
        throw ValidationError("uniform grid needs t_max > 0 and at least 2 points");
    }
    std::vector<double> grid(count);
    const double step = t_max / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = step * static_cast<double>(i);
    }
    grid.back() = t_max;
    return grid;
}

Trajectory integrate_fixed(const HamiltonianFn& hamiltonian, const StatePair& state0,
                           std::span<const double> t_grid, const IntegratorSettings& settings) {
    validate_grid(t_grid);
    validate_settings(settings);
    if (std::abs(state0.norm_sq() - 1.0) > kUnitNormTol) {
        throw ValidationError("initial state is not normalized");
    }

    const bool remove_trace = settings.remove_trace;
    auto system = [&hamiltonian, remove_trace](const State4& x, State4& dxdt, double t) {
        Ham2 h = hamiltonian(t);
        if (remove_trace) {
            const cplx shift = 0.5 * (h(0, 0) + h(1, 1));
            h(0, 0) -= shift;
            h(1, 1) -= shift;
        }
        const cplx as{x[0], x[1]};
        const cplx ap{x[2], x[3]};
        // d psi/dt = -i H psi
        const cplx ds = cplx{0.0, -1.0} * (h(0, 0) * as + h(0, 1) * ap);
        const cplx dp = cplx{0.0, -1.0} * (h(1, 0) * as + h(1, 1) * ap);
        dxdt = {ds.real(), ds.imag(), dp.real(), dp.imag()};
    };

    Trajectory traj;
    traj.settings = settings;
    traj.samples.reserve(t_grid.size());
    auto record = [&traj](double t, const State4& x) {
        const StatePair st{cplx{x[0], x[1]}, cplx{x[2], x[3]}};
        traj.samples.push_back({t, st, st.prob_s(), st.prob_p()});
    };
    const State4 x0{state0.a_s.real(), state0.a_s.imag(), state0.a_p.real(), state0.a_p.imag()};
    traj.stats = drive(system, x0, t_grid, settings, record);
    return traj;
}

MobileTrajectory integrate_mobile(const ScheduleI& s, const MobilePair& mobile0,
                                  std::span<const double> t_grid,
                                  const IntegratorSettings& settings) {
    validate_grid(t_grid);
    validate_settings(settings);
    if (std::abs(mobile0.norm_sq() - 1.0) > kUnitNormTol) {
        throw ValidationError("initial mobile state is not normalized");
    }

    const double omega0 = s.omega0();
    auto system = [&s, omega0](const State4& x, State4& dxdt, double t) {
        const cplx coupling = -omega0 * std::polar(1.0, s.phase_integral(t));
        const cplx ap{x[0], x[1]};
        const cplx am{x[2], x[3]};
        const cplx dap = -coupling * am;
        const cplx dam = std::conj(coupling) * ap;
        dxdt = {dap.real(), dap.imag(), dam.real(), dam.imag()};
    };

    MobileTrajectory out;
    out.samples.reserve(t_grid.size());
    auto record = [&out, &s](double t, const State4& x) {
        out.samples.push_back({t, MobilePair{cplx{x[0], x[1]}, cplx{x[2], x[3]}, s.phase_integral(t)}});
    };
    const State4 x0{mobile0.a_plus.real(), mobile0.a_plus.imag(), mobile0.a_minus.real(),
                    mobile0.a_minus.imag()};
    out.stats = drive(system, x0, t_grid, settings, record);
    return out;
}

StatePair mobile_to_fixed(const MobilePair& m, double theta, double phase) {
    const double c = std::cos(0.5 * theta);
    const double sn = std::sin(0.5 * theta);
    const cplx plus = m.a_plus * std::polar(1.0, -0.5 * phase);
    const cplx minus = m.a_minus * std::polar(1.0, 0.5 * phase);
    return {c * plus - sn * minus, sn * plus + c * minus};
}

Trajectory simulate_I(const ScheduleI& s, std::span<const double> t_grid,
                      const IntegratorSettings& settings) {
    IntegratorSettings local = settings;
    // The identity part of H grows like sqrt(N) (alpha t + gamma) and would
    // only add a global phase the stepper has to resolve.
    local.remove_trace = true;
    auto traj = integrate_fixed([&s](double t) { return hamiltonian_I(s, t); },
                                initial_state(SearchProblem(s.n())), t_grid, local);
    traj.label = "algorithm-1";
    traj.parameters = {{"N", static_cast<double>(s.n())},
                       {"epsilon", s.epsilon()},
                       {"alpha", s.alpha()},
                       {"gamma", s.gamma()},
                       {"tau", s.tau()}};
    if (auto tc = s.crossing_time()) {
        traj.parameters.emplace_back("t_c", *tc);
    }
    return traj;
}

Trajectory simulate_II(const ScheduleII& s, std::span<const double> t_grid,
                       const IntegratorSettings& settings) {
    auto traj = integrate_fixed([&s](double t) { return hamiltonian_II(s, t); },
                                initial_state(SearchProblem(s.n())), t_grid, settings);
    traj.label = "algorithm-2";
    traj.parameters = {{"N", static_cast<double>(s.n())},
                       {"a", s.a()},
                       {"b", s.b()},
                       {"t_c", s.transition_time()}};
    return traj;
}

std::optional<double> plateau_center(const Trajectory& traj, double t_lo, double t_hi, double level) {
    std::optional<double> first;
    double last = 0.0;
    for (const auto& x : traj.samples) {
        if (x.t >= t_lo && x.t <= t_hi && x.p_s >= level) {
            if (!first) {
                first = x.t;
            }
            last = x.t;
        }
    }
    if (!first) {
        return std::nullopt;
    }
    return 0.5 * (*first + last);
}

}  // namespace nasearch
