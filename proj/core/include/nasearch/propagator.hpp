#pragma once

// Numerical integration of the two-level Schroedinger equation, in the fixed
// basis (i d/dt psi = H(t) psi) and in the mobile eigenbasis of Algorithm I.
// These integrators are the reference every closed form is checked against.

#include "nasearch/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nasearch {

using HamiltonianFn = std::function<Ham2(double)>;

struct IntegratorSettings {
    // Accuracy target. The stepper's per-step absolute and relative error
    // target is tol/1000 (floored at 1e-15), which keeps the accumulated norm
    // drift below 100 tol on runs of up to ~10^6 steps.
    double tol = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 500'000'000;
    // Integrate with H - (tr H / 2) I. Only the global phase of the
    // amplitudes changes; probabilities are unaffected.
    bool remove_trace = false;
};

struct IntegratorStats {
    std::size_t steps = 0;
    double max_norm_drift = 0.0;  // max over samples of | |psi|^2 - 1 |
};

struct Sample {
    double t;
    StatePair state;
    double p_s;
    double p_p;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::string label;
    // Divisor applied to t when the trajectory is written out (tau for the
    // Algorithm I figures, 1 for absolute time).
    double time_unit = 1.0;
    std::vector<std::pair<std::string, double>> parameters;
    IntegratorSettings settings;
    IntegratorStats stats;
};

struct MobileSample {
    double t;
    MobilePair state;
};

struct MobileTrajectory {
    std::vector<MobileSample> samples;
    IntegratorStats stats;
};

// Uniform grid of `count` points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t count);

Trajectory integrate_fixed(const HamiltonianFn& hamiltonian, const StatePair& state0,
                           std::span<const double> t_grid, const IntegratorSettings& settings = {});

// da+/dt = -Omega(t) a-, da-/dt = conj(Omega(t)) a+, with
// Omega(t) = -Omega0 exp(i int_0^t omega). The phase integral is closed form.
MobileTrajectory integrate_mobile(const ScheduleI& s, const MobilePair& mobile0,
                                  std::span<const double> t_grid,
                                  const IntegratorSettings& settings = {});

// (a_s, a_p) = U^dagger(theta) (a+ e^{-i phase/2}, a- e^{+i phase/2}).
StatePair mobile_to_fixed(const MobilePair& m, double theta, double phase);

// Convenience wrappers used by the sweep engine, the CLI and the tests.
Trajectory simulate_I(const ScheduleI& s, std::span<const double> t_grid,
                      const IntegratorSettings& settings = {});
Trajectory simulate_II(const ScheduleII& s, std::span<const double> t_grid,
                       const IntegratorSettings& settings = {});

// Centre of the stretch of samples in [t_lo, t_hi] where P_s >= level, i.e.
// the location of a slow maximum regardless of small superposed ripples.
// Empty when no sample in the window reaches the level.
std::optional<double> plateau_center(const Trajectory& traj, double t_lo, double t_hi, double level);

}  // namespace nasearch
