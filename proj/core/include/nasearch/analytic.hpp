#pragma once

// Closed-form dynamics of both algorithms.
//
// Algorithm I with a linear gap omega(t) = alpha t + gamma reduces, in the
// mobile basis, to Weber's equation for W(t) = exp(i Phi(t)/2) a-(t) with
// order eta = i Omega0^2 / alpha. Algorithm II with a linear sweep reduces to
// Weber's equation for W(t) = exp(-i (a t^2/2 - b t)) a_s(t) with order
// eta = -i / (2a). In both cases W = A1 D_eta(z) + A2 D_eta(-z) with A1, A2
// fixed by the initial amplitudes.

#include "nasearch/model.hpp"
#include "nasearch/specfun.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nasearch {

// Pieces shared by both solutions. The denominator
//   D_{eta-1}(z0) D_eta(-z0) + D_eta(z0) D_{eta-1}(-z0)
// is a Wronskian and equals sqrt(2 pi) / Gamma(1 - eta) for every z0.
struct PcfSolutionI {
    cplx eta;
    cplx scale;      // dz/dt
    double shift;    // z(t) = scale * (t + shift)
    cplx z0;
    cplx A1;
    cplx A2;
    cplx denominator;
    // alpha < 0: the levels touch at t_c and the linear-gap equation only
    // describes t <= t_c.
    std::optional<double> valid_until;

    cplx z_of_t(double t) const noexcept { return scale * (t + shift); }
};

// Requires alpha != 0. For alpha > 0, scale = sqrt(alpha) e^{-i pi/4}; for
// alpha < 0, scale = sqrt(|alpha|) e^{+i pi/4}. Either way scale^2 = -i alpha.
PcfSolutionI algI_solution(const ScheduleI& s, const PcfOptions& options = {});

// (a+, a-) at time t. a+ follows from da-/dt = conj(Omega) a+ and the
// derivative identity D_nu'(z) = nu D_{nu-1}(z) - (z/2) D_nu(z).
// Throws ValidationError for t outside [0, valid_until].
MobilePair algI_amplitudes(const PcfSolutionI& sol, const ScheduleI& s, double t,
                           const PcfOptions& options = {});

// alpha = 0: with lambda = sqrt(gamma^2/4 + Omega0^2), phi = lambda t,
//   a- = e^{-i gamma t/2} (cos phi + i (gamma/2)/lambda sin phi),
//   a+ = (Omega0/lambda) e^{+i gamma t/2} sin phi.
// Throws UsageError when alpha != 0.
MobilePair algI_alpha0(const ScheduleI& s, double t);

enum class ResonanceForm {
    plain,   // P_s = sin^2(Omega0 t)
    offset,  // P_s = sin^2(Omega0 t + theta0/2), exact while a- stays 1
};

struct ProbabilityPair {
    double p_s;
    double p_p;
};

ProbabilityPair algI_approx_probs(const ScheduleI& s, double t,
                                  ResonanceForm form = ResonanceForm::plain);

// tau * l for l = 1..l_max, dropping times at or past t_c when alpha < 0.
// Odd l are maxima of P_s, even l return it to its starting value.
std::vector<double> algI_peak_times(const ScheduleI& s, int l_max);

std::optional<double> close_approach_time(const ScheduleI& s);
// b/a when b > 0.
std::optional<double> close_approach_time(const ScheduleII& s);

struct PcfSolutionII {
    cplx eta;
    cplx scale;      // sqrt(2 a i)
    double shift;    // z(t) = scale * (t - shift), shift = b/a
    cplx z0;
    cplx q0;
    cplx A1;
    cplx A2;
    cplx denominator;
    double k;        // 1/(2a)
    double a;
    double b;
    std::optional<std::int64_t> n;  // empty for N -> infinity
    double error_estimate;          // relative, from the D evaluations
    bool asymptotic_branch;
    bool extended_precision;

    cplx z_of_t(double t) const noexcept { return scale * (t - shift); }
};

PcfSolutionII algII_solution(std::int64_t n, double a, double b, const PcfOptions& options = {});
// Coefficients with the N -> infinity initial state (a_s, a_p) = (0, 1).
PcfSolutionII algII_solution_inf(double a, double b, const PcfOptions& options = {});

// a_s(t) = e^{i (a t^2/2 - b t)} W(z(t)), a_p = -i da_s/dt.
StatePair algII_amplitudes(const PcfSolutionII& sol, double t, const PcfOptions& options = {});

struct LimitProbability {
    double value;            // clamped to [0, 1]
    double raw;
    double estimated_error;  // absolute
    bool accurate;
    bool asymptotic_branch;  // any D evaluated by the large-|z| expansion
    bool extended_precision;
};

// p(a, b) = |A1 e^{k pi/4} + A2 e^{-3 k pi/4}|^2, the t -> infinity value of
// |a_s|^2 obtained from the large-|z| forms of D_eta.
LimitProbability algII_limit_prob(std::int64_t n, double a, double b,
                                  const PcfOptions& options = {});
LimitProbability algII_limit_prob_inf(double a, double b, const PcfOptions& options = {});

}  // namespace nasearch
