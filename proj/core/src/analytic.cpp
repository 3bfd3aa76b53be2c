#include "nasearch/analytic.hpp"

#include "nasearch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nasearch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// D_eta and D_{eta-1} at +z and -z.
struct PcfQuad {
    PcfPair order;
    PcfPair lowered;

    double max_error() const {
        return std::max({order.at_z.estimated_error, order.at_minus_z.estimated_error,
                         lowered.at_z.estimated_error, lowered.at_minus_z.estimated_error});
    }
    bool any_asymptotic() const {
        return order.at_z.branch == PcfBranch::asymptotic ||
               lowered.at_z.branch == PcfBranch::asymptotic;
    }
    bool any_extended() const {
        return order.at_z.extended_precision || order.at_minus_z.extended_precision ||
               lowered.at_z.extended_precision || lowered.at_minus_z.extended_precision;
    }
};

PcfQuad evaluate(cplx eta, cplx z, const PcfOptions& options) {
    return {pcf_d_pair(eta, z, options), pcf_d_pair(eta - 1.0, z, options)};
}

cplx wronskian_denominator(cplx eta) {
    const cplx d = std::sqrt(2.0 * kPi) * reciprocal_gamma(1.0 - eta);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()) || d == cplx{}) {
        throw DegenerateSolution("coefficient denominator vanishes for this order");
    }
    return d;
}

// W(z) and dW/dz for W = A1 D(z) + A2 D(-z).
std::pair<cplx, cplx> weber_value(cplx eta, cplx A1, cplx A2, cplx z, const PcfQuad& d) {
    const cplx w = A1 * d.order.at_z.value + A2 * d.order.at_minus_z.value;
    const cplx dw = eta * (A1 * d.lowered.at_z.value - A2 * d.lowered.at_minus_z.value) - 0.5 * z * w;
    return {w, dw};
}

PcfSolutionII make_solution_II(double a, double b, double as0, double ap0,
                               std::optional<std::int64_t> n, const PcfOptions& options) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidProblem("sweep rate a must be finite and > 0");
    }
    if (!std::isfinite(b)) {
        throw InvalidProblem("detuning b must be finite");
    }
    PcfSolutionII sol{};
    sol.a = a;
    sol.b = b;
    sol.n = n;
    sol.k = 1.0 / (2.0 * a);
    sol.eta = cplx{0.0, -1.0 / (2.0 * a)};
    sol.scale = std::sqrt(2.0 * a) * std::polar(1.0, kPi / 4.0);
    sol.shift = b / a;
    sol.z0 = -b * std::sqrt(2.0 / a) * std::polar(1.0, kPi / 4.0);
    sol.q0 = std::sqrt(2.0 * a) * ap0 * std::polar(1.0, 3.0 * kPi / 4.0);
    sol.denominator = wronskian_denominator(sol.eta);

    const PcfQuad d = evaluate(sol.eta, sol.z0, options);
    sol.A1 = (as0 * d.lowered.at_minus_z.value + sol.q0 * d.order.at_minus_z.value) / sol.denominator;
    sol.A2 = (as0 * d.lowered.at_z.value - sol.q0 * d.order.at_z.value) / sol.denominator;
    sol.error_estimate = d.max_error();
    sol.asymptotic_branch = d.any_asymptotic();
    sol.extended_precision = d.any_extended();
    return sol;
}

}  // namespace

PcfSolutionI algI_solution(const ScheduleI& s, const PcfOptions& options) {
    const double alpha = s.alpha();
    if (alpha == 0.0) {
        throw UsageError("algI_solution requires alpha != 0; use algI_alpha0");
    }
    PcfSolutionI sol{};
    const double root = std::sqrt(std::abs(alpha));
    sol.scale = alpha > 0.0 ? root * std::polar(1.0, -kPi / 4.0) : root * std::polar(1.0, kPi / 4.0);
    sol.shift = s.gamma() / alpha;
    sol.eta = kI * s.omega0() * s.omega0() / alpha;
    sol.z0 = sol.z_of_t(0.0);
    sol.valid_until = s.crossing_time();
    sol.denominator = wronskian_denominator(sol.eta);

    const PcfQuad d = evaluate(sol.eta, sol.z0, options);
    sol.A1 = d.lowered.at_minus_z.value / sol.denominator;
    sol.A2 = d.lowered.at_z.value / sol.denominator;
    return sol;
}

MobilePair algI_amplitudes(const PcfSolutionI& sol, const ScheduleI& s, double t,
                           const PcfOptions& options) {
    if (!(t >= 0.0) || (sol.valid_until && t > *sol.valid_until)) {
        throw ValidationError("algI_amplitudes: t outside the range described by the solution");
    }
    const double phase = s.phase_integral(t);
    const cplx z = sol.z_of_t(t);
    const auto [w, dw] = weber_value(sol.eta, sol.A1, sol.A2, z, evaluate(sol.eta, z, options));
    const cplx rotate = std::polar(1.0, -0.5 * phase);
    const cplx minus = rotate * w;
    cplx plus{};
    if (s.omega0() > 0.0) {
        const cplx dminus = rotate * (-0.5 * kI * (s.alpha() * t + s.gamma()) * w + sol.scale * dw);
        const cplx coupling_conj = -s.omega0() * std::polar(1.0, -phase);
        plus = dminus / coupling_conj;
    }
    return {plus, minus, phase};
}

MobilePair algI_alpha0(const ScheduleI& s, double t) {
    if (s.alpha() != 0.0) {
        throw UsageError("algI_alpha0 requires alpha == 0");
    }
    const double half_gamma = 0.5 * s.gamma();
    const double lambda = std::hypot(half_gamma, s.omega0());
    const double phi = lambda * t;
    const cplx minus = std::polar(1.0, -half_gamma * t) *
                       cplx{std::cos(phi), half_gamma / lambda * std::sin(phi)};
    const cplx plus = s.omega0() / lambda * std::sin(phi) * std::polar(1.0, half_gamma * t);
    return {plus, minus, s.phase_integral(t)};
}

ProbabilityPair algI_approx_probs(const ScheduleI& s, double t, ResonanceForm form) {
    double angle = s.omega0() * t;
    if (form == ResonanceForm::offset) {
        angle += 0.5 * s.theta0();
    }
    const double sn = std::sin(angle);
    const double cs = std::cos(angle);
    return {sn * sn, cs * cs};
}

std::vector<double> algI_peak_times(const ScheduleI& s, int l_max) {
    if (l_max < 1) {
        throw ValidationError("algI_peak_times: l_max must be >= 1");
    }
    std::vector<double> out;
    const auto tc = s.crossing_time();
    for (int l = 1; l <= l_max; ++l) {
        const double t = s.tau() * l;
        if (tc && t >= *tc) {
            break;
        }
        out.push_back(t);
    }
    return out;
}

std::optional<double> close_approach_time(const ScheduleI& s) { return s.crossing_time(); }

std::optional<double> close_approach_time(const ScheduleII& s) {
    if (s.b() > 0.0) {
        return s.transition_time();
    }
    return std::nullopt;
}

PcfSolutionII algII_solution(std::int64_t n, double a, double b, const PcfOptions& options) {
    const SearchProblem problem(n);
    const StatePair psi0 = initial_state(problem);
    return make_solution_II(a, b, psi0.a_s.real(), psi0.a_p.real(), n, options);
}

PcfSolutionII algII_solution_inf(double a, double b, const PcfOptions& options) {
    return make_solution_II(a, b, 0.0, 1.0, std::nullopt, options);
}

StatePair algII_amplitudes(const PcfSolutionII& sol, double t, const PcfOptions& options) {
    if (!(t >= 0.0)) {
        throw ValidationError("algII_amplitudes: t must be >= 0");
    }
    const cplx z = sol.z_of_t(t);
    const auto [w, dw] = weber_value(sol.eta, sol.A1, sol.A2, z, evaluate(sol.eta, z, options));
    const cplx rotate = std::polar(1.0, 0.5 * sol.a * t * t - sol.b * t);
    const cplx as = rotate * w;
    const cplx das = rotate * (kI * (sol.a * t - sol.b) * w + sol.scale * dw);
    return {as, -kI * das};
}

namespace {

LimitProbability limit_from(const PcfSolutionII& sol) {
    const double grow = std::exp(sol.k * kPi / 4.0);
    const double shrink = std::exp(-3.0 * sol.k * kPi / 4.0);
    const cplx amp = sol.A1 * grow + sol.A2 * shrink;
    LimitProbability out{};
    out.raw = std::norm(amp);
    const double rel_coeff = 2.0 * sol.error_estimate + 1e-14;
    out.estimated_error = 2.0 * std::abs(amp) * (std::abs(sol.A1) * grow + std::abs(sol.A2) * shrink) *
                              rel_coeff +
                          4.0 * std::numeric_limits<double>::epsilon();
    out.value = std::clamp(out.raw, 0.0, 1.0);
    out.accurate = std::isfinite(out.raw) && out.estimated_error <= 1e-8 && out.raw >= -1e-9 &&
                   out.raw <= 1.0 + 1e-9;
    out.asymptotic_branch = sol.asymptotic_branch;
    out.extended_precision = sol.extended_precision;
    return out;
}

}  // namespace

LimitProbability algII_limit_prob(std::int64_t n, double a, double b,
                                  const PcfOptions& options) {
    return limit_from(algII_solution(n, a, b, options));
}

LimitProbability algII_limit_prob_inf(double a, double b, const PcfOptions& options) {
    return limit_from(algII_solution_inf(a, b, options));
}

}  // namespace nasearch
