#pragma once

// Two-level reduction of the unstructured search problem.
//
// All dynamics live in the ordered basis {|s>, |p>}, where |s> is the marked
// item and |p> the normalized uniform superposition of the N-1 unmarked
// items. Energies are in units with hbar = 1.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>

namespace nasearch {

using cplx = std::complex<double>;

// Amplitudes in the fixed {|s>, |p>} basis.
struct StatePair {
    cplx a_s{};
    cplx a_p{};

    double prob_s() const noexcept { return std::norm(a_s); }
    double prob_p() const noexcept { return std::norm(a_p); }
    double norm_sq() const noexcept { return std::norm(a_s) + std::norm(a_p); }
};

// Amplitudes in the instantaneous eigenbasis {|E+,t>, |E-,t>}, with the
// dynamical phase factors exp(-i int E_pm dt) stripped off.
struct MobilePair {
    cplx a_plus{};
    cplx a_minus{};
    double accumulated_phase = 0.0;  // int_0^t omega(t') dt'

    double norm_sq() const noexcept { return std::norm(a_plus) + std::norm(a_minus); }
};

using Ham2 = Eigen::Matrix2cd;

class SearchProblem {
public:
    explicit SearchProblem(std::int64_t n);
    std::int64_t size() const noexcept { return n_; }

private:
    std::int64_t n_;
};

StatePair initial_state(const SearchProblem& problem);

// Algorithm I: mixing angle theta(t) = theta0 + 2 Omega0 t and gap
// omega(t) = |alpha t + gamma|, with gamma = 1 so that f(0) = 1, g(0) = 0.
class ScheduleI {
public:
    ScheduleI(std::int64_t n, double epsilon, double alpha);

    std::int64_t n() const noexcept { return n_; }
    double epsilon() const noexcept { return epsilon_; }
    double alpha() const noexcept { return alpha_; }
    double gamma() const noexcept { return gamma_; }

    // Coupling between mobile amplitudes, sqrt(N-1) eps / N.
    double omega0() const noexcept { return omega0_; }
    // First peak time pi N / (2 sqrt(N-1) eps); Omega0 * tau == pi/2.
    double tau() const noexcept { return tau_; }
    double theta0() const noexcept { return theta0_; }
    double sin_beta() const noexcept { return sin_beta_; }
    double cos_beta() const noexcept { return cos_beta_; }

    double theta(double t) const noexcept { return theta0_ + 2.0 * omega0_ * t; }
    double gap(double t) const noexcept;
    // Closed form of int_0^t |alpha s + gamma| ds, split at the crossing.
    double phase_integral(double t) const noexcept;
    // -gamma/alpha for alpha < 0, where the levels touch.
    std::optional<double> crossing_time() const noexcept;

private:
    std::int64_t n_;
    double epsilon_;
    double alpha_;
    double gamma_ = 1.0;
    double omega0_;
    double tau_;
    double theta0_;
    double sin_beta_;
    double cos_beta_;
};

struct FgPair {
    double f;
    double g;
};

FgPair schedule_I_fg(const ScheduleI& s, double t);
Ham2 hamiltonian_I(const ScheduleI& s, double t);

// Algorithm II: f = N / sqrt(N-1) constant, g(t) linear in t.
class ScheduleII {
public:
    ScheduleII(std::int64_t n, double a, double b);

    std::int64_t n() const noexcept { return n_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    double f_const() const noexcept;
    double g(double t) const noexcept;
    // sqrt((a t - b)^2 + 1): half the eigenvalue splitting of H'(t).
    double gap(double t) const noexcept;
    double transition_time() const noexcept { return b_ / a_; }

private:
    std::int64_t n_;
    double a_;
    double b_;
};

enum class GlobalPhase {
    dropped,   // H'(t) = [[0, -1], [-1, 2b - 2at]]
    physical,  // H'(t) + sqrt(N-1) I
};

Ham2 hamiltonian_II(const ScheduleII& s, double t, GlobalPhase phase = GlobalPhase::dropped);

// H = phase_coefficient I + (gap / 2) n.sigma with n = (sin theta, 0, cos theta).
struct BlochDecomposition {
    double phase_coefficient;
    double gap;
    std::array<double, 3> axis;
    double theta;
};

BlochDecomposition bloch_decompose(const Ham2& h);

// U^dagger(theta): columns are |E+> = (cos theta/2, sin theta/2) and
// |E-> = (-sin theta/2, cos theta/2).
Eigen::Matrix2d eigenbasis_rotation(double theta);

}  // namespace nasearch
