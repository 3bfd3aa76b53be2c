#include "nasearch/model.hpp"

#include "nasearch/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nasearch {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_size(std::int64_t n) {
    if (n < 2) {
        throw InvalidProblem("database size N must be >= 2 (got " + std::to_string(n) + ")");
    }
}

}  // namespace

SearchProblem::SearchProblem(std::int64_t n) : n_(n) { require_size(n); }

StatePair initial_state(const SearchProblem& problem) {
    const double n = static_cast<double>(problem.size());
    return {cplx{std::sqrt(1.0 / n), 0.0}, cplx{std::sqrt((n - 1.0) / n), 0.0}};
}

ScheduleI::ScheduleI(std::int64_t n, double epsilon, double alpha)
    : n_(n), epsilon_(epsilon), alpha_(alpha) {
    require_size(n);
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw InvalidProblem("coupling epsilon must be finite and >= 0");
    }
    if (!std::isfinite(alpha)) {
        throw InvalidProblem("gap velocity alpha must be finite");
    }
    const double nd = static_cast<double>(n);
    const double root = std::sqrt(nd - 1.0);
    omega0_ = root * epsilon / nd;
    tau_ = epsilon > 0.0 ? std::numbers::pi * nd / (2.0 * root * epsilon)
                         : std::numeric_limits<double>::infinity();
    // sin theta0 = -2 sqrt(N-1)/N and cos theta0 = 1 - 2/N hold simultaneously.
    theta0_ = std::atan2(-2.0 * root / nd, 1.0 - 2.0 / nd);
    sin_beta_ = (2.0 - nd) / nd;
    cos_beta_ = 2.0 * root / nd;
}

double ScheduleI::gap(double t) const noexcept { return std::abs(alpha_ * t + gamma_); }

double ScheduleI::phase_integral(double t) const noexcept {
    auto linear = [this](double s) { return gamma_ * s + 0.5 * alpha_ * s * s; };
    if (alpha_ < 0.0) {
        const double tc = -gamma_ / alpha_;
        if (t > tc) {
            return 2.0 * linear(tc) - linear(t);
        }
    }
    return linear(t);
}

std::optional<double> ScheduleI::crossing_time() const noexcept {
    if (alpha_ < 0.0) {
        return -gamma_ / alpha_;
    }
    return std::nullopt;
}

FgPair schedule_I_fg(const ScheduleI& s, double t) {
    const double nd = static_cast<double>(s.n());
    const double scale = -nd / (2.0 * std::sqrt(nd - 1.0)) * s.gap(t);
    const double th = s.theta(t);
    // cos(theta + beta) expanded so the exact beta components are used.
    const double cos_sum = std::cos(th) * s.cos_beta() - std::sin(th) * s.sin_beta();
    return {scale * std::sin(th), scale * cos_sum};
}

Ham2 hamiltonian_I(const ScheduleI& s, double t) {
    const auto [f, g] = schedule_I_fg(s, t);
    const double nd = static_cast<double>(s.n());
    const double root = std::sqrt(nd - 1.0);
    Ham2 h;
    h << (nd - 1.0) * f / nd, -root * f / nd,
         -root * f / nd, (f + nd * g) / nd;
    return h;
}

ScheduleII::ScheduleII(std::int64_t n, double a, double b) : n_(n), a_(a), b_(b) {
    require_size(n);
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidProblem("sweep rate a must be finite and > 0");
    }
    if (!std::isfinite(b)) {
        throw InvalidProblem("detuning b must be finite");
    }
}

double ScheduleII::f_const() const noexcept {
    const double nd = static_cast<double>(n_);
    return nd / std::sqrt(nd - 1.0);
}

double ScheduleII::g(double t) const noexcept {
    const double nd = static_cast<double>(n_);
    return (nd - 2.0) / std::sqrt(nd - 1.0) + 2.0 * (b_ - a_ * t);
}

double ScheduleII::gap(double t) const noexcept { return std::hypot(a_ * t - b_, 1.0); }

Ham2 hamiltonian_II(const ScheduleII& s, double t, GlobalPhase phase) {
    Ham2 h;
    h << 0.0, -1.0,
         -1.0, 2.0 * s.b() - 2.0 * s.a() * t;
    if (phase == GlobalPhase::physical) {
        const double shift = std::sqrt(static_cast<double>(s.n()) - 1.0);
        h(0, 0) += shift;
        h(1, 1) += shift;
    }
    return h;
}

BlochDecomposition bloch_decompose(const Ham2& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double tol = kHermitianTol * scale;
    if (std::abs(h(0, 0).imag()) > tol || std::abs(h(1, 1).imag()) > tol ||
        std::abs(h(0, 1) - std::conj(h(1, 0))) > tol) {
        throw ValidationError("bloch_decompose: matrix is not Hermitian");
    }
    const double x = h(0, 1).real();
    const double y = -h(0, 1).imag();
    if (std::abs(y) > tol) {
        throw ValidationError("bloch_decompose: off-diagonal must be real (zero sigma_y part)");
    }
    const double d = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double half_gap = std::hypot(x, d);

    BlochDecomposition out{};
    out.phase_coefficient = 0.5 * (h(0, 0).real() + h(1, 1).real());
    out.gap = 2.0 * half_gap;
    out.axis = half_gap > 0.0 ? std::array<double, 3>{x / half_gap, 0.0, d / half_gap}
                              : std::array<double, 3>{0.0, 0.0, 1.0};
    out.theta = std::atan2(out.axis[0], out.axis[2]);
    return out;
}

Eigen::Matrix2d eigenbasis_rotation(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    Eigen::Matrix2d u;
    u << c, -s,
         s, c;
    return u;
}

}  // namespace nasearch
