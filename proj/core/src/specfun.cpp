#include "nasearch/specfun.hpp"

#include "nasearch/errors.hpp"

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace nasearch {

namespace {

namespace bmp = boost::multiprecision;
using qreal = bmp::float128;
using qcplx = bmp::complex128;

constexpr double kPi = std::numbers::pi;
constexpr double kEpsD = std::numeric_limits<double>::epsilon() / 2.0;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Double-precision series results with a larger rounding bound are redone
// in quad precision.
constexpr double kDoubleTarget = 1e-14;

bool nonpositive_integer(cplx z, std::int64_t& n) {
    if (z.imag() != 0.0 || z.real() > 0.0 || z.real() != std::floor(z.real())) {
        return false;
    }
    n = static_cast<std::int64_t>(z.real());
    return true;
}

// sin(pi z) with the real part reduced to [-1/2, 1/2] before scaling.
cplx sin_pi(cplx z) {
    const double n = std::round(z.real());
    const cplx s = std::sin(kPi * cplx{z.real() - n, z.imag()});
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

cplx lanczos_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        x += kLanczos[i] / (z + static_cast<double>(i));
    }
    const cplx t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

double l1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }
qreal l1(const qcplx& z) { return bmp::abs(z.real()) + bmp::abs(z.imag()); }

// ---------------------------------------------------------------- quad gamma

// Bernoulli numbers B_2 .. B_30 as exact ratios.
constexpr std::array<std::array<double, 2>, 15> kBernoulli{{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

qreal q_pi() { return qreal("3.14159265358979323846264338327950288419716939937510"); }

// log Gamma(z) for Re z >= 1/2: upward shift to Re z >= 20, then Stirling.
// The branch of the result is irrelevant; callers only exponentiate it.
qcplx q_log_gamma(qcplx z) {
    qcplx shift_product(1);
    while (z.real() < 20) {
        shift_product *= z;
        z += qreal(1);
    }
    const qcplx inv = qcplx(1) / z;
    const qcplx inv2 = inv * inv;
    qcplx power = inv;
    qcplx sum(0);
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        const qreal k2 = qreal(2 * (j + 1));
        const qreal coef = qreal(kBernoulli[j][0]) / qreal(kBernoulli[j][1]) / (k2 * (k2 - 1));
        sum += coef * power;
        power *= inv2;
    }
    const qreal half_log_2pi = bmp::log(2 * q_pi()) / 2;
    return (z - qreal(0.5)) * bmp::log(z) - z + half_log_2pi + sum - bmp::log(shift_product);
}

qcplx q_sin_pi(const qcplx& z) {
    const qreal n = bmp::round(z.real());
    const qcplx s = bmp::sin(q_pi() * qcplx(z.real() - n, z.imag()));
    return bmp::fmod(n, qreal(2)) == 0 ? s : qcplx(-s);
}

qcplx q_reciprocal_gamma(const qcplx& z) {
    std::int64_t n = 0;
    if (nonpositive_integer(cplx{static_cast<double>(z.real()), static_cast<double>(z.imag())}, n) &&
        qreal(static_cast<double>(z.real())) == z.real()) {
        return qcplx(0);
    }
    if (z.real() < qreal(0.5)) {
        return q_sin_pi(z) / q_pi() * bmp::exp(q_log_gamma(qcplx(1) - z));
    }
    return bmp::exp(-q_log_gamma(z));
}

// ------------------------------------------------------------ Kummer series

template <class C, class R>
struct SeriesSum {
    C value;
    R weighted_abs;  // sum of (k + 1) |t_k|, bounds the accumulated rounding
    R tail;
    bool converged;
};

// M(a, b, x) for real b > 0.
template <class C, class R>
SeriesSum<C, R> kummer_real_b(const C& a, R b, const C& x, R rel_tol) {
    C term(1);
    C sum(1);
    R weighted(1);
    const R xa = l1(x);
    const int kmin = static_cast<int>(xa + l1(a) + b) + 1;
    for (int k = 0; k < 4000; ++k) {
        term *= (a + R(k)) * x;
        term /= (b + R(k)) * R(k + 1);
        sum += term;
        const R at = l1(term);
        weighted += at * R(k + 2);
        if (at == 0) {
            return {sum, weighted, R(0), true};
        }
        if (k >= kmin) {
            const R r = l1(a + R(k + 1)) * xa / ((b + R(k + 1)) * R(k + 2));
            if (r < 1) {
                const R tail = at * r / (1 - r);
                if (tail <= rel_tol * l1(sum)) {
                    return {sum, weighted, tail, true};
                }
            }
        }
    }
    return {sum, weighted, std::numeric_limits<R>::infinity(), false};
}

template <class C, class R>
struct PcfSeriesParts {
    C even;    // D_nu(z) = even + odd, D_nu(-z) = even - odd
    C odd;
    R abs_error;
    bool converged;
};

// Even and odd Weber solutions scaled by D_nu(0) and D_nu'(0). For Re z^2 < 0
// Kummer's transformation M(a, b, x) = e^x M(b - a, b, -x) keeps the terms
// from alternating.
template <class C, class R>
PcfSeriesParts<C, R> pcf_series_parts(const C& nu, const C& z, const C& c_even, const C& c_odd,
                                      R eps) {
    using std::exp;
    const C z2 = z * z;
    const C x = z2 / R(2);
    const R half(0.5);
    const R three_half(1.5);
    SeriesSum<C, R> m_even;
    SeriesSum<C, R> m_odd;
    C pre;
    if (x.real() >= 0) {
        pre = exp(-z2 / R(4));
        m_even = kummer_real_b<C, R>(-nu / R(2), half, x, eps);
        m_odd = kummer_real_b<C, R>((R(1) - nu) / R(2), three_half, x, eps);
    } else {
        pre = exp(z2 / R(4));
        m_even = kummer_real_b<C, R>(half + nu / R(2), half, C(-x), eps);
        m_odd = kummer_real_b<C, R>(R(1) + nu / R(2), three_half, C(-x), eps);
    }
    PcfSeriesParts<C, R> out;
    out.even = c_even * pre * m_even.value;
    out.odd = c_odd * z * pre * m_odd.value;
    const R pre_abs = l1(pre);
    const R exp_rounding = eps * (R(4) + l1(z2));
    out.abs_error = l1(c_even) * pre_abs * (R(4) * eps * m_even.weighted_abs + m_even.tail) +
                    l1(c_odd) * l1(z) * pre_abs * (R(4) * eps * m_odd.weighted_abs + m_odd.tail) +
                    exp_rounding * (l1(out.even) + l1(out.odd));
    out.converged = m_even.converged && m_odd.converged;
    return out;
}

double relative(double abs_error, cplx value) {
    if (abs_error == 0.0) {
        return 0.0;
    }
    const double mag = std::abs(value);
    return mag > 0.0 ? abs_error / mag : std::numeric_limits<double>::infinity();
}

PcfPair series_pair_double(cplx nu, cplx z, bool& ok) {
    const cplx scale = std::exp(0.5 * nu * std::log(2.0));
    const cplx c_even = scale * std::sqrt(kPi) * reciprocal_gamma(0.5 * (1.0 - nu));
    const cplx c_odd = -scale * std::sqrt(2.0 * kPi) * reciprocal_gamma(-0.5 * nu);
    const auto parts = pcf_series_parts<cplx, double>(nu, z, c_even, c_odd, kEpsD);
    const cplx plus = parts.even + parts.odd;
    const cplx minus = parts.even - parts.odd;
    PcfPair out{{plus, PcfBranch::power_series, relative(parts.abs_error, plus), false},
                {minus, PcfBranch::power_series, relative(parts.abs_error, minus), false}};
    ok = parts.converged && out.at_z.estimated_error <= kDoubleTarget &&
         out.at_minus_z.estimated_error <= kDoubleTarget;
    return out;
}

PcfPair series_pair_quad(cplx nu_d, cplx z_d) {
    const qcplx nu(nu_d.real(), nu_d.imag());
    const qcplx z(z_d.real(), z_d.imag());
    const qreal pi = q_pi();
    const qcplx scale = bmp::exp(nu / qreal(2) * bmp::log(qreal(2)));
    const qcplx c_even = scale * bmp::sqrt(pi) * q_reciprocal_gamma((qreal(1) - nu) / qreal(2));
    const qcplx c_odd = -scale * bmp::sqrt(2 * pi) * q_reciprocal_gamma(-nu / qreal(2));
    const qreal eps = std::numeric_limits<qreal>::epsilon() / 2;
    const auto parts = pcf_series_parts<qcplx, qreal>(nu, z, c_even, c_odd, eps);
    const qcplx plus = parts.even + parts.odd;
    const qcplx minus = parts.even - parts.odd;
    const cplx plus_d{static_cast<double>(plus.real()), static_cast<double>(plus.imag())};
    const cplx minus_d{static_cast<double>(minus.real()), static_cast<double>(minus.imag())};
    const double abs_error = parts.converged ? static_cast<double>(parts.abs_error)
                                             : std::numeric_limits<double>::infinity();
    auto report = [&](cplx v) {
        // Final rounding to double.
        const double err = std::max(relative(abs_error, v), v == cplx{} ? 0.0 : kEpsD);
        return PcfEvalReport{v, PcfBranch::power_series, err, true};
    };
    return {report(plus_d), report(minus_d)};
}

// Sums a Poincare series whose term ratio is `ratio(k)` up to its smallest
// term. Returns the sum and the size of the last term kept, which serves as
// the truncation error estimate.
template <class Ratio>
std::pair<cplx, double> poincare_sum(Ratio ratio) {
    cplx term = 1.0;
    cplx sum = 1.0;
    double last = 1.0;
    for (int k = 0; k < 400; ++k) {
        const cplx next = term * ratio(k);
        const double next_abs = std::abs(next);
        if (next_abs == 0.0) {
            return {sum, 0.0};
        }
        if (next_abs >= last) {
            break;
        }
        sum += next;
        term = next;
        last = next_abs;
        if (next_abs < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return {sum, last};
}

void check_accuracy(const PcfEvalReport& r, const PcfOptions& options) {
    if (!(r.estimated_error <= options.max_rel_error)) {
        throw AccuracyError("parabolic cylinder function: estimated relative error " +
                                std::to_string(r.estimated_error) + " above requested " +
                                std::to_string(options.max_rel_error),
                            r.value, r.estimated_error);
    }
}

}  // namespace

cplx complex_gamma(cplx z) {
    std::int64_t n = 0;
    if (nonpositive_integer(z, n)) {
        throw PoleError(n);
    }
    if (z.real() < 0.5) {
        return kPi / (sin_pi(z) * lanczos_gamma(1.0 - z));
    }
    return lanczos_gamma(z);
}

cplx reciprocal_gamma(cplx z) {
    std::int64_t n = 0;
    if (nonpositive_integer(z, n)) {
        return 0.0;
    }
    if (z.real() < 0.5) {
        return sin_pi(z) * lanczos_gamma(1.0 - z) / kPi;
    }
    return 1.0 / lanczos_gamma(z);
}

KummerResult kummer_m(cplx a, cplx b, cplx z) {
    std::int64_t n = 0;
    if (nonpositive_integer(b, n)) {
        throw ValidationError("kummer_m: b must not be a non-positive integer");
    }
    constexpr int kMaxTerms = 500;
    constexpr double kTol = 1e-14;
    cplx term = 1.0;
    cplx sum = 1.0;
    const double za = std::abs(z);
    const int kmin = static_cast<int>(za + std::abs(a) + std::abs(b)) + 1;
    for (int k = 0; k + 1 < kMaxTerms; ++k) {
        term *= (a + static_cast<double>(k)) * z / ((b + static_cast<double>(k)) * (k + 1.0));
        sum += term;
        const double at = std::abs(term);
        if (at == 0.0) {
            return {sum, 0.0, k + 2};
        }
        if (k >= kmin) {
            const double r = std::abs(a + (k + 1.0)) * za / (std::abs(b + (k + 1.0)) * (k + 2.0));
            if (r < 1.0) {
                const double tail = at * r / (1.0 - r);
                if (tail <= kTol * std::abs(sum)) {
                    return {sum, tail, k + 2};
                }
            }
        }
    }
    throw AccuracyError("kummer_m: series did not converge within 500 terms", sum,
                        std::abs(term) / std::abs(sum));
}

PcfPair pcf_d_series(cplx nu, cplx z) {
    bool ok = false;
    PcfPair out = series_pair_double(nu, z, ok);
    if (!ok) {
        out = series_pair_quad(nu, z);
    }
    return out;
}

PcfEvalReport pcf_d_asymptotic(cplx nu, cplx z) {
    const cplx z2 = z * z;
    const cplx w = 1.0 / (2.0 * z2);
    const cplx log_z = std::log(z);

    // z^nu e^{-z^2/4} [1 - nu(nu-1)/(2z^2) + nu(nu-1)(nu-2)(nu-3)/(2*4 z^4) - ...]
    const auto [s_dom, err_dom] = poincare_sum([&](int k) {
        return -(nu - 2.0 * k) * (nu - 2.0 * k - 1.0) * w / (k + 1.0);
    });
    const cplx dom_pre = std::exp(nu * log_z - 0.25 * z2);
    const cplx dominant = dom_pre * s_dom;
    double abs_error = std::abs(dom_pre) * err_dom;
    double exponent_size = std::abs(nu * log_z) + 0.25 * std::abs(z2);

    cplx value = dominant;
    const double phi = std::arg(z);
    if (std::abs(phi) > 0.5 * kPi) {
        // Connection term -sqrt(2 pi)/Gamma(-nu) e^{+-i pi nu} z^{-nu-1} e^{z^2/4} [...]
        const double sign = phi > 0.0 ? 1.0 : -1.0;
        const auto [s_sub, err_sub] = poincare_sum([&](int k) {
            return (nu + 2.0 * k + 1.0) * (nu + 2.0 * k + 2.0) * w / (k + 1.0);
        });
        const cplx sub_pre = -std::sqrt(2.0 * kPi) * reciprocal_gamma(-nu) *
                             std::exp(sign * cplx{0.0, kPi} * nu + 0.25 * z2 - (nu + 1.0) * log_z);
        value += sub_pre * s_sub;
        abs_error += std::abs(sub_pre) * err_sub;
        exponent_size = std::max(exponent_size, std::abs((nu + 1.0) * log_z) + 0.25 * std::abs(z2) +
                                                    kPi * std::abs(nu));
    }
    const double rounding = kEpsD * (8.0 + exponent_size);
    return {value, PcfBranch::asymptotic, relative(abs_error, value) + rounding, false};
}

PcfPair pcf_d_pair(cplx nu, cplx z, const PcfOptions& options) {
    PcfPair out;
    if (std::abs(z) <= options.switch_radius) {
        out = pcf_d_series(nu, z);
    } else {
        out = {pcf_d_asymptotic(nu, z), pcf_d_asymptotic(nu, -z)};
    }
    check_accuracy(out.at_z, options);
    check_accuracy(out.at_minus_z, options);
    return out;
}

PcfEvalReport pcf_d(cplx nu, cplx z, const PcfOptions& options) {
    PcfEvalReport out = std::abs(z) <= options.switch_radius ? pcf_d_series(nu, z).at_z
                                                             : pcf_d_asymptotic(nu, z);
    check_accuracy(out, options);
    return out;
}

}  // namespace nasearch
