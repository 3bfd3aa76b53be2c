#pragma once

// Parabolic cylinder function D_nu(z) for complex order and argument, with
// the complex gamma function and Kummer's confluent hypergeometric series it
// is built from.
//
// D_nu solves Weber's equation W'' + (nu + 1/2 - z^2/4) W = 0 and decays as
// z^nu exp(-z^2/4) along the positive real axis.
//
// Evaluation scheme:
//   |z| <= switch_radius  Kummer-series representation
//       D_nu(z) = 2^{nu/2} e^{-z^2/4} [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
//                 - sqrt(2 pi) z / Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]
//       summed in double precision first; when the running rounding bound
//       shows cancellation the sum is redone in 113-bit precision.
//   |z| >  switch_radius  Poincare expansion for the sector of arg z,
//       truncated at the smallest term, plus the exp(+z^2/4) connection term
//       when |arg z| > pi/2.

#include "nasearch/model.hpp"

namespace nasearch {

// Throws PoleError at non-positive integers.
cplx complex_gamma(cplx z);

// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
cplx reciprocal_gamma(cplx z);

struct KummerResult {
    cplx value;
    double tail_bound;  // bound on |sum of the omitted terms|
    int terms;
};

// Power series M(a, b, z) = sum (a)_k / (b)_k z^k / k!, summed until the
// relative tail is below 1e-14. Throws AccuracyError after 500 terms.
KummerResult kummer_m(cplx a, cplx b, cplx z);

enum class PcfBranch { power_series, asymptotic };

struct PcfEvalReport {
    cplx value;
    PcfBranch branch;
    double estimated_error;        // relative
    bool extended_precision = false;
};

struct PcfOptions {
    double switch_radius = 8.0;
    double max_rel_error = 1e-8;   // AccuracyError above this
};

PcfEvalReport pcf_d(cplx nu, cplx z, const PcfOptions& options = {});

// D_nu(z) and D_nu(-z). On the series branch both come from one pair of
// Kummer sums (the even and odd parts only change relative sign).
struct PcfPair {
    PcfEvalReport at_z;
    PcfEvalReport at_minus_z;
};

PcfPair pcf_d_pair(cplx nu, cplx z, const PcfOptions& options = {});

// Forced branches without the accuracy check; used for cross-validation.
PcfPair pcf_d_series(cplx nu, cplx z);
PcfEvalReport pcf_d_asymptotic(cplx nu, cplx z);

}  // namespace nasearch
