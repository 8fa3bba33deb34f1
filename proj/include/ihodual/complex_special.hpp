#pragma once

#include <complex>

namespace ihodual {

using cplx = std::complex<double>;

// ln Gamma(z), continued analytically from the positive real axis with the
// cut along the negative real axis (the convention of mpmath/scipy loggamma).
// Throws PoleError at nonpositive integers.
cplx log_gamma(cplx z);

// Gamma(z); throws PoleError at nonpositive integers.
cplx gamma(cplx z);

// 1/Gamma(z), entire; exactly zero at nonpositive integers.
cplx rgamma(cplx z);

// Kummer's confluent hypergeometric function M(a, b; z).
// Throws PoleError when b is a nonpositive integer, AccuracyLoss when the
// internal error estimate exceeds 1e-10 relative.
cplx kummer_m(cplx a, cplx b, cplx z);

enum class PcfRoute { Series, Asymptotic, OdeForward, OdeBackward };

const char* to_string(PcfRoute r);

struct PcfEvaluation {
    cplx value;
    double rel_error = 0.0;  // internal a-posteriori estimate
    PcfRoute route = PcfRoute::Series;
};

// Relative accuracy demanded of pcf_d before it reports AccuracyLoss.
inline constexpr double pcf_tolerance = 1e-8;

// Parabolic cylinder function D_s(z) with the route that was used.
PcfEvaluation pcf_d_eval(cplx s, cplx z);

// D_s(z); throws AccuracyLoss when no route reaches pcf_tolerance or two
// routes that both claim accuracy disagree.
cplx pcf_d(cplx s, cplx z);

// dD_s/dz = (z/2) D_s(z) - D_{s+1}(z).
cplx pcf_d_prime(cplx s, cplx z);

// D_s(b / sqrt(2a)) from the integral representation
//   (2a)^(-s/2) / Gamma(-s) * Int_0^inf Q^(-s-1) exp(-a Q^2 - b Q - b^2/(8a)) dQ
// by quadrature on the rotated contour. Orders with Re(-s) <= 0 are reached
// through the three-term recurrence from two convergent orders.
// Throws ContourError when Re a < 0 or a = 0, QuadratureError on
// nonconvergence.
cplx pcf_d_via_integral(cplx s, cplx a, cplx b);

}  // namespace ihodual
