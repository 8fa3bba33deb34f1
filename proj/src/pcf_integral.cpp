#include "ihodual/complex_special.hpp"
#include "ihodual/errors.hpp"
#include "quadrature.hpp"
#include "special_internal.hpp"

#include <cmath>

namespace ihodual {
namespace detail {
namespace {

// Re(-s) > 0 required. Q = e^(-i theta) u with theta = arg(a)/2 turns
// a Q^2 into |a| u^2; the power Q^(-s-1) keeps the phase of the ray,
// e^(-i theta (-s-1)), carried explicitly rather than through a branch cut.
qcomplex integral_rep(const qcomplex& s, const qcomplex& a, const qcomplex& b)
{
    const qreal theta = arg(a) / 2;
    const qcomplex rot = polar(1, -theta);
    const qcomplex p = -s - qreal(1);
    const QuadResult r = integrate_power_gauss(p, abs(a), -(b * rot));
    const qcomplex ray_phase = exp(qcomplex(0, -theta) * (p + qreal(1)));
    const qcomplex pre = exp(-s / qreal(2) * log(qreal(2) * a) - b * b / (qreal(8) * a)) * rgamma_q(-s);
    const qcomplex value = pre * ray_phase * r.value;
    const qreal err = abs(pre) * r.abs_error;
    if (!(err <= qreal(1e-12) * abs(value)) && !(abs(value) == 0 && err < qreal(1e-300)))
        throw QuadratureError("pcf_d_via_integral: quadrature error estimate above 1e-12");
    return value;
}

}  // namespace
}  // namespace detail

cplx pcf_d_via_integral(cplx s, cplx a, cplx b)
{
    using namespace detail;
    if (a == 0.0 || a.real() < 0) throw ContourError("pcf_d_via_integral: no decaying contour for Re a < 0");
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()))
        throw DomainError("pcf_d_via_integral: non-finite argument");

    const qcomplex qs(s), qa(a), qb(b);
    if (-s.real() > 0) return integral_rep(qs, qa, qb).to_double();

    // D_nu = z D_{nu-1} - (nu-1) D_{nu-2}, upward from two convergent orders
    const qcomplex z = qb / sqrt(qreal(2) * qa);
    const int m = int(std::floor(s.real())) + 1;
    qcomplex nu = qs - qreal(m);  // Re(-nu) > 0
    qcomplex d_lo = integral_rep(nu - qreal(1), qa, qb);
    qcomplex d_hi = integral_rep(nu, qa, qb);
    for (int k = 0; k < m; ++k) {
        nu += qreal(1);
        const qcomplex next = z * d_hi - (nu - qreal(1)) * d_lo;
        d_lo = d_hi;
        d_hi = next;
    }
    return d_hi.to_double();
}

}  // namespace ihodual
