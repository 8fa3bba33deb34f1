#include "ihodual/transforms.hpp"
#include "ihodual/errors.hpp"
#include "quadrature.hpp"
#include "special_internal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ihodual {

namespace {
constexpr double pi = std::numbers::pi;
}

double kernel_phase(const KernelSpec& spec, double q)
{
    const double x = spec.xi;
    const double cross = std::sqrt(2.0) * x * q;
    if (spec.kind == KernelKind::F1) return -0.5 * x * x + cross - 0.5 * q * q;
    return 0.5 * x * x + cross + 0.5 * q * q;
}

namespace {

// Int_0^inf Q^p e^{i phase(Q)} dQ after Q = e^{sigma i pi/4} u, where the
// quadratic phase becomes e^{-u^2/2} and the linear one c u. The rotation
// phase of Q^p and of dQ, e^{sigma i pi/4 (p+1)}, is applied analytically.
cplx rotated_transform(double e_hat, double xi, int sigma)
{
    using namespace detail;
    if (!std::isfinite(e_hat) || !std::isfinite(xi)) throw DomainError("qct: non-finite argument");
    const qreal x = xi;
    const qcomplex p(qreal(-0.5), qreal(sigma * e_hat));
    const qcomplex c = sigma < 0 ? qcomplex(x, x) : qcomplex(-x, x);
    const QuadResult r = integrate_power_gauss(p, qreal(0.5), c);
    const qcomplex pre = exp(qcomplex(0, qreal(sigma) * x * x / 2) +
                             qcomplex(0, qreal(sigma) * q_pi / 4) * (p + qreal(1)));
    const qcomplex v = pre * r.value;
    if (!(r.abs_error <= qreal(1e-12) * abs(r.value)))
        throw QuadratureError("qct: quadrature error estimate above 1e-12 relative");
    return v.to_double();
}

}  // namespace

cplx qct_first(EnergyParam e, double xi) { return rotated_transform(e.e_hat, xi, -1); }

cplx qct_second(EnergyParam e, double xi) { return rotated_transform(e.e_hat, xi, +1); }

cplx closed_form_first(EnergyParam e, double xi)
{
    const double E = e.e_hat;
    const cplx pre = std::exp(cplx(-pi * E / 4.0, -pi / 8.0) + log_gamma(cplx(0.5, -E)));
    return pre * pcf_d(cplx(-0.5, E), std::sqrt(2.0) * std::polar(1.0, -3.0 * pi / 4.0) * xi);
}

cplx closed_form_second(EnergyParam e, double xi)
{
    const double E = e.e_hat;
    const cplx pre = std::exp(cplx(-pi * E / 4.0, pi / 8.0) + log_gamma(cplx(0.5, E)));
    return pre * pcf_d(cplx(-0.5, -E), std::sqrt(2.0) * std::polar(1.0, -pi / 4.0) * xi);
}

namespace {

struct Derivs {
    cplx f, d1, d2;
    double mag;
};

Derivs stencil(const StateFn& state, double x, double h)
{
    cplx v[5];
    double mag = 0.0;
    for (int j = 0; j < 5; ++j) {
        v[j] = state(x + (j - 2) * h);
        mag = std::max(mag, std::abs(v[j]));
    }
    Derivs d;
    d.f = v[2];
    d.d1 = (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h);
    d.d2 = (-v[4] + 16.0 * v[3] - 30.0 * v[2] + 16.0 * v[1] - v[0]) / (12.0 * h * h);
    d.mag = mag;
    return d;
}

}  // namespace

double schrodinger_residual(ResidualSystem system, const StateFn& state, EnergyParam e, double point,
                            double h)
{
    if (!std::isfinite(point)) throw DomainError("schrodinger_residual: non-finite point");
    if (!(h > 0)) throw StepSizeError("schrodinger_residual: step must be positive");
    const bool q_system = system != ResidualSystem::IHO;
    if (q_system && !(point > 0)) throw DomainError("schrodinger_residual: requires Q > 0");
    if (q_system && point - 2.0 * h <= 0) throw StepSizeError("schrodinger_residual: stencil leaves Q > 0");

    const Derivs a = stencil(state, point, h);
    const Derivs b = stencil(state, point, h / 2);
    const cplx d1 = (16.0 * b.d1 - a.d1) / 15.0;
    const cplx d2 = (16.0 * b.d2 - a.d2) / 15.0;
    const cplx f = a.f;
    const double mag = std::max(a.mag, b.mag);
    if (mag == 0.0) return 0.0;

    const double E = e.e_hat;
    const double x = point;
    cplx r;
    switch (system) {
    case ResidualSystem::IHO: r = -0.5 * d2 - 0.5 * x * x * f + E * f; break;
    case ResidualSystem::BKFirstOrder: r = x * d1 + cplx(0.5, E) * f; break;
    case ResidualSystem::BKSquared: r = x * x * d2 + 2.0 * x * d1 + (E * E + 0.25) * f; break;
    case ResidualSystem::ISPZeroEnergy: r = -d2 - (E * E + 0.25) / (x * x) * f; break;
    }
    return std::abs(r) / mag;
}

}  // namespace ihodual
