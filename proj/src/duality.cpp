#include "ihodual/duality.hpp"
#include "ihodual/errors.hpp"

#include <cmath>
#include <numbers>

namespace ihodual {

namespace {
constexpr double pi = std::numbers::pi;
}

CouplingParam::CouplingParam(double v) : g(v)
{
    if (!std::isfinite(v)) throw DomainError("CouplingParam: g must be finite");
}

CoefficientRatio CoefficientRatio::finite(cplx v)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("CoefficientRatio: non-finite value");
    CoefficientRatio r;
    r.value_ = v;
    return r;
}

CoefficientRatio CoefficientRatio::infinity()
{
    CoefficientRatio r;
    r.infinite_ = true;
    return r;
}

CoefficientRatio CoefficientRatio::from_pair(cplx num, cplx den)
{
    if (den == 0.0) {
        if (num == 0.0) throw DomainError("CoefficientRatio: 0/0 is not a ratio");
        return infinity();
    }
    return finite(num / den);
}

cplx CoefficientRatio::value() const
{
    if (infinite_) throw DomainError("CoefficientRatio: value requested at infinity");
    return value_;
}

CouplingParam coupling_from_energy(EnergyParam e) { return CouplingParam((e.e_hat * e.e_hat + 0.25) / 2.0); }

EnergyParam energy_from_coupling(CouplingParam g)
{
    if (g.g < 0.125) throw SubcriticalCoupling("energy_from_coupling: g below the critical value 1/8");
    return EnergyParam(std::sqrt(2.0 * g.g - 0.25));
}

namespace {

// log of e^{-pi E/4} e^{-+ i pi/8} Gamma(1/2 -+ iE); sign = -1 for C1, +1 for C2
cplx log_factor(double E, int sign)
{
    return cplx(-pi * E / 4.0, sign * pi / 8.0) + log_gamma(cplx(0.5, sign * E));
}

}  // namespace

IHOCoefficients iho_coeffs_from_isp(const ISPCoefficients& c, EnergyParam e)
{
    const double E = e.e_hat;
    const cplx c1 = c.alpha == 0.0 ? cplx(0.0) : c.alpha * std::exp(log_factor(E, -1));
    const cplx c2 = c.beta == 0.0 ? cplx(0.0) : c.beta * std::exp(log_factor(E, +1));
    return IHOCoefficients(c1, c2);
}

ISPCoefficients isp_coeffs_from_iho(const IHOCoefficients& c, EnergyParam e)
{
    const double E = e.e_hat;
    const cplx a = c.c1 == 0.0 ? cplx(0.0) : c.c1 * std::exp(-log_factor(E, -1));
    const cplx b = c.c2 == 0.0 ? cplx(0.0) : c.c2 * std::exp(-log_factor(E, +1));
    return ISPCoefficients(a, b);
}

cplx ratio_multiplier(EnergyParam e)
{
    // Gamma(1/2 - iE) = conj Gamma(1/2 + iE), so the ratio is e^{-2i theta}
    const double theta = log_gamma(cplx(0.5, e.e_hat)).imag();
    return std::polar(1.0, -2.0 * theta - pi / 4.0);
}

CoefficientRatio ratio_map(const CoefficientRatio& r, EnergyParam e, Direction dir)
{
    if (r.is_infinite()) return r;
    const cplx m = ratio_multiplier(e);
    return CoefficientRatio::finite(dir == Direction::IspToIho ? r.value() * m : r.value() / m);
}

}  // namespace ihodual
