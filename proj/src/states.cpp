#include "ihodual/states.hpp"
#include "ihodual/errors.hpp"

#include <cmath>
#include <numbers>

namespace ihodual {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

const cplx rot1 = std::sqrt(2.0) * std::polar(1.0, -3.0 * pi / 4.0);  // phi1 argument
const cplx rot2 = std::sqrt(2.0) * std::polar(1.0, -pi / 4.0);        // phi2 argument

}  // namespace

EnergyParam::EnergyParam(double e) : e_hat(e) { require_finite(e, "EnergyParam"); }

PhysicalScales::PhysicalScales(double m, double w, double h) : mass(m), omega(w), hbar(h)
{
    if (!(m > 0) || !(w > 0) || !(h > 0) || !std::isfinite(m) || !std::isfinite(w) || !std::isfinite(h))
        throw DomainError("PhysicalScales: mass, omega and hbar must be positive");
}

double PhysicalScales::inverse_length() const { return std::sqrt(mass * omega / hbar); }

IHOCoefficients::IHOCoefficients(cplx a, cplx b) : c1(a), c2(b)
{
    if (a == 0.0 && b == 0.0) throw DomainError("IHOCoefficients: both coefficients zero");
}

BKBranchCoefficients::BKBranchCoefficients(cplx a, cplx b) : a_plus(a), b_minus(b)
{
    if (a == 0.0 && b == 0.0) throw DomainError("BKBranchCoefficients: both coefficients zero");
}

ISPCoefficients::ISPCoefficients(cplx a, cplx b) : alpha(a), beta(b)
{
    if (a == 0.0 && b == 0.0) throw DomainError("ISPCoefficients: both coefficients zero");
}

cplx iho_eigenstate(const IHOCoefficients& c, EnergyParam e, double xi)
{
    require_finite(xi, "xi");
    const double E = e.e_hat;
    cplx v = 0.0;
    if (c.c1 != 0.0) v += c.c1 * pcf_d(cplx(-0.5, E), rot1 * xi);
    if (c.c2 != 0.0) v += c.c2 * pcf_d(cplx(-0.5, -E), rot2 * xi);
    return v;
}

IHOBasis iho_basis(EnergyParam e, double xi)
{
    require_finite(xi, "xi");
    const double E = e.e_hat;
    const cplx s1(-0.5, E), s2(-0.5, -E);
    const cplx z1 = rot1 * xi, z2 = rot2 * xi;
    IHOBasis b;
    b.phi1 = pcf_d(s1, z1);
    b.phi2 = pcf_d(s2, z2);
    b.dphi1 = rot1 * (0.5 * z1 * b.phi1 - pcf_d(s1 + 1.0, z1));
    b.dphi2 = rot2 * (0.5 * z2 * b.phi2 - pcf_d(s2 + 1.0, z2));
    return b;
}

cplx iho_wronskian(EnergyParam e, double xi)
{
    const IHOBasis b = iho_basis(e, xi);
    return b.phi1 * b.dphi2 - b.dphi1 * b.phi2;
}

cplx iho_wronskian_exact(EnergyParam e)
{
    // D_nu(0) = 2^{nu/2} sqrt(pi) / Gamma((1-nu)/2),
    // D_nu'(0) = -2^{(nu+1)/2} sqrt(pi) / Gamma(-nu/2)
    const double E = e.e_hat;
    const cplx s1(-0.5, E), s2(-0.5, -E);
    auto d0 = [](cplx nu) { return std::pow(2.0, nu / 2.0) * std::sqrt(pi) * rgamma((1.0 - nu) / 2.0); };
    auto dp0 = [](cplx nu) { return -std::pow(2.0, (nu + 1.0) / 2.0) * std::sqrt(pi) * rgamma(-nu / 2.0); };
    return d0(s1) * rot2 * dp0(s2) - rot1 * dp0(s1) * d0(s2);
}

cplx iho_parity_state(Parity sign, EnergyParam e, double xi)
{
    require_finite(xi, "xi");
    const double sg = sign == Parity::Plus ? 1.0 : -1.0;
    return pcf_d(cplx(-0.5, e.e_hat), sg * rot1 * xi);
}

cplx iho_asymptotic_state(const IHOCoefficients& c, EnergyParam e, double xi)
{
    if (!(xi > 0) || !std::isfinite(xi)) throw DomainError("iho_asymptotic_state: requires xi > 0");
    const double E = e.e_hat;
    const double theta = std::arg(std::exp(cplx(0.0, log_gamma(cplx(0.5, E)).imag())));
    const double omega = 0.5 * xi * xi - E * std::log(std::sqrt(2.0) * xi) + 0.5 * theta + pi / 4.0;
    const double amp = 1.0 / std::sqrt(xi);
    return amp * (c.c1 * std::polar(1.0, omega) + c.c2 * std::polar(1.0, -omega));
}

cplx bk_eigenstate(const BKBranchCoefficients& c, EnergyParam e, double q)
{
    require_finite(q, "Q");
    if (q == 0.0) throw SingularPointError("bk_eigenstate: Q = 0");
    const double aq = std::abs(q);
    const cplx coef = q > 0 ? c.a_plus : c.b_minus;
    if (coef == 0.0) return 0.0;
    return coef * std::pow(aq, -0.5) * std::polar(1.0, -e.e_hat * std::log(aq));
}

double bk_phase(const BKBranchCoefficients& c, EnergyParam e, double q)
{
    require_finite(q, "Q");
    if (q == 0.0) throw SingularPointError("bk_phase: Q = 0");
    const cplx coef = q > 0 ? c.a_plus : c.b_minus;
    if (coef == 0.0) throw DomainError("bk_phase: state vanishes on this branch");
    return std::arg(coef) - e.e_hat * std::log(std::abs(q));
}

cplx isp_zero_energy_state(const ISPCoefficients& c, EnergyParam e, double q)
{
    if (!(q > 0) || !std::isfinite(q)) throw DomainError("isp_zero_energy_state: requires Q > 0");
    const double lq = std::log(q);
    const double E = e.e_hat;
    return std::sqrt(q) * (c.alpha * std::polar(1.0, -E * lq) + c.beta * std::polar(1.0, E * lq));
}

cplx isp_zeta(double g)
{
    require_finite(g, "g");
    if (g <= 0.125) return std::sqrt(1.0 - 8.0 * g);
    return cplx(0.0, 2.0 * std::sqrt(2.0 * g - 0.25));
}

cplx isp_general_state(double g, double kappa, Branch branch, double q)
{
    if (!(q > 0) || !std::isfinite(q)) throw DomainError("isp_general_state: requires Q > 0");
    if (!(kappa >= 0) || !std::isfinite(kappa)) throw DomainError("isp_general_state: requires kappa >= 0");
    const cplx zeta = isp_zeta(g);
    const cplx b = branch == Branch::Plus ? 1.0 + zeta : 1.0 - zeta;
    if (b.imag() == 0.0 && b.real() <= 0.0 && std::floor(b.real()) == b.real())
        throw PoleError("isp_general_state: 1 +- zeta is a nonpositive integer");
    const cplx a = b / 2.0;
    const double x = 2.0 * kappa * q;
    if (x == 0.0) {
        if (a.real() > 0) return 0.0;
        throw DomainError("isp_general_state: state diverges at kappa = 0");
    }
    return std::exp(a * std::log(x) - kappa * q) * kummer_m(a, b, x);
}

cplx bk_from_isp(cplx chi_value, double q)
{
    require_finite(q, "Q");
    if (q == 0.0) throw SingularPointError("bk_from_isp: Q = 0");
    return chi_value / q;
}

ClassicalState classical_orbit(ClassicalSystem system, const ClassicalState& init, double t)
{
    require_finite(t, "t");
    if (system == ClassicalSystem::IHO) {
        const double xi0 = init.position, t0 = init.momentum;
        if (xi0 == 0.0) throw DomainError("classical_orbit: IHO orbit needs xi0 != 0");
        return {xi0 * std::cosh(t - t0), xi0 * std::sinh(t - t0)};
    }
    return {init.position * std::exp(t), init.momentum * std::exp(-t)};
}

double xi_of_q(double xi0, double q)
{
    if (q == 0.0) throw SingularPointError("xi_of_q: Q = 0");
    return 0.5 * xi0 * (q + 1.0 / q);
}

namespace {

double wavenumber_at(const EnergyStateFn& state, double xi, double e)
{
    const double h = 1e-3 / (1.0 + std::abs(xi) / 10.0);
    cplx v[5];
    double mag = 0.0;
    for (int j = 0; j < 5; ++j) {
        v[j] = state(e, xi + (j - 2) * h);
        mag = std::max(mag, std::abs(v[j]));
    }
    if (!(mag > 0)) throw PhaseUnwrapError("local_wavenumber: state vanishes near xi");
    for (int j = 0; j < 5; ++j)
        if (std::abs(v[j]) < 1e-8 * mag) throw PhaseUnwrapError("local_wavenumber: amplitude zero near xi");
    // continuation from the centre by phase increments of successive samples
    double ph[5];
    ph[2] = 0.0;
    for (int j = 3; j < 5; ++j) {
        const double d = std::arg(v[j] / v[j - 1]);
        if (std::abs(d) > pi / 2) throw PhaseUnwrapError("local_wavenumber: phase step too large");
        ph[j] = ph[j - 1] + d;
    }
    for (int j = 1; j >= 0; --j) {
        const double d = std::arg(v[j] / v[j + 1]);
        if (std::abs(d) > pi / 2) throw PhaseUnwrapError("local_wavenumber: phase step too large");
        ph[j] = ph[j + 1] + d;
    }
    return (-ph[4] + 8.0 * ph[3] - 8.0 * ph[1] + ph[0]) / (12.0 * h);
}

}  // namespace

Wavenumber local_wavenumber(const EnergyStateFn& state, double xi, EnergyParam e)
{
    require_finite(xi, "xi");
    Wavenumber w;
    const double E = e.e_hat;
    w.k = wavenumber_at(state, xi, E);
    const double de = 1e-4 * std::max(1.0, std::abs(E));
    const double dk = (wavenumber_at(state, xi, E + de) - wavenumber_at(state, xi, E - de)) / (2.0 * de);
    if (std::abs(dk) > 1e-6) w.vg_sign = dk > 0 ? 1 : -1;
    return w;
}

}  // namespace ihodual
