#include "doctest.h"
#include "oracle_values.hpp"

#include "ihodual/errors.hpp"
#include "ihodual/states.hpp"
#include "ihodual/transforms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace ihodual;

namespace {
constexpr double pi = std::numbers::pi;
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<cplx> gaussian(const UniformGrid& g)
{
    std::vector<cplx> v(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.at(i) - 0.3;
        v[i] = std::exp(-0.5 * x * x) * std::polar(1.0, 0.4 * x);
    }
    return v;
}
}  // namespace

TEST_CASE("parameter types reject bad input")
{
    CHECK_THROWS_AS(EnergyParam(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(EnergyParam(std::nan("")), DomainError);
    CHECK_THROWS_AS(IHOCoefficients(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(ISPCoefficients(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(BKBranchCoefficients(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(PhysicalScales(-1.0, 1.0, 1.0), DomainError);
    CHECK(PhysicalScales(2.0, 8.0, 1.0).inverse_length() == doctest::Approx(4.0));
    CHECK(PhysicalScales(2.0, 8.0, 1.0).xi(0.5) == doctest::Approx(2.0));
}

TEST_CASE("IHO basis functions and derivatives match mpmath")
{
    for (const auto& o : oracle::basis) {
        const EnergyParam e(o.e);
        CAPTURE(o.e);
        CAPTURE(o.xi);
        const IHOBasis b = iho_basis(e, o.xi);
        CHECK(rel(b.phi1, {o.phi1r, o.phi1i}) <= 1e-10);
        CHECK(rel(b.phi2, {o.phi2r, o.phi2i}) <= 1e-10);
        CHECK(rel(b.dphi1, {o.dphi1r, o.dphi1i}) <= 1e-9);
        CHECK(rel(b.dphi2, {o.dphi2r, o.dphi2i}) <= 1e-9);
        CHECK(rel(iho_eigenstate(IHOCoefficients(2.0, cplx(0.0, -1.0)), e, o.xi),
                  2.0 * cplx(o.phi1r, o.phi1i) - cplx(0.0, 1.0) * cplx(o.phi2r, o.phi2i)) <= 1e-10);
    }
}

TEST_CASE("Wronskian is -sqrt2 e^{pi E/2}, independent of xi")
{
    for (const auto& o : oracle::wronskian) {
        const EnergyParam e(o.e);
        const cplx want(o.re, o.im);
        CHECK(rel(iho_wronskian_exact(e), want) <= 1e-9);
        CHECK(rel(iho_wronskian_exact(e), -std::sqrt(2.0) * std::exp(pi * o.e / 2)) <= 1e-13);
        for (double xi : {-3.0, -0.2, 0.7, 2.9}) CHECK(rel(iho_wronskian(e, xi), want) <= 1e-9);
    }
}

TEST_CASE("basis functions solve the IHO equation at the same energy")
{
    for (double E : {0.5, 2.0, 8.7}) {
        const EnergyParam e(E);
        for (double xi : {-4.0, -1.3, 0.0, 0.6, 3.3}) {
            CHECK(schrodinger_residual(ResidualSystem::IHO, [&](double x) { return iho_basis(e, x).phi1; }, e, xi) < 1e-7);
            CHECK(schrodinger_residual(ResidualSystem::IHO, [&](double x) { return iho_basis(e, x).phi2; }, e, xi) < 1e-7);
        }
        // at a different energy the residual is O(1)
        const EnergyParam other(E + 0.5);
        CHECK(schrodinger_residual(ResidualSystem::IHO, [&](double x) { return iho_basis(other, x).phi1; }, e, 0.6) >
              1e-2);
    }
}

TEST_CASE("parity conjugates")
{
    const EnergyParam e(2.0);
    for (double xi : {0.3, 1.7, 3.1}) {
        CHECK(rel(iho_parity_state(Parity::Plus, e, xi), iho_parity_state(Parity::Minus, e, -xi)) < 1e-14);
        CHECK(rel(iho_parity_state(Parity::Plus, e, xi), iho_basis(e, xi).phi1) < 1e-12);
        CHECK(schrodinger_residual(ResidualSystem::IHO, [&](double x) { return iho_parity_state(Parity::Minus, e, x); },
                                   e, xi) < 1e-7);
    }
}

TEST_CASE("asymptotic state is the literal large-xi form")
{
    const EnergyParam e(2.0);
    const double xi = 9.0;
    const double theta = std::arg(std::exp(cplx(0.0, log_gamma(cplx(0.5, 2.0)).imag())));
    const double omega = 0.5 * xi * xi - 2.0 * std::log(std::sqrt(2.0) * xi) + 0.5 * theta + pi / 4;
    CHECK(rel(iho_asymptotic_state(IHOCoefficients(1.0, 0.0), e, xi), std::polar(1.0, omega) / 3.0) < 1e-13);
    CHECK(rel(iho_asymptotic_state(IHOCoefficients(0.0, 1.0), e, xi), std::polar(1.0, -omega) / 3.0) < 1e-13);
    CHECK_THROWS_AS(iho_asymptotic_state(IHOCoefficients(1.0, 0.0), e, -1.0), DomainError);
    // both branches have modulus 1/sqrt(xi), like the exact basis at large xi
    CHECK(std::abs(iho_basis(e, 12.0).phi2) * std::sqrt(12.0) ==
          doctest::Approx(std::abs(iho_basis(e, 14.0).phi2) * std::sqrt(14.0)).epsilon(1e-2));
}

TEST_CASE("one-way waves: single-branch asymptotic states propagate in opposite directions")
{
    auto make = [](cplx c1, cplx c2) {
        return [c1, c2](double E, double xi) { return iho_asymptotic_state(IHOCoefficients(c1, c2), EnergyParam(E), xi); };
    };
    const EnergyParam e(2.0);
    const Wavenumber w1 = local_wavenumber(make(1.0, 0.0), 9.0, e);
    const Wavenumber w2 = local_wavenumber(make(0.0, 1.0), 9.0, e);
    CHECK(w1.vg_sign != 0);
    CHECK(w2.vg_sign != 0);
    CHECK(w1.vg_sign == -w2.vg_sign);
    // K = dOmega/dxi = xi - E/xi for the C1 branch
    CHECK(w1.k == doctest::Approx(9.0 - 2.0 / 9.0).epsilon(1e-6));
    CHECK(w2.k == doctest::Approx(-(9.0 - 2.0 / 9.0)).epsilon(1e-6));
}

TEST_CASE("local_wavenumber on a plane wave")
{
    const EnergyStateFn f = [](double E, double xi) { return std::polar(1.0, (E + 1.0) * xi); };
    const Wavenumber w = local_wavenumber(f, 0.4, EnergyParam(3.0));
    CHECK(w.k == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(w.vg_sign == 1);
    const EnergyStateFn flat = [](double, double xi) { return std::polar(1.0, 2.0 * xi); };
    CHECK(local_wavenumber(flat, 0.4, EnergyParam(3.0)).vg_sign == 0);
    const EnergyStateFn zero = [](double, double) { return cplx(0.0); };
    CHECK_THROWS_AS(local_wavenumber(zero, 0.4, EnergyParam(3.0)), PhaseUnwrapError);
}

TEST_CASE("BK eigenstates")
{
    const EnergyParam e(10.0);
    const BKBranchCoefficients c(1.0, cplx(0.0, 2.0));
    for (double q : {0.05, 0.7, 4.0}) {
        const cplx v = bk_eigenstate(c, e, q);
        CHECK(std::abs(v) == doctest::Approx(std::pow(q, -0.5)).epsilon(1e-14));
        CHECK(bk_phase(c, e, q) == doctest::Approx(-10.0 * std::log(q)).epsilon(1e-14));
        CHECK(rel(bk_eigenstate(c, e, -q), cplx(0.0, 2.0) * std::pow(q, -0.5) * std::polar(1.0, -10.0 * std::log(q))) <
              1e-14);
        CHECK(schrodinger_residual(ResidualSystem::BKFirstOrder, [&](double x) { return bk_eigenstate(c, e, x); }, e, q,
                                   q / 100) < 1e-8);
    }
    CHECK_THROWS_AS(bk_eigenstate(c, e, 0.0), SingularPointError);
    CHECK_THROWS_AS(bk_phase(BKBranchCoefficients(1.0, 0.0), e, -1.0), DomainError);
    CHECK(bk_eigenstate(BKBranchCoefficients(1.0, 0.0), e, -1.0) == cplx(0.0));
}

TEST_CASE("ISP zero-energy states and the squared BK equation")
{
    for (double E : {0.5, 2.0, 10.0}) {
        const EnergyParam e(E);
        for (auto c : {ISPCoefficients(1.0, 0.0), ISPCoefficients(0.0, 1.0), ISPCoefficients(0.3, cplx(1.0, -2.0))}) {
            const StateFn chi = [c, e](double q) { return isp_zero_energy_state(c, e, q); };
            const StateFn phi = [c, e](double q) { return bk_from_isp(isp_zero_energy_state(c, e, q), q); };
            for (double q : {0.2, 1.0, 3.5}) {
                CHECK(schrodinger_residual(ResidualSystem::ISPZeroEnergy, chi, e, q, q / 100) < 1e-6);
                CHECK(schrodinger_residual(ResidualSystem::BKSquared, phi, e, q, q / 100) < 1e-6);
            }
        }
        // the alpha branch is the BK eigenstate itself
        CHECK(rel(bk_from_isp(isp_zero_energy_state(ISPCoefficients(1.0, 0.0), e, 1.7), 1.7),
                  bk_eigenstate(BKBranchCoefficients(1.0, 1.0), e, 1.7)) < 1e-14);
    }
    CHECK_THROWS_AS(isp_zero_energy_state(ISPCoefficients(1.0, 0.0), EnergyParam(1.0), 0.0), DomainError);
    CHECK_THROWS_AS(bk_from_isp(1.0, 0.0), SingularPointError);
}

TEST_CASE("ISP zeta and general states")
{
    CHECK(std::abs(isp_zeta(0.1) - std::sqrt(0.2)) < 1e-15);
    CHECK(isp_zeta(0.1).imag() == 0.0);
    CHECK(isp_zeta(0.125) == cplx(0.0, 0.0));
    CHECK(rel(isp_zeta(0.5), cplx(0.0, 2.0 * std::sqrt(0.75))) < 1e-15);
    for (const auto& o : oracle::isp_general) {
        CAPTURE(o.g);
        CAPTURE(o.q);
        const cplx v = isp_general_state(o.g, o.kappa, o.plus ? Branch::Plus : Branch::Minus, o.q);
        CHECK(rel(v, {o.re, o.im}) <= 1e-11);
    }
    CHECK_THROWS_AS(isp_general_state(0.5, 1.0, Branch::Plus, -1.0), DomainError);
}

TEST_CASE("classical orbits and the xi-Q relation")
{
    const double xi0 = 2.0;
    for (double t : {-1.5, 0.0, 0.8}) {
        const ClassicalState s = classical_orbit(ClassicalSystem::IHO, {xi0, 0.0}, t);
        CHECK((s.momentum * s.momentum - s.position * s.position) / 2 == doctest::Approx(-xi0 * xi0 / 2));
        const ClassicalState b = classical_orbit(ClassicalSystem::BK, {1.0, 0.5}, t);
        CHECK(b.position * b.momentum == doctest::Approx(0.5));
        // with Q0 = 1 the BK position gives back xi(t) through xi = (xi0/2)(Q + 1/Q)
        CHECK(xi_of_q(xi0, b.position) == doctest::Approx(s.position).epsilon(1e-14));
    }
    CHECK(xi_of_q(2.0, 1.0) == 2.0);
    CHECK(xi_of_q(2.0, 0.999) > 2.0);
    CHECK(xi_of_q(2.0, -1.0) == -2.0);
    CHECK_THROWS_AS(xi_of_q(2.0, 0.0), SingularPointError);
    CHECK_THROWS_AS(classical_orbit(ClassicalSystem::IHO, {0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("su(1,1) commutators on a Gaussian")
{
    const UniformGrid grid{-8.0, 8.0, 1601};
    const auto test = gaussian(grid);
    for (auto p : {GeneratorPair::K1K2, GeneratorPair::K2K3, GeneratorPair::K3K1}) {
        CHECK(su11_commutator_residual(p, test, grid, Su11Constants::Realized) < 1e-6);
        // the stated constants are off by a factor of two, and by a sign for [K2, K3]
        CHECK(su11_commutator_residual(p, test, grid, Su11Constants::Stated) > 1e-2);
    }
    CHECK(su11_structure_constant(GeneratorPair::K1K2, Su11Constants::Stated) == cplx(0.0, -1.0));
    CHECK(su11_structure_constant(GeneratorPair::K2K3, Su11Constants::Realized) == cplx(0.0, -2.0));
    for (int k : {1, 2, 3}) CHECK(su11_casimir_residual(k, test, grid, Su11Constants::Realized) < 1e-6);
    // the stated Casimir commutes with K1 only
    CHECK(su11_casimir_residual(1, test, grid, Su11Constants::Stated) < 1e-6);
    CHECK(su11_casimir_residual(2, test, grid, Su11Constants::Stated) > 1e-2);
    CHECK(su11_casimir_residual(3, test, grid, Su11Constants::Stated) > 1e-2);
}

TEST_CASE("su(1,1) refuses a grid that cannot resolve the test function")
{
    const UniformGrid coarse{-8.0, 8.0, 61};
    CHECK_THROWS_AS(su11_commutator_residual(GeneratorPair::K1K2, gaussian(coarse), coarse), GridTooCoarse);
}
