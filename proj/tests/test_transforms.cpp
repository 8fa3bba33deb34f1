#include "doctest.h"
#include "oracle_values.hpp"

#include "ihodual/errors.hpp"
#include "ihodual/transforms.hpp"

#include <cmath>
#include <numbers>

using namespace ihodual;

namespace {
constexpr double pi = std::numbers::pi;
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("kernel phases")
{
    CHECK(kernel_phase({KernelKind::F1, 0.0}, 1.0) == doctest::Approx(-0.5));
    CHECK(kernel_phase({KernelKind::G, 0.0}, 1.0) == doctest::Approx(0.5));
    CHECK(kernel_phase({KernelKind::F1, std::sqrt(2.0)}, 1.0) == doctest::Approx(0.5));
    // G(xi, Q) = -F1(-xi, Q)
    for (double xi : {-1.3, 0.4, 2.2})
        for (double q : {0.1, 1.7})
            CHECK(kernel_phase({KernelKind::G, xi}, q) == doctest::Approx(-kernel_phase({KernelKind::F1, -xi}, q)));
}

TEST_CASE("quadrature and closed forms match mpmath on the rotated ray")
{
    for (const auto& o : oracle::transform) {
        const EnergyParam e(o.e);
        CAPTURE(o.e);
        CAPTURE(o.xi);
        const cplx first(o.firstr, o.firsti), second(o.secondr, o.secondi);
        CHECK(rel(qct_first(e, o.xi), first) <= 1e-9);
        CHECK(rel(qct_second(e, o.xi), second) <= 1e-9);
        CHECK(rel(closed_form_first(e, o.xi), first) <= 1e-9);
        CHECK(rel(closed_form_second(e, o.xi), second) <= 1e-9);
    }
}

TEST_CASE("closed forms at the origin")
{
    const double d0 = std::pow(2.0, -0.25) * std::sqrt(pi) / std::tgamma(0.75);
    const cplx want = std::polar(1.0, -pi / 8) * std::sqrt(pi) * d0;
    CHECK(rel(closed_form_first(EnergyParam(0.0), 0.0), want) < 1e-13);
    CHECK(rel(closed_form_second(EnergyParam(0.0), 0.0), std::conj(want)) < 1e-13);
    CHECK(rel(qct_first(EnergyParam(0.0), 0.0), want) < 1e-9);
    CHECK(rel(qct_second(EnergyParam(0.0), 0.0), std::conj(want)) < 1e-9);
    const EnergyParam one(1.0);
    CHECK(rel(closed_form_first(one, 0.0),
              std::exp(-pi / 4) * std::polar(1.0, -pi / 8) * gamma(cplx(0.5, -1.0)) * pcf_d(cplx(-0.5, 1.0), 0.0)) <
          1e-13);
}

TEST_CASE("second transform is the conjugate of the first at mirrored xi")
{
    for (double E : {0.5, 2.0, 8.7})
        for (double xi : {-3.0, 0.0, 1.0, 2.6}) {
            const EnergyParam e(E);
            CHECK(rel(qct_second(e, xi), std::conj(qct_first(e, -xi))) < 1e-12);
            CHECK(rel(closed_form_second(e, xi), std::conj(closed_form_first(e, -xi))) < 1e-12);
        }
}

TEST_CASE("spot values against the closed forms")
{
    CHECK(rel(qct_first(EnergyParam(2.0), 1.0), closed_form_first(EnergyParam(2.0), 1.0)) < 1e-6);
    CHECK(rel(qct_second(EnergyParam(2.0), 1.0), closed_form_second(EnergyParam(2.0), 1.0)) < 1e-6);
    CHECK(rel(qct_first(EnergyParam(8.7), -2.0), closed_form_first(EnergyParam(8.7), -2.0)) < 1e-6);
}

TEST_CASE("residuals")
{
    const EnergyParam e(2.0);
    CHECK(schrodinger_residual(ResidualSystem::IHO, [&](double x) { return closed_form_first(e, x); }, e, 1.0) < 1e-6);
    const EnergyParam e3(3.0);
    const StateFn chi = [](double q) { return std::pow(q, cplx(0.5, -3.0)); };
    CHECK(schrodinger_residual(ResidualSystem::ISPZeroEnergy, chi, e3, 0.7) < 1e-8);
    const StateFn zero = [](double) { return cplx(0.0); };
    for (auto s : {ResidualSystem::IHO, ResidualSystem::BKFirstOrder, ResidualSystem::BKSquared,
                   ResidualSystem::ISPZeroEnergy})
        CHECK(schrodinger_residual(s, zero, e, 0.5) == 0.0);
    CHECK_THROWS_AS(schrodinger_residual(ResidualSystem::BKSquared, chi, e, -1.0), DomainError);
    CHECK_THROWS_AS(schrodinger_residual(ResidualSystem::ISPZeroEnergy, chi, e, 1e-3, 1e-3), StepSizeError);
    // the first transform solves the IHO equation; the BK eigenstate does not
    CHECK(schrodinger_residual(ResidualSystem::IHO, [](double q) { return std::pow(q, cplx(-0.5, -2.0)); }, e, 1.0) >
          1e-2);
}
