#include "doctest.h"

#include "ihodual/errors.hpp"
#include "ihodual/rg.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ihodual;

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double max_drift(const RGTrajectory& t)
{
    double worst = 0.0;
    for (const auto& s : t.samples)
        worst = std::max({worst, std::abs(s.Lambda - t.model.lambda0()), std::abs(s.Lambda_numeric - t.model.lambda0())});
    return worst;
}
}  // namespace

TEST_CASE("reduced couplings and Robin parameters")
{
    const RobinBoundary bc(cplx(3.0, -1.0), 0.25);
    CHECK(rel(reduced_isp(bc).Lambda, cplx(0.25, -0.25)) < 1e-15);
    CHECK(rel(robin_from_reduced_isp(reduced_isp(bc), 0.25).lambda, bc.lambda) < 1e-15);
    const EnergyParam e(2.0);
    const RobinBoundary b2(cplx(0.4, 0.1), 2.5);
    const ReducedCouplingIHO L = reduced_iho(b2, e);
    CHECK(rel(L.Lambda, (2.5 * b2.lambda + 0.5) / (2.0 - 6.25)) < 1e-15);
    CHECK(L.outside_asymptotic_regime);
    CHECK_FALSE(reduced_iho(RobinBoundary(1.0, 4.0), e).outside_asymptotic_regime);
    CHECK(rel(robin_from_reduced_iho(L, 2.5, e).lambda, b2.lambda) < 1e-14);
    // psi(scale) = 0 is the pole of both reduced couplings
    CHECK(reduced_isp(RobinBoundary(0.0, 0.1, true)).pole);
    CHECK(reduced_iho(RobinBoundary(0.0, 5.0, true), e).pole);
    CHECK(robin_from_reduced_isp(ReducedCouplingISP{0.0, true}, 0.1).pole);
}

TEST_CASE("ISP ratio parametrisation")
{
    const EnergyParam e(2.0);
    const double eps = 0.01;
    CHECK(rel(lambda_isp_from_ratio(CoefficientRatio::finite(0.0), eps, e).Lambda, 2.0 * I) < 1e-15);
    CHECK(rel(lambda_isp_from_ratio(CoefficientRatio::infinity(), eps, e).Lambda, -2.0 * I) < 1e-15);
    const cplx sym = std::exp(2.0 * I * 2.0 * std::log(eps));
    const auto L0 = lambda_isp_from_ratio(CoefficientRatio::finite(sym), eps, e);
    CHECK(std::abs(L0.Lambda) < 1e-14);
    CHECK(robin_from_reduced_isp(L0, eps).lambda.real() == doctest::Approx(1.0 / (2 * eps)));
    CHECK(rel(ratio_from_lambda_isp(ReducedCouplingISP{0.0}, 1.0, e).value(), 1.0) < 1e-15);
    CHECK(ratio_from_lambda_isp(ReducedCouplingISP{-2.0 * I}, 1.0, e).is_infinite());
    const cplx r(0.4, -0.3);
    CHECK(rel(ratio_from_lambda_isp(lambda_isp_from_ratio(CoefficientRatio::finite(r), eps, e), eps, e).value(), r) <
          1e-12);
    // a pole of Lambda is a finite ratio
    const auto pole = lambda_isp_from_ratio(CoefficientRatio::finite(-std::exp(2.0 * I * 2.0 * std::log(eps))), eps, e);
    CHECK(pole.pole);
    CHECK_THROWS_AS(ratio_from_lambda_isp(ReducedCouplingISP{0.3}, 1.0, EnergyParam(0.0)), DomainError);
}

TEST_CASE("IHO ratio parametrisation")
{
    const EnergyParam e(8.7);
    const double ell = 5.0;
    CHECK(rel(lambda_iho_from_ratio(CoefficientRatio::finite(0.0), ell, e).Lambda, I) < 1e-15);
    CHECK(rel(lambda_iho_from_ratio(CoefficientRatio::infinity(), ell, e).Lambda, -I) < 1e-15);
    const cplx sym = std::exp(-2.0 * I * iho_phase_omega(ell, e));
    CHECK(std::abs(lambda_iho_from_ratio(CoefficientRatio::finite(sym), ell, e).Lambda) < 1e-13);
    CHECK(rel(ratio_from_lambda_iho(ReducedCouplingIHO{0.0}, ell, e).value(), sym) < 1e-13);
    CHECK(std::abs(ratio_from_lambda_iho(ReducedCouplingIHO{I}, ell, e).value()) < 1e-15);
    const cplx r(2.0, 1.0);
    CHECK(rel(ratio_from_lambda_iho(lambda_iho_from_ratio(CoefficientRatio::finite(r), ell, e), ell, e).value(), r) <
          1e-12);
}

TEST_CASE("beta functions vanish at the fixed points")
{
    const EnergyParam e(2.0);
    CHECK(beta_isp(2.0 * I, e) == cplx(0.0));
    CHECK(beta_isp(-2.0 * I, e) == cplx(0.0));
    CHECK(beta_iho(I, 3.0, e) == cplx(0.0));
    CHECK(beta_iho(-I, 3.0, e) == cplx(0.0));
    CHECK(rel(beta_isp(1.0, e), -5.0) < 1e-15);
    CHECK(rel(beta_iho(2.0, 3.0, e), 35.0) < 1e-15);
}

TEST_CASE("closed-form flows solve the beta functions")
{
    const double h = 1e-5;
    const FlowModel isp(FlowSystem::ISP, 2.0, 0.0, cplx(0.3, 0.2));
    const FlowModel iho(FlowSystem::IHO, 8.7, 1.0, cplx(7.0, 1.5));
    for (double s : {-1.3, -0.4, 0.2}) {
        const cplx d = (isp.lambda(s + h) - isp.lambda(s - h)) / (2 * h);
        CHECK(rel(d, beta_isp(isp.lambda(s), EnergyParam(2.0))) < 1e-6);
    }
    for (double s : {1.1, 1.6, 2.2}) {
        const double k = h / 10;
        const cplx d = (iho.lambda(s + k) - iho.lambda(s - k)) / (2 * k);
        CHECK(rel(d, beta_iho(iho.lambda(s), std::exp(s), EnergyParam(8.7))) < 1e-6);
    }
    const FlowModel zero(FlowSystem::ISP, 0.0, 0.0, 0.5);
    CHECK(rel(zero.lambda(1.0), 0.5 / (1.0 + 0.5)) < 1e-15);
    const FlowModel from_pole(FlowSystem::ISP, 0.0, 0.0, 0.0, true);
    CHECK(rel(from_pole.lambda(2.0), 0.5) < 1e-15);
}

TEST_CASE("fixed points are constant trajectories")
{
    for (double sgn : {1.0, -1.0}) {
        const auto ti = flow_isp(ReducedCouplingISP{sgn * 2.0 * I}, EnergyParam(2.0), {0.01, 1.0}, 101);
        CHECK(ti.model.fixed_point());
        CHECK(max_drift(ti) < 1e-9);
        const auto th = flow_iho(sgn * I, EnergyParam(8.7), {3.0, 300.0}, 101);
        CHECK(th.model.fixed_point());
        CHECK(max_drift(th) < 1e-9);
    }
    CHECK_FALSE(FlowModel(FlowSystem::IHO, 1.0, 0.0, cplx(0.0, 1.01)).fixed_point());
}

TEST_CASE("real couplings stay real")
{
    for (const auto& s : flow_isp(ReducedCouplingISP{0.7}, EnergyParam(2.0), {1e-3, 1.0}, 500).samples) {
        CHECK(std::abs(s.Lambda.imag()) <= 1e-12);
        CHECK(std::abs(s.Lambda_numeric.imag()) <= 1e-12);
    }
    for (const auto& s : flow_iho(7.0, EnergyParam(8.7), {1.2, 20.0}, 500).samples) {
        CHECK(std::abs(s.Lambda.imag()) <= 1e-12);
        CHECK(std::abs(s.Lambda_numeric.imag()) <= 1e-12);
    }
}

TEST_CASE("numeric and closed-form IHO flows agree")
{
    const auto t = flow_iho(cplx(7.0, 1.5), EnergyParam(8.7), {std::exp(0.1), std::exp(3.0)}, 1500);
    CHECK(t.max_route_discrepancy <= 1e-8);
    const auto t2 = flow_isp(ReducedCouplingISP{cplx(-0.4, 0.9)}, EnergyParam(3.0), {1e-4, 1.0}, 1000);
    CHECK(t2.max_route_discrepancy <= 1e-8);
}

TEST_CASE("pole flags")
{
    // real ISP flow from 0.7 passes through infinity once per period
    const auto t = flow_isp(ReducedCouplingISP{0.7}, EnergyParam(2.0), {1e-3, 1.0}, 500);
    int crossed = 0;
    for (const auto& s : t.samples) crossed += s.pole_crossed;
    const double span = -std::log(1e-3);
    CHECK(crossed == doctest::Approx(span / (pi / 2.0)).epsilon(0.25));
    const auto cr = axis_crossings(t, t.samples.front().log_scale, t.samples.back().log_scale);
    int poles = 0;
    for (const auto& c : cr) poles += c.pole;
    CHECK(poles > 0);
    CHECK(poles < int(cr.size()));
    for (const auto& c : cr)
        if (!c.pole) CHECK(std::abs(c.Lambda) < 1e-9);
}

TEST_CASE("ISP invariants")
{
    const EnergyParam e(2.0);
    // Lambda0 = 1 at eps0 = 1: Re Lambda = E tan(atan(1/E) - E s) vanishes at s = atan(1/2)/2
    const auto t = flow_isp(ReducedCouplingISP{1.0}, e, {1.0, 10.0}, 20001);
    const double closed = std::exp(std::atan(0.5) / 2.0);
    const auto inv = rg_invariants_isp(t);
    CHECK(std::abs(inv.eps_star - closed) < 1e-9);
    CHECK(std::abs(inv.y_star) < 1e-9);
    double dense = 0.0;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
        const double a = t.samples[i - 1].Lambda_numeric.real(), b = t.samples[i].Lambda_numeric.real();
        if (a > 0 && b <= 0) {
            const double sa = t.samples[i - 1].log_scale, sb = t.samples[i].log_scale;
            dense = std::exp(sa + (sb - sa) * a / (a - b));
            break;
        }
    }
    CHECK(std::abs(dense - closed) < 1e-9);

    const auto fixed = rg_invariants_isp(flow_isp(ReducedCouplingISP{2.0 * I}, e, {0.01, 1.0}, 50));
    CHECK(fixed.degenerate);
    CHECK(fixed.eps_star == doctest::Approx(0.01));
    CHECK(fixed.y_star == doctest::Approx(2.0));

    const auto complex_start = flow_isp(ReducedCouplingISP{cplx(0.5, 0.3)}, e, {1e-3, 1.0}, 400);
    const auto ci = rg_invariants_isp(complex_start);
    // the crossing value is purely imaginary
    CHECK(std::abs(ci.crossings.front().Lambda.real()) < 1e-10);
    CHECK(ci.y_star == doctest::Approx(ci.crossings.front().Lambda.imag()));

    CHECK_THROWS_AS(rg_invariants_isp(flow_iho(1.0, EnergyParam(2.0), {2.0, 3.0}, 10)), DomainError);
    CHECK_THROWS_AS(rg_invariants_isp(flow_isp(ReducedCouplingISP{1.0}, e, {1.0, 1.1}, 10)), NoCrossing);
}

TEST_CASE("log-periodicity versus chirp")
{
    const double E = 2.0;
    const auto isp = limit_cycle_analysis(flow_isp(ReducedCouplingISP{0.7}, EnergyParam(E), {1e-3, 1.0}, 200));
    CHECK(isp.cycle_detected);
    CHECK(isp.monotonicity == Monotonicity::Constant);
    REQUIRE(isp.spacings.size() >= 2);
    for (double sp : isp.spacings) CHECK(std::abs(sp - pi / (2 * E)) < 1e-6);

    const auto iho = limit_cycle_analysis(flow_iho(cplx(7.0, 1.5), EnergyParam(8.7), {4.0, 20.0}, 200));
    CHECK(iho.cycle_detected);
    CHECK(iho.monotonicity == Monotonicity::Decreasing);
    for (std::size_t i = 1; i < iho.spacings.size(); ++i) CHECK(iho.spacings[i] < iho.spacings[i - 1]);

    const auto fp = limit_cycle_analysis(flow_iho(I, EnergyParam(8.7), {4.0, 20.0}, 50));
    CHECK_FALSE(fp.cycle_detected);
    CHECK_THROWS_AS(limit_cycle_analysis(flow_isp(ReducedCouplingISP{0.7}, EnergyParam(E), {0.5, 1.0}, 20)),
                    InsufficientSpan);
    CHECK(std::string(to_string(Monotonicity::Decreasing)) == "decreasing");
}

TEST_CASE("boundary map")
{
    const EnergyParam e(2.0);
    const double eps = 0.01, ell = 6.0;
    // pure alpha (Lambda_ISP = -iE) lands on the pure C1 fixed point
    const RobinBoundary fixed = robin_from_reduced_isp(ReducedCouplingISP{-2.0 * I}, eps);
    const auto m = map_boundary(Direction::IspToIho, fixed, e, ell);
    CHECK(rel(m.lambda_target, -I) < 1e-12);
    CHECK(m.ratio_source.is_infinite());
    CHECK(m.ratio_target.is_infinite());

    const RobinBoundary bc(cplx(0.5, 0.2) / eps, eps);
    const auto there = map_boundary(Direction::IspToIho, bc, e, ell);
    const auto back = map_boundary(Direction::IhoToIsp, there.bc, e, eps);
    CHECK(rel(back.bc.lambda, bc.lambda) < 1e-10);
    CHECK(there.bc.scale == ell);

    // real Robin data stays real across the duality
    const auto real_map = map_boundary(Direction::IspToIho, RobinBoundary(30.0, eps), e, ell);
    CHECK(std::abs(real_map.lambda_target.imag()) < 1e-12 * std::max(1.0, std::abs(real_map.lambda_target)));
    CHECK(std::abs(real_map.bc.lambda.imag()) < 1e-12 * std::max(1.0, std::abs(real_map.bc.lambda)));

    CHECK(map_boundary(Direction::IspToIho, bc, e, 1.0).outside_asymptotic_regime);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const EnergyParam ei(0.2 + 10.0 * u(rng));
        const double ep = std::pow(10.0, -3.0 + 2.5 * u(rng));
        const double l = std::sqrt(2 * ei.e_hat + 4) * (1.0 + 3.0 * u(rng));
        const RobinBoundary b(cplx(4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0) / ep, ep);
        const auto fwd = map_boundary(Direction::IspToIho, b, ei, l);
        if (fwd.target_pole) continue;
        CHECK(rel(map_boundary(Direction::IhoToIsp, fwd.bc, ei, ep).bc.lambda, b.lambda) < 1e-10);
    }
}
