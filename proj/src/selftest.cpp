#include "ihodual/selftest.hpp"
#include "ihodual/duality.hpp"
#include "ihodual/errors.hpp"
#include "ihodual/rg.hpp"
#include "ihodual/states.hpp"
#include "ihodual/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>

namespace ihodual {

bool SelfTestReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const SelfTestCheck& c) { return c.passed; });
}

double tolerance_scale_from_env()
{
    const char* v = std::getenv("IHODUAL_TOL_SCALE");
    if (!v || !*v) return 1.0;
    char* end = nullptr;
    const double s = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(s >= 0) || !std::isfinite(s))
        throw ConfigError("IHODUAL_TOL_SCALE must be a non-negative number");
    return s;
}

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double check_wronskian()
{
    double worst = 0.0;
    for (double E : {0.5, 1.0, 2.0, 8.7}) {
        const EnergyParam e(E);
        const cplx exact = iho_wronskian_exact(e);
        for (double xi : {-2.0, -0.5, 1.0, 3.0}) worst = std::max(worst, rel(iho_wronskian(e, xi), exact));
    }
    return worst;
}

double check_transforms()
{
    double worst = 0.0;
    for (double E : {0.5, 8.7}) {
        const EnergyParam e(E);
        for (double xi : {-3.0, 0.0, 2.5}) {
            worst = std::max(worst, rel(qct_first(e, xi), closed_form_first(e, xi)));
            worst = std::max(worst, rel(qct_second(e, xi), closed_form_second(e, xi)));
        }
    }
    return worst;
}

double check_iho_residual()
{
    double worst = 0.0;
    for (double E : {0.5, 2.0, 8.7}) {
        const EnergyParam e(E);
        const StateFn f1 = [e](double x) { return iho_basis(e, x).phi1; };
        const StateFn f2 = [e](double x) { return iho_basis(e, x).phi2; };
        for (double xi : {-3.0, -0.7, 0.4, 2.0, 4.5}) {
            worst = std::max(worst, schrodinger_residual(ResidualSystem::IHO, f1, e, xi));
            worst = std::max(worst, schrodinger_residual(ResidualSystem::IHO, f2, e, xi));
        }
    }
    return worst;
}

double check_bk_squared()
{
    double worst = 0.0;
    for (double E : {0.5, 2.0, 10.0}) {
        const EnergyParam e(E);
        for (auto c : {ISPCoefficients(1.0, 0.0), ISPCoefficients(0.0, 1.0)}) {
            const StateFn f = [c, e](double q) { return bk_from_isp(isp_zero_energy_state(c, e, q), q); };
            for (double q : {0.3, 1.0, 2.7}) worst = std::max(worst, schrodinger_residual(ResidualSystem::BKSquared, f, e, q));
        }
    }
    return worst;
}

double check_coupling_round_trip()
{
    double worst = std::abs(coupling_from_energy(EnergyParam(0.0)).g - 0.125);
    for (int k = 0; k <= 40; ++k) {
        const double E = 0.5 * k;
        worst = std::max(worst, std::abs(energy_from_coupling(coupling_from_energy(EnergyParam(E))).e_hat - E));
    }
    return worst;
}

double check_ratio_modulus()
{
    double worst = 0.0;
    const cplx r(0.4, -0.3);
    for (int k = -20; k <= 20; ++k) {
        const EnergyParam e(k + 0.25);
        const cplx m = ratio_map(CoefficientRatio::finite(r), e, Direction::IspToIho).value();
        worst = std::max(worst, std::abs(std::abs(m) - std::abs(r)) / std::abs(r));
        const cplx back =
            ratio_map(CoefficientRatio::finite(m), e, Direction::IhoToIsp).value();
        worst = std::max(worst, rel(back, r));
    }
    return worst;
}

double max_drift(const RGTrajectory& t)
{
    double worst = 0.0;
    const cplx L0 = t.model.lambda0();
    for (const auto& s : t.samples)
        worst = std::max({worst, std::abs(s.Lambda - L0), std::abs(s.Lambda_numeric - L0)});
    return worst;
}

double check_fixed_points()
{
    const EnergyParam e(2.0);
    double worst = 0.0;
    for (double sgn : {1.0, -1.0}) {
        worst = std::max(worst, max_drift(flow_isp(ReducedCouplingISP{cplx(0.0, sgn * 2.0)}, e, {0.01, 1.0}, 101)));
        worst = std::max(worst, max_drift(flow_iho(cplx(0.0, sgn), EnergyParam(8.7), {3.0, 300.0}, 101)));
    }
    return worst;
}

double check_reality()
{
    double worst = 0.0;
    for (const auto& s : flow_isp(ReducedCouplingISP{0.7}, EnergyParam(2.0), {1e-3, 1.0}, 400).samples)
        worst = std::max({worst, std::abs(s.Lambda.imag()), std::abs(s.Lambda_numeric.imag())});
    for (const auto& s : flow_iho(7.0, EnergyParam(8.7), {1.2, 20.0}, 400).samples)
        worst = std::max({worst, std::abs(s.Lambda.imag()), std::abs(s.Lambda_numeric.imag())});
    return worst;
}

double check_flow_routes()
{
    double worst = 0.0;
    for (auto [L0, E] : {std::pair{cplx(7.0, 1.5), 8.7}, std::pair{cplx(-0.3, 0.8), 3.1}})
        worst = std::max(worst, flow_iho(L0, EnergyParam(E), {std::exp(0.1), std::exp(3.0)}, 800).max_route_discrepancy);
    return worst;
}

double check_ratio_invariance()
{
    double worst = 0.0;
    const EnergyParam ei(8.7);
    const auto ti = flow_iho(cplx(7.0, 1.5), ei, {4.0, 20.0}, 300);
    const cplx r0 = ratio_from_lambda_iho(ReducedCouplingIHO{ti.samples.front().Lambda}, 4.0, ei).value();
    for (const auto& s : ti.samples) {
        if (s.at_pole) continue;
        const cplx r = ratio_from_lambda_iho(ReducedCouplingIHO{s.Lambda}, std::exp(s.log_scale), ei).value();
        worst = std::max(worst, rel(r, r0));
    }
    const EnergyParam es(2.0);
    const auto ts = flow_isp(ReducedCouplingISP{cplx(0.3, -0.4)}, es, {1e-3, 1.0}, 300);
    const cplx q0 = ratio_from_lambda_isp(ReducedCouplingISP{ts.samples.front().Lambda}, 1e-3, es).value();
    for (const auto& s : ts.samples) {
        const cplx q = ratio_from_lambda_isp(ReducedCouplingISP{s.Lambda}, std::exp(s.log_scale), es).value();
        worst = std::max(worst, rel(q, q0));
    }
    return worst;
}

double check_isp_period()
{
    const double E = 2.0;
    const auto rep = limit_cycle_analysis(flow_isp(ReducedCouplingISP{0.7}, EnergyParam(E), {1e-3, 1.0}, 200));
    if (rep.monotonicity != Monotonicity::Constant) return 1.0;
    double worst = 0.0;
    for (double sp : rep.spacings) worst = std::max(worst, std::abs(sp - pi / (2.0 * E)));
    return worst;
}

double check_iho_chirp()
{
    const auto rep = limit_cycle_analysis(flow_iho(cplx(7.0, 1.5), EnergyParam(8.7), {4.0, 20.0}, 200));
    return rep.monotonicity == Monotonicity::Decreasing ? 0.0 : 1.0;
}

double check_boundary_round_trip()
{
    double worst = 0.0;
    const double eps = 0.01, ell = 6.0;
    for (double E : {0.7, 2.0, 8.7}) {
        const EnergyParam e(E);
        const RobinBoundary bc(cplx(0.5, 0.2) / eps, eps);
        const auto there = map_boundary(Direction::IspToIho, bc, e, ell);
        const auto back = map_boundary(Direction::IhoToIsp, there.bc, e, eps);
        worst = std::max(worst, rel(back.bc.lambda, bc.lambda));
    }
    return worst;
}

double check_su11()
{
    const UniformGrid grid{-8.0, 8.0, 1601};
    std::vector<cplx> test(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.at(i) - 0.3;
        test[i] = std::exp(-0.5 * x * x) * std::polar(1.0, 0.4 * x);
    }
    double worst = 0.0;
    for (auto p : {GeneratorPair::K1K2, GeneratorPair::K2K3, GeneratorPair::K3K1})
        worst = std::max(worst, su11_commutator_residual(p, test, grid, Su11Constants::Realized));
    return worst;
}

double check_casimir()
{
    const UniformGrid grid{-8.0, 8.0, 1601};
    std::vector<cplx> test(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.at(i) - 0.3;
        test[i] = std::exp(-0.5 * x * x) * std::polar(1.0, 0.4 * x);
    }
    double worst = 0.0;
    for (int k : {1, 2, 3}) worst = std::max(worst, su11_casimir_residual(k, test, grid, Su11Constants::Realized));
    return worst;
}

double check_one_way_waves()
{
    const EnergyParam e(2.0);
    auto sign_for = [](cplx c1, cplx c2) {
        const EnergyStateFn f = [c1, c2](double E, double xi) {
            return iho_asymptotic_state(IHOCoefficients(c1, c2), EnergyParam(E), xi);
        };
        return local_wavenumber(f, 9.0, EnergyParam(2.0)).vg_sign;
    };
    const int a = sign_for(1.0, 0.0), b = sign_for(0.0, 1.0);
    // Lambda = +i is r = 0 (pure C2), Lambda = -i is r = infinity (pure C1)
    const bool fixed_match = std::abs(lambda_iho_from_ratio(CoefficientRatio::finite(0.0), 9.0, e).Lambda - cplx(0, 1)) < 1e-14 &&
                             std::abs(lambda_iho_from_ratio(CoefficientRatio::infinity(), 9.0, e).Lambda + cplx(0, 1)) < 1e-14;
    return (a != 0 && b != 0 && a != b && fixed_match) ? 0.0 : 1.0;
}

double check_pcf_integral()
{
    double worst = 0.0;
    const cplx a(0.0, 0.5), b(0.0, -std::sqrt(2.0));
    for (cplx s : {cplx(-0.5, 2.0), cplx(-0.5, -0.7), cplx(0.8, 1.1)})
        worst = std::max(worst, rel(pcf_d_via_integral(s, a, b), pcf_d(s, b / std::sqrt(2.0 * a))));
    return worst;
}

struct Spec {
    const char* name;
    double tolerance;
    std::function<double()> run;
};

}  // namespace

SelfTestReport run_selftest(double tol_scale)
{
    const std::vector<Spec> specs = {
        {"wronskian", 1e-6, check_wronskian},
        {"transform_identity", 1e-6, check_transforms},
        {"iho_residual", 1e-6, check_iho_residual},
        {"bk_squared_residual", 1e-6, check_bk_squared},
        {"coupling_round_trip", 1e-14, check_coupling_round_trip},
        {"ratio_modulus", 1e-12, check_ratio_modulus},
        {"rg_fixed_points", 1e-9, check_fixed_points},
        {"rg_reality", 1e-12, check_reality},
        {"iho_flow_routes", 1e-8, check_flow_routes},
        {"ratio_invariance", 1e-9, check_ratio_invariance},
        {"isp_log_period", 1e-6, check_isp_period},
        {"iho_chirp", 0.0, check_iho_chirp},
        {"boundary_round_trip", 1e-10, check_boundary_round_trip},
        {"su11_commutators", 1e-6, check_su11},
        {"su11_casimir", 1e-6, check_casimir},
        {"one_way_waves", 0.0, check_one_way_waves},
        {"pcf_integral", 1e-10, check_pcf_integral},
    };
    SelfTestReport rep;
    for (const auto& s : specs) {
        SelfTestCheck c;
        c.name = s.name;
        c.tolerance = s.tolerance * tol_scale;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.value = s.run();
            // pass/fail checks report 0 or 1 and are only disabled by a zero scale
            c.passed = s.tolerance == 0.0 ? (c.value == 0.0 && tol_scale > 0) : c.value <= c.tolerance;
        } catch (const std::exception& ex) {
            c.value = std::nan("");
            c.passed = false;
            c.detail = ex.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace ihodual
