#include "ihodual/rg.hpp"
#include "ihodual/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace ihodual {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ode_tol = 1e-14;
// |Lambda| beyond which a sample is treated as sitting on a pole
constexpr double pole_magnitude = 1e15;
// samples with larger |Lambda| are left out of the route comparison
constexpr double compare_magnitude = 1e3;

bool finite_c(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_scale(double s, const char* who)
{
    if (!(s > 0) || !std::isfinite(s)) throw DomainError(std::string(who) + ": scale must be positive");
}

void require_isp_energy(EnergyParam e, const char* who)
{
    if (e.e_hat == 0.0) throw DomainError(std::string(who) + ": the ratio parametrisation degenerates at E = 0");
}

cplx tan_c(cplx a)
{
    if (a.imag() == 0.0) return std::tan(a.real());
    return std::tan(a);
}

}  // namespace

RobinBoundary::RobinBoundary(cplx l, double s, bool is_pole) : lambda(is_pole ? cplx(0.0) : l), scale(s), pole(is_pole)
{
    require_scale(s, "RobinBoundary");
    if (!is_pole && !finite_c(l)) throw DomainError("RobinBoundary: lambda must be finite or pole-flagged");
}

ReducedCouplingISP reduced_isp(const RobinBoundary& bc)
{
    if (bc.pole) return {0.0, true};
    return {bc.scale * bc.lambda - 0.5, false};
}

RobinBoundary robin_from_reduced_isp(const ReducedCouplingISP& L, double eps)
{
    require_scale(eps, "robin_from_reduced_isp");
    if (L.pole) return RobinBoundary(0.0, eps, true);
    return RobinBoundary((L.Lambda + 0.5) / eps, eps);
}

bool iho_outside_asymptotic_regime(double ell, EnergyParam e) { return ell * ell < 2.0 * e.e_hat + 4.0; }

ReducedCouplingIHO reduced_iho(const RobinBoundary& bc, EnergyParam e)
{
    const double ell = bc.scale;
    const double den = e.e_hat - ell * ell;
    ReducedCouplingIHO out;
    out.outside_asymptotic_regime = iho_outside_asymptotic_regime(ell, e);
    if (bc.pole) {
        if (den == 0.0) throw DomainError("reduced_iho: infinite lambda at ell^2 = E");
        out.pole = true;
        return out;
    }
    const cplx num = ell * bc.lambda + 0.5;
    if (den == 0.0) {
        if (num == 0.0) throw DomainError("reduced_iho: 0/0 at ell^2 = E");
        out.pole = true;
        return out;
    }
    out.Lambda = num / den;
    return out;
}

RobinBoundary robin_from_reduced_iho(const ReducedCouplingIHO& L, double ell, EnergyParam e)
{
    require_scale(ell, "robin_from_reduced_iho");
    const double den = e.e_hat - ell * ell;
    if (L.pole) {
        if (den == 0.0) throw DomainError("robin_from_reduced_iho: infinite Lambda at ell^2 = E");
        return RobinBoundary(0.0, ell, true);
    }
    return RobinBoundary((L.Lambda * den - 0.5) / ell, ell);
}

double iho_phase_omega(double ell, EnergyParam e)
{
    require_scale(ell, "iho_phase_omega");
    const double E = e.e_hat;
    const double theta = log_gamma(cplx(0.5, E)).imag();
    return 0.5 * ell * ell - E * std::log(std::sqrt(2.0) * ell) + 0.5 * theta + pi / 4.0;
}

ReducedCouplingISP lambda_isp_from_ratio(const CoefficientRatio& r, double eps, EnergyParam e)
{
    require_scale(eps, "lambda_isp_from_ratio");
    require_isp_energy(e, "lambda_isp_from_ratio");
    const double E = e.e_hat;
    const cplx iE(0.0, E);
    if (r.is_infinite()) return {-iE, false};
    const cplx w = r.value() * std::polar(1.0, -2.0 * E * std::log(eps));
    const cplx den = 1.0 + w;
    if (std::abs(den) <= 1e-15 * (1.0 + std::abs(w))) return {0.0, true};
    return {iE * (1.0 - w) / den, false};
}

CoefficientRatio ratio_from_lambda_isp(const ReducedCouplingISP& L, double eps, EnergyParam e)
{
    require_scale(eps, "ratio_from_lambda_isp");
    require_isp_energy(e, "ratio_from_lambda_isp");
    const double E = e.e_hat;
    const cplx phase = std::polar(1.0, 2.0 * E * std::log(eps));
    if (L.pole) return CoefficientRatio::finite(-phase);
    const cplx u = cplx(0.0, 1.0) * L.Lambda / E;
    return CoefficientRatio::from_pair((1.0 + u) * phase, 1.0 - u);
}

ReducedCouplingIHO lambda_iho_from_ratio(const CoefficientRatio& r, double ell, EnergyParam e)
{
    ReducedCouplingIHO out;
    out.outside_asymptotic_regime = iho_outside_asymptotic_regime(ell, e);
    const cplx i(0.0, 1.0);
    if (r.is_infinite()) {
        require_scale(ell, "lambda_iho_from_ratio");
        out.Lambda = -i;
        return out;
    }
    const cplx w = r.value() * std::polar(1.0, 2.0 * iho_phase_omega(ell, e));
    const cplx den = 1.0 + w;
    if (std::abs(den) <= 1e-15 * (1.0 + std::abs(w))) {
        out.pole = true;
        return out;
    }
    out.Lambda = i * (1.0 - w) / den;
    return out;
}

CoefficientRatio ratio_from_lambda_iho(const ReducedCouplingIHO& L, double ell, EnergyParam e)
{
    const cplx phase = std::polar(1.0, -2.0 * iho_phase_omega(ell, e));
    if (L.pole) return CoefficientRatio::finite(-phase);
    const cplx i(0.0, 1.0);
    return CoefficientRatio::from_pair((i - L.Lambda) * phase, i + L.Lambda);
}

cplx beta_isp(cplx Lambda, EnergyParam e) { return -(e.e_hat * e.e_hat + Lambda * Lambda); }

cplx beta_iho(cplx Lambda, double ell, EnergyParam e) { return (ell * ell - e.e_hat) * (Lambda * Lambda + 1.0); }

// ---------------------------------------------------------------------------

FlowModel::FlowModel(FlowSystem system, double e_hat, double s0, cplx lambda0, bool start_at_pole)
    : system_(system), e_(e_hat), s0_(s0), lambda0_(start_at_pole ? cplx(0.0) : lambda0), pole0_(start_at_pole)
{
    if (!std::isfinite(e_hat) || !std::isfinite(s0)) throw DomainError("FlowModel: non-finite parameters");
    if (!pole0_ && !finite_c(lambda0)) throw DomainError("FlowModel: Lambda0 must be finite or pole-flagged");
    if (!pole0_) {
        const double fixed_mod = system_ == FlowSystem::ISP ? std::abs(e_) : 1.0;
        const double tol = 1e-14 * std::max(1.0, fixed_mod);
        fixed_ = std::abs(lambda0_ - cplx(0.0, fixed_mod)) <= tol || std::abs(lambda0_ + cplx(0.0, fixed_mod)) <= tol;
    }
    if (!fixed_) angle0_ = pole0_ ? cplx(system_ == FlowSystem::ISP && e_ == 0.0 ? 0.0 : pi / 2) : angle_from_lambda(lambda0_);
}

double FlowModel::rate(double s) const
{
    if (system_ == FlowSystem::IHO) return std::exp(2.0 * s) - e_;
    return e_ == 0.0 ? 1.0 : -e_;
}

cplx FlowModel::angle_from_lambda(cplx lambda) const
{
    if (system_ == FlowSystem::IHO) return lambda.imag() == 0.0 ? cplx(std::atan(lambda.real())) : std::atan(lambda);
    if (e_ == 0.0) return 1.0 / lambda;
    const cplx u = lambda / e_;
    return u.imag() == 0.0 ? cplx(std::atan(u.real())) : std::atan(u);
}

cplx FlowModel::lambda_from_angle(cplx a) const
{
    if (system_ == FlowSystem::ISP && e_ == 0.0) return 1.0 / a;
    const cplx t = tan_c(a);
    return system_ == FlowSystem::ISP ? e_ * t : t;
}

namespace {
double iho_omega_part(double s, double E) { return 0.5 * std::exp(2.0 * s) - E * (s + 0.5 * std::log(2.0)); }
}  // namespace

cplx FlowModel::angle(double s) const
{
    if (fixed_) throw DomainError("FlowModel::angle: no finite angle at a fixed point");
    if (system_ == FlowSystem::IHO) return angle0_ + (iho_omega_part(s, e_) - iho_omega_part(s0_, e_));
    return angle0_ + rate(s) * (s - s0_);
}

cplx FlowModel::lambda(double s, bool* pole) const
{
    cplx num, den;
    if (system_ == FlowSystem::ISP && e_ == 0.0) {
        // 1/Lambda = 1/Lambda0 + (s - s0)
        const double ds = s - s0_;
        if (pole0_) {
            num = 1.0;
            den = ds;
        } else {
            num = lambda0_;
            den = 1.0 + lambda0_ * ds;
        }
    } else if (system_ == FlowSystem::ISP) {
        const double t = std::tan(e_ * (s - s0_));
        if (pole0_) {
            num = e_;
            den = t;
        } else {
            num = lambda0_ - e_ * t;
            den = 1.0 + lambda0_ * t / e_;
        }
    } else {
        const double T = std::tan(iho_omega_part(s, e_) - iho_omega_part(s0_, e_));
        if (pole0_) {
            num = -1.0;
            den = T;
        } else {
            num = lambda0_ + T;
            den = 1.0 - lambda0_ * T;
        }
    }
    const bool at_pole = std::abs(den) * pole_magnitude <= std::abs(num);
    if (pole) *pole = at_pole;
    return at_pole ? cplx(0.0) : num / den;
}

double FlowModel::section(double s) const
{
    if (fixed_) return lambda0_.real();
    const cplx a = angle(s);
    if (system_ == FlowSystem::ISP && e_ == 0.0) return a.real();
    // Re tan(x + iy) = sin 2x / (cos 2x + cosh 2y); the denominator is positive off the poles
    const double v = std::sin(2.0 * a.real());
    return system_ == FlowSystem::ISP && e_ < 0 ? -v : v;
}

// ---------------------------------------------------------------------------

namespace {

using State = std::array<double, 2>;
using Rhs = std::function<void(const State&, State&, double)>;

// Integrates from (s0, x0) to every entry of `targets` (any order) and
// returns the states in the order given.
std::vector<State> integrate_to(const Rhs& rhs, State x0, double s0, const std::vector<double>& targets)
{
    namespace odeint = boost::numeric::odeint;
    std::vector<State> out(targets.size(), x0);
    std::vector<std::size_t> fwd, bwd;
    for (std::size_t k = 0; k < targets.size(); ++k) (targets[k] >= s0 ? fwd : bwd).push_back(k);
    std::sort(fwd.begin(), fwd.end(), [&](auto a, auto b) { return targets[a] < targets[b]; });
    std::sort(bwd.begin(), bwd.end(), [&](auto a, auto b) { return targets[a] > targets[b]; });

    for (int dir : {+1, -1}) {
        const auto& idx = dir > 0 ? fwd : bwd;
        if (idx.empty()) continue;
        std::vector<double> times{s0};
        for (auto k : idx) times.push_back(targets[k]);
        // got[0] is the observation at s0 itself
        std::vector<State> got;
        State x = x0;
        auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(ode_tol, ode_tol);
        odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dir * 1e-3,
                                [&](const State& st, double) { got.push_back(st); });
        for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = got[j + 1];
    }
    return out;
}

RGTrajectory build_trajectory(const FlowModel& model, double s_a, double s_b, int n)
{
    if (n < 2) throw DomainError("flow: need at least 2 samples");
    if (!(s_a < s_b)) throw DomainError("flow: scale range must be increasing");

    RGTrajectory traj{model, {}, 0.0};
    std::vector<double> s(n);
    for (int k = 0; k < n; ++k) s[k] = k == n - 1 ? s_b : s_a + (s_b - s_a) * k / (n - 1);

    // numeric route: the linear angle equation, or the raw beta function when
    // the start is a fixed point (where the angle is infinite)
    std::vector<cplx> numeric(n);
    const double E = model.e_hat();
    const bool isp = model.system() == FlowSystem::ISP;
    if (model.fixed_point()) {
        const Rhs rhs = [&](const State& x, State& dx, double t) {
            const cplx L(x[0], x[1]);
            const cplx b = isp ? beta_isp(L, EnergyParam(E)) : beta_iho(L, std::exp(t), EnergyParam(E));
            dx = {b.real(), b.imag()};
        };
        const auto got = integrate_to(rhs, {model.lambda0().real(), model.lambda0().imag()}, model.s0(), s);
        for (int k = 0; k < n; ++k) numeric[k] = {got[k][0], got[k][1]};
    } else {
        const Rhs rhs = [&](const State&, State& dx, double t) { dx = {model.rate(t), 0.0}; };
        const cplx a0 = model.angle(model.s0());
        const auto got = integrate_to(rhs, {a0.real(), a0.imag()}, model.s0(), s);
        for (int k = 0; k < n; ++k) numeric[k] = model.lambda_from_angle({got[k][0], got[k][1]});
    }

    traj.samples.resize(n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        RGSample& smp = traj.samples[k];
        smp.log_scale = s[k];
        smp.Lambda = model.lambda(s[k], &smp.at_pole);
        smp.Lambda_numeric = finite_c(numeric[k]) ? numeric[k] : cplx(0.0);
        if (!smp.at_pole && std::abs(smp.Lambda) <= compare_magnitude)
            worst = std::max(worst, std::abs(smp.Lambda - smp.Lambda_numeric));
        if (k > 0 && !model.fixed_point()) {
            const cplx a = model.angle(s[k - 1]);
            const cplx b = model.angle(s[k]);
            if (a.imag() == 0.0 && b.imag() == 0.0) {
                if (isp && E == 0.0)
                    smp.pole_crossed = (a.real() < 0) != (b.real() < 0) || a.real() == 0.0;
                else
                    smp.pole_crossed = std::floor((a.real() - pi / 2) / pi) != std::floor((b.real() - pi / 2) / pi);
            }
        }
    }
    traj.max_route_discrepancy = worst;
    return traj;
}

}  // namespace

RGTrajectory flow_isp(const ReducedCouplingISP& start, EnergyParam e, std::pair<double, double> eps_range,
                      int n_samples)
{
    require_scale(eps_range.first, "flow_isp");
    require_scale(eps_range.second, "flow_isp");
    const double s0 = std::log(eps_range.first);
    const FlowModel model(FlowSystem::ISP, e.e_hat, s0, start.Lambda, start.pole);
    return build_trajectory(model, s0, std::log(eps_range.second), n_samples);
}

RGTrajectory flow_isp(const RobinBoundary& start, EnergyParam e, std::pair<double, double> eps_range,
                      int n_samples)
{
    require_scale(eps_range.first, "flow_isp");
    require_scale(eps_range.second, "flow_isp");
    const ReducedCouplingISP L = reduced_isp(start);
    const FlowModel model(FlowSystem::ISP, e.e_hat, std::log(start.scale), L.Lambda, L.pole);
    return build_trajectory(model, std::log(eps_range.first), std::log(eps_range.second), n_samples);
}

RGTrajectory flow_iho(cplx lambda0, EnergyParam e, std::pair<double, double> ell_range, int n_samples,
                      std::optional<double> ell0)
{
    require_scale(ell_range.first, "flow_iho");
    require_scale(ell_range.second, "flow_iho");
    const double start = ell0.value_or(ell_range.first);
    require_scale(start, "flow_iho");
    const FlowModel model(FlowSystem::IHO, e.e_hat, std::log(start), lambda0);
    return build_trajectory(model, std::log(ell_range.first), std::log(ell_range.second), n_samples);
}

// ---------------------------------------------------------------------------

std::vector<AxisCrossing> axis_crossings(const RGTrajectory& traj, double s_min, double s_max)
{
    const FlowModel& m = traj.model;
    std::vector<AxisCrossing> out;
    if (m.fixed_point() || !(s_min < s_max)) return out;

    const double E = m.e_hat();
    const bool iho = m.system() == FlowSystem::IHO;
    // keep the angle change per bracket below 0.2 so that no pair of roots hides
    auto step_at = [&](double s) {
        if (!iho) return std::min(0.05, 0.2 / std::max(std::abs(m.rate(s)), 1e-300));
        return std::min(0.05, 0.2 / (std::exp(2.0 * s + 0.1) + std::abs(E)));
    };
    auto f = [&](double s) { return m.section(s); };

    auto classify = [&](double s) {
        AxisCrossing c;
        c.log_scale = s;
        const cplx a = m.angle(s);
        if (!iho && E == 0.0) {
            c.pole = a.imag() == 0.0;
        } else {
            const long k = std::lround(2.0 * a.real() / pi);
            c.pole = (k % 2 != 0) && a.imag() == 0.0;
        }
        if (!c.pole) {
            const cplx L = m.lambda(s);
            // on the section Lambda is imaginary; drop the root-finding residue
            c.Lambda = cplx(0.0, L.imag());
        }
        return c;
    };

    double a = s_min;
    double fa = f(a);
    if (fa == 0.0) out.push_back(classify(a));
    while (a < s_max) {
        const double b = std::min(s_max, a + step_at(a));
        const double fb = f(b);
        if (fb == 0.0) {
            out.push_back(classify(b));
        } else if (fa != 0.0 && (fa < 0) != (fb < 0)) {
            std::uintmax_t iters = 200;
            const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                              boost::math::tools::eps_tolerance<double>(52), iters);
            out.push_back(classify(0.5 * (r.first + r.second)));
        }
        a = b;
        fa = fb;
    }
    return out;
}

RGInvariantsISP rg_invariants_isp(const RGTrajectory& traj)
{
    const FlowModel& m = traj.model;
    if (m.system() != FlowSystem::ISP) throw DomainError("rg_invariants_isp: needs an ISP trajectory");
    if (traj.samples.empty()) throw NoCrossing("rg_invariants_isp: empty trajectory");
    RGInvariantsISP inv;
    const double s_a = traj.samples.front().log_scale;
    if (m.fixed_point() && m.lambda0().real() == 0.0) {
        inv.degenerate = true;
        inv.eps_star = std::exp(s_a);
        inv.y_star = m.lambda0().imag();
        return inv;
    }
    for (const auto& c : axis_crossings(traj, s_a, traj.samples.back().log_scale))
        if (!c.pole) inv.crossings.push_back(c);
    if (inv.crossings.empty()) throw NoCrossing("rg_invariants_isp: Re Lambda does not change sign at finite Lambda");
    inv.eps_star = std::exp(inv.crossings.front().log_scale);
    inv.y_star = inv.crossings.front().Lambda.imag();
    return inv;
}

const char* to_string(Monotonicity m)
{
    switch (m) {
    case Monotonicity::Constant: return "constant";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Mixed: return "mixed";
    }
    return "?";
}

LimitCycleReport limit_cycle_analysis(const RGTrajectory& traj, std::optional<std::pair<double, double>> window)
{
    LimitCycleReport rep;
    if (traj.model.fixed_point()) return rep;
    if (traj.samples.empty()) throw InsufficientSpan("limit_cycle_analysis: empty trajectory");
    double lo = traj.samples.front().log_scale;
    double hi = traj.samples.back().log_scale;
    if (window) {
        lo = std::max(lo, window->first);
        hi = std::min(hi, window->second);
    }
    for (const auto& c : axis_crossings(traj, lo, hi)) rep.crossings.push_back(c.log_scale);
    if (rep.crossings.size() < 3)
        throw InsufficientSpan("limit_cycle_analysis: fewer than 3 crossings of Re Lambda = 0 in range");
    for (std::size_t k = 1; k < rep.crossings.size(); ++k)
        rep.spacings.push_back(rep.crossings[k] - rep.crossings[k - 1]);

    const auto [mn, mx] = std::minmax_element(rep.spacings.begin(), rep.spacings.end());
    bool dec = true, inc = true;
    for (std::size_t k = 1; k < rep.spacings.size(); ++k) {
        dec = dec && rep.spacings[k] < rep.spacings[k - 1];
        inc = inc && rep.spacings[k] > rep.spacings[k - 1];
    }
    if (*mx - *mn <= 1e-9 * *mx)
        rep.monotonicity = Monotonicity::Constant;
    else if (dec)
        rep.monotonicity = Monotonicity::Decreasing;
    else if (inc)
        rep.monotonicity = Monotonicity::Increasing;
    else
        rep.monotonicity = Monotonicity::Mixed;
    rep.cycle_detected = true;
    return rep;
}

MappedBoundary map_boundary(Direction dir, const RobinBoundary& bc, EnergyParam e, double target_scale)
{
    require_scale(target_scale, "map_boundary");
    MappedBoundary out{RobinBoundary(0.0, target_scale)};
    if (dir == Direction::IspToIho) {
        const ReducedCouplingISP src = reduced_isp(bc);
        out.lambda_source = src.Lambda;
        out.source_pole = src.pole;
        out.ratio_source = ratio_from_lambda_isp(src, bc.scale, e);
        out.ratio_target = ratio_map(out.ratio_source, e, dir);
        const ReducedCouplingIHO dst = lambda_iho_from_ratio(out.ratio_target, target_scale, e);
        out.lambda_target = dst.Lambda;
        out.target_pole = dst.pole;
        out.outside_asymptotic_regime = dst.outside_asymptotic_regime;
        out.bc = robin_from_reduced_iho(dst, target_scale, e);
    } else {
        const ReducedCouplingIHO src = reduced_iho(bc, e);
        out.lambda_source = src.Lambda;
        out.source_pole = src.pole;
        out.outside_asymptotic_regime = src.outside_asymptotic_regime;
        out.ratio_source = ratio_from_lambda_iho(src, bc.scale, e);
        out.ratio_target = ratio_map(out.ratio_source, e, dir);
        const ReducedCouplingISP dst = lambda_isp_from_ratio(out.ratio_target, target_scale, e);
        out.lambda_target = dst.Lambda;
        out.target_pole = dst.pole;
        out.bc = robin_from_reduced_isp(dst, target_scale);
    }
    return out;
}

}  // namespace ihodual
