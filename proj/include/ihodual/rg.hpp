#pragma once

#include "ihodual/complex_special.hpp"
#include "ihodual/duality.hpp"
#include "ihodual/states.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ihodual {

// psi'/psi = lambda imposed at `scale` (eps for the ISP, ell for the IHO).
// pole marks lambda = infinity, i.e. psi(scale) = 0.
struct RobinBoundary {
    cplx lambda = 0.0;
    double scale = 1.0;
    bool pole = false;
    RobinBoundary(cplx l, double s, bool is_pole = false);
};

// Lambda_ISP = eps lambda - 1/2
struct ReducedCouplingISP {
    cplx Lambda = 0.0;
    bool pole = false;
};

// Lambda_IHO = (ell lambda + 1/2)/(E - ell^2)
struct ReducedCouplingIHO {
    cplx Lambda = 0.0;
    bool pole = false;
    // ell^2 < 2E + 4: the large-xi form behind Lambda_IHO is not yet reliable
    bool outside_asymptotic_regime = false;
};

ReducedCouplingISP reduced_isp(const RobinBoundary& bc);
RobinBoundary robin_from_reduced_isp(const ReducedCouplingISP& L, double eps);
ReducedCouplingIHO reduced_iho(const RobinBoundary& bc, EnergyParam e);
RobinBoundary robin_from_reduced_iho(const ReducedCouplingIHO& L, double ell, EnergyParam e);

// Omega(ell) = ell^2/2 - E ln(sqrt2 ell) + arg Gamma(1/2 + iE)/2 + pi/4
double iho_phase_omega(double ell, EnergyParam e);
bool iho_outside_asymptotic_regime(double ell, EnergyParam e);

// Lambda_ISP / (iE) = (1 - r eps^{-2iE}) / (1 + r eps^{-2iE}),  r = alpha/beta
ReducedCouplingISP lambda_isp_from_ratio(const CoefficientRatio& r, double eps, EnergyParam e);
CoefficientRatio ratio_from_lambda_isp(const ReducedCouplingISP& L, double eps, EnergyParam e);

// Lambda_IHO = i (1 - r e^{2i Omega}) / (1 + r e^{2i Omega}),  r = C1/C2
ReducedCouplingIHO lambda_iho_from_ratio(const CoefficientRatio& r, double ell, EnergyParam e);
CoefficientRatio ratio_from_lambda_iho(const ReducedCouplingIHO& L, double ell, EnergyParam e);

// dLambda/d ln(eps) = -(E^2 + Lambda^2)
cplx beta_isp(cplx Lambda, EnergyParam e);
// dLambda/d ln(ell) = (ell^2 - E)(Lambda^2 + 1)
cplx beta_iho(cplx Lambda, double ell, EnergyParam e);

enum class FlowSystem { ISP, IHO };

// Closed-form flow in s = ln(scale). The flows are linear in an angle
// variable: ISP Lambda = E tan(chi), chi' = -E (for E = 0, w = 1/Lambda with
// w' = 1); IHO Lambda = tan(Phi), Phi' = e^{2s} - E.
class FlowModel {
public:
    // start_at_pole: Lambda0 is infinite and its value is ignored
    FlowModel(FlowSystem system, double e_hat, double s0, cplx lambda0, bool start_at_pole = false);

    FlowSystem system() const { return system_; }
    double e_hat() const { return e_; }
    double s0() const { return s0_; }
    cplx lambda0() const { return lambda0_; }
    bool start_at_pole() const { return pole0_; }
    // started on +-iE (ISP) or +-i (IHO)
    bool fixed_point() const { return fixed_; }

    cplx angle(double s) const;
    // d(angle)/ds, real
    double rate(double s) const;
    cplx angle_from_lambda(cplx lambda) const;
    cplx lambda_from_angle(cplx angle) const;
    // closed form through the tangent addition formula; sets *pole when the
    // denominator vanishes (the returned value is then 0)
    cplx lambda(double s, bool* pole = nullptr) const;
    // sign changes of Re Lambda happen exactly at the zeros of this function
    double section(double s) const;

private:
    FlowSystem system_;
    double e_;
    double s0_;
    cplx lambda0_;
    bool pole0_ = false;
    bool fixed_ = false;
    cplx angle0_ = 0.0;
};

struct RGSample {
    double log_scale = 0.0;
    cplx Lambda = 0.0;          // closed form
    cplx Lambda_numeric = 0.0;  // integrated angle variable
    bool at_pole = false;       // Lambda infinite at this sample
    bool pole_crossed = false;  // a pole lies between the previous sample and this one
};

struct RGTrajectory {
    FlowModel model;
    std::vector<RGSample> samples;
    // max |closed - numeric| over samples with |Lambda| <= 1e3
    double max_route_discrepancy = 0.0;
};

// Flow started from Lambda at eps_range.first (or at the boundary's own scale).
RGTrajectory flow_isp(const ReducedCouplingISP& start, EnergyParam e, std::pair<double, double> eps_range,
                      int n_samples);
RGTrajectory flow_isp(const RobinBoundary& start, EnergyParam e, std::pair<double, double> eps_range,
                      int n_samples);

// Flow started from Lambda0 at ell0 (default ell_range.first).
RGTrajectory flow_iho(cplx lambda0, EnergyParam e, std::pair<double, double> ell_range, int n_samples,
                      std::optional<double> ell0 = std::nullopt);

struct AxisCrossing {
    double log_scale = 0.0;
    cplx Lambda = 0.0;
    bool pole = false;  // Re Lambda changes sign through infinity
};

// Sign changes of Re Lambda in [s_min, s_max], located by root finding on
// the closed-form flow, including passages through poles.
std::vector<AxisCrossing> axis_crossings(const RGTrajectory& traj, double s_min, double s_max);

struct RGInvariantsISP {
    double eps_star = 0.0;
    double y_star = 0.0;
    std::vector<AxisCrossing> crossings;  // finite crossings only
    bool degenerate = false;              // trajectory lies on the imaginary axis
};

// Throws NoCrossing when Re Lambda never changes sign at finite Lambda.
RGInvariantsISP rg_invariants_isp(const RGTrajectory& traj);

enum class Monotonicity { Constant, Decreasing, Increasing, Mixed };
const char* to_string(Monotonicity m);

struct LimitCycleReport {
    bool cycle_detected = false;
    std::vector<double> crossings;
    std::vector<double> spacings;
    Monotonicity monotonicity = Monotonicity::Constant;
};

// Crossings of the section Re Lambda = 0 (poles included) within the window
// (default: the sampled range). Throws InsufficientSpan below 3 crossings,
// except for fixed-point trajectories, which report no cycle.
LimitCycleReport limit_cycle_analysis(const RGTrajectory& traj,
                                      std::optional<std::pair<double, double>> window = std::nullopt);

struct MappedBoundary {
    RobinBoundary bc;
    cplx lambda_source = 0.0;  // reduced couplings on either side
    cplx lambda_target = 0.0;
    bool source_pole = false;
    bool target_pole = false;
    CoefficientRatio ratio_source = CoefficientRatio::finite(0.0);
    CoefficientRatio ratio_target = CoefficientRatio::finite(0.0);
    bool outside_asymptotic_regime = false;
};

// bc -> reduced coupling -> coefficient ratio -> ratio across the duality ->
// reduced coupling at target_scale -> Robin parameter.
MappedBoundary map_boundary(Direction dir, const RobinBoundary& bc, EnergyParam e, double target_scale);

}  // namespace ihodual
