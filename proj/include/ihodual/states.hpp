#pragma once

#include "ihodual/complex_special.hpp"

#include <functional>
#include <vector>

namespace ihodual {

// Dimensionless energy E/(hbar omega); the system energy is -E.
struct EnergyParam {
    double e_hat = 0.0;
    explicit EnergyParam(double e);
};

struct PhysicalScales {
    double mass, omega, hbar;
    PhysicalScales(double m, double w, double h);
    // sqrt(m omega / hbar): multiplies a length to give xi (or ell)
    double inverse_length() const;
    double xi(double x) const { return inverse_length() * x; }
};

// C1 D_{iE-1/2}(sqrt2 e^{-3i pi/4} xi) + C2 D_{-iE-1/2}(sqrt2 e^{-i pi/4} xi)
struct IHOCoefficients {
    cplx c1, c2;
    IHOCoefficients(cplx a, cplx b);
};

// A on Q > 0, B on Q < 0
struct BKBranchCoefficients {
    cplx a_plus, b_minus;
    BKBranchCoefficients(cplx a, cplx b);
};

// alpha Q^{1/2 - iE} + beta Q^{1/2 + iE}
struct ISPCoefficients {
    cplx alpha, beta;
    ISPCoefficients(cplx a, cplx b);
};

struct ClassicalState {
    double position = 0.0;
    double momentum = 0.0;
};

enum class Parity { Plus, Minus };
enum class Branch { Plus, Minus };
enum class ClassicalSystem { IHO, BK };

cplx iho_eigenstate(const IHOCoefficients& c, EnergyParam e, double xi);

// The two basis functions and their xi-derivatives.
struct IHOBasis {
    cplx phi1, phi2, dphi1, dphi2;
};
IHOBasis iho_basis(EnergyParam e, double xi);

// phi1 phi2' - phi1' phi2 in xi.
cplx iho_wronskian(EnergyParam e, double xi);

// Value the Wronskian takes for these basis functions: evaluated at xi = 0
// from the origin values of D and D', it reduces to -sqrt(2) e^{pi E / 2}.
cplx iho_wronskian_exact(EnergyParam e);

cplx iho_parity_state(Parity sign, EnergyParam e, double xi);

// Large-xi form C1/sqrt(xi) e^{i Omega} + C2/sqrt(xi) e^{-i Omega} with
// Omega = xi^2/2 - E ln(sqrt2 xi) + arg Gamma(1/2 + iE)/2 + pi/4. Requires xi > 0.
cplx iho_asymptotic_state(const IHOCoefficients& c, EnergyParam e, double xi);

// |Q|^{-1/2 - iE} [A Theta(Q) + B Theta(-Q)]
cplx bk_eigenstate(const BKBranchCoefficients& c, EnergyParam e, double q);

// Continuous phase of bk_eigenstate: arg of the active coefficient - E ln|Q|.
double bk_phase(const BKBranchCoefficients& c, EnergyParam e, double q);

cplx isp_zero_energy_state(const ISPCoefficients& c, EnergyParam e, double q);

// zeta = sqrt(1 - 8g), taken as +2i sqrt(2g - 1/4) above the critical coupling
cplx isp_zeta(double g);

// (2 kappa Q)^{(1 +- zeta)/2} e^{-kappa Q} M((1 +- zeta)/2, 1 +- zeta; 2 kappa Q)
cplx isp_general_state(double g, double kappa, Branch branch, double q);

cplx bk_from_isp(cplx chi_value, double q);

// IHO: init.position = xi0 (turning point), init.momentum = t0;
// BK: init = (Q0, P0) at t = 0.
ClassicalState classical_orbit(ClassicalSystem system, const ClassicalState& init, double t);

// (xi0/2)(Q + 1/Q)
double xi_of_q(double xi0, double q);

struct Wavenumber {
    double k = 0.0;
    int vg_sign = 0;  // sign of dK/dE; +1, -1 or 0
};

using EnergyStateFn = std::function<cplx(double e_hat, double xi)>;

// K = d(arg psi)/d xi from the unwrapped phase, and the sign of dK/dE.
Wavenumber local_wavenumber(const EnergyStateFn& state, double xi, EnergyParam e);

// su(1,1) generators on a uniform xi grid, with pi = -i d/dxi:
// K1 = (pi^2 - xi^2)/2, K2 = (pi^2 + xi^2)/2, K3 = (xi pi + pi xi)/2.
struct UniformGrid {
    double min, max;
    int n;
    double step() const { return (max - min) / (n - 1); }
    double at(int i) const { return min + i * step(); }
};

enum class GeneratorPair { K1K2, K2K3, K3K1 };

// Structure constants f in [Ka, Kb] = f Kc.
enum class Su11Constants {
    Stated,   // -i, +i, +i
    Realized  // -2i, -2i, +2i, what the generators above obey
};

cplx su11_structure_constant(GeneratorPair pair, Su11Constants which);

// max |([Ka, Kb] - f Kc) test| over the interior of the grid.
// Throws GridTooCoarse when the step-doubling estimate of the discretisation
// error of [Ka, Kb] test exceeds grid_tolerance.
double su11_commutator_residual(GeneratorPair pair, const std::vector<cplx>& test, const UniformGrid& grid,
                                Su11Constants which = Su11Constants::Stated, double grid_tolerance = 1e-6);

// max |[C, Ka] test| / max |C Ka test|. Stated: C = K3^2 - K1^2 - K2^2;
// Realized: C = K1^2 - K2^2 + K3^2, the invariant of the realized algebra.
double su11_casimir_residual(int k, const std::vector<cplx>& test, const UniformGrid& grid,
                             Su11Constants which = Su11Constants::Stated);

}  // namespace ihodual
