#pragma once

#include "ihodual/complex_special.hpp"
#include "ihodual/states.hpp"

#include <functional>

namespace ihodual {

enum class KernelKind { F1, G };

struct KernelSpec {
    KernelKind kind;
    double xi;
};

// F1(xi, Q) = -xi^2/2 + sqrt2 xi Q - Q^2/2,  G(xi, Q) = xi^2/2 + sqrt2 xi Q + Q^2/2
double kernel_phase(const KernelSpec& spec, double q);

// Int_0^inf Q^{-iE-1/2} e^{i F1(xi, Q)} dQ
cplx qct_first(EnergyParam e, double xi);

// Int_0^inf Q^{iE-1/2} e^{i G(xi, Q)} dQ
cplx qct_second(EnergyParam e, double xi);

// e^{-pi E/4} e^{-i pi/8} Gamma(1/2 - iE) D_{iE-1/2}(sqrt2 e^{-3i pi/4} xi)
cplx closed_form_first(EnergyParam e, double xi);

// e^{-pi E/4} e^{+i pi/8} Gamma(1/2 + iE) D_{-iE-1/2}(sqrt2 e^{-i pi/4} xi)
cplx closed_form_second(EnergyParam e, double xi);

enum class ResidualSystem { IHO, BKFirstOrder, BKSquared, ISPZeroEnergy };

using StateFn = std::function<cplx(double)>;

// |LHS - RHS| of the chosen equation at `point`, by 4th-order differences at
// steps h and h/2 combined by Richardson extrapolation, divided by the
// largest |state| on the stencil:
//   IHO:           -phi''/2 - xi^2 phi/2 + E phi = 0
//   BKFirstOrder:  Q phi' + (iE + 1/2) phi = 0
//   BKSquared:     Q^2 phi'' + 2 Q phi' + (E^2 + 1/4) phi = 0
//   ISPZeroEnergy: -chi'' - (E^2 + 1/4) chi / Q^2 = 0
// Throws DomainError for Q <= 0 on the Q-systems, StepSizeError when the
// stencil would leave Q > 0.
double schrodinger_residual(ResidualSystem system, const StateFn& state, EnergyParam e, double point,
                            double h = 1e-3);

}  // namespace ihodual
