#pragma once

#include "ihodual/complex_special.hpp"
#include "ihodual/states.hpp"

namespace ihodual {

// ISP strength g in -g/Q^2
struct CouplingParam {
    double g = 0.0;
    explicit CouplingParam(double v);
};

// Ratio of two coefficients on the projective line; the point at infinity is
// a flag, never the result of a division by zero.
class CoefficientRatio {
public:
    static CoefficientRatio finite(cplx v);
    static CoefficientRatio infinity();
    // num/den; throws DomainError when both vanish
    static CoefficientRatio from_pair(cplx num, cplx den);

    bool is_infinite() const { return infinite_; }
    // throws DomainError for the point at infinity
    cplx value() const;

private:
    cplx value_ = 0.0;
    bool infinite_ = false;
};

enum class Direction { IspToIho, IhoToIsp };

// g = (E^2 + 1/4)/2
CouplingParam coupling_from_energy(EnergyParam e);

// E = +sqrt(2g - 1/4); throws SubcriticalCoupling for g < 1/8
EnergyParam energy_from_coupling(CouplingParam g);

// C1 = alpha e^{-pi E/4} e^{-i pi/8} Gamma(1/2 - iE),
// C2 = beta  e^{-pi E/4} e^{+i pi/8} Gamma(1/2 + iE)
IHOCoefficients iho_coeffs_from_isp(const ISPCoefficients& c, EnergyParam e);
ISPCoefficients isp_coeffs_from_iho(const IHOCoefficients& c, EnergyParam e);

// Gamma(1/2 - iE)/Gamma(1/2 + iE) e^{-i pi/4}; unit modulus for real E
cplx ratio_multiplier(EnergyParam e);

// C1/C2 = (alpha/beta) * ratio_multiplier(E), and its inverse
CoefficientRatio ratio_map(const CoefficientRatio& r, EnergyParam e, Direction dir);

}  // namespace ihodual
