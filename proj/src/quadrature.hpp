#pragma once

#include "quad.hpp"

namespace ihodual::detail {

struct QuadResult {
    qcomplex value;
    qreal abs_error = 0;
    int panels = 0;
};

// Int_0^inf u^p exp(-A u^2 + c u) du for A > 0 and Re p > -1.
// [0, u0] is integrated term by term from the Taylor series of the Gaussian
// factor; the rest by adaptive Gauss-Legendre panels in quad precision.
// Throws QuadratureError when the panel budget is exhausted.
QuadResult integrate_power_gauss(const qcomplex& p, qreal A, const qcomplex& c);

}  // namespace ihodual::detail
