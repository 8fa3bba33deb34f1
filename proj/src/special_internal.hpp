#pragma once

#include "quad.hpp"

namespace ihodual::detail {

qcomplex log_gamma_q(const qcomplex& z);

// zero at the poles of Gamma
qcomplex rgamma_q(const qcomplex& z);

bool is_nonpositive_integer(const qcomplex& z);

struct QSum {
    qcomplex value;
    qreal abs_error = 0;
};

// Taylor series of M(a, b; z) summed in quad precision. abs_error bounds the
// accumulated rounding from the size of the largest terms.
QSum kummer_series_q(const qcomplex& a, const qcomplex& b, const qcomplex& z);

}  // namespace ihodual::detail
