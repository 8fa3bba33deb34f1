#include "ihodual/complex_special.hpp"
#include "ihodual/errors.hpp"
#include "special_internal.hpp"

#include <cmath>

namespace ihodual {
namespace detail {

QSum kummer_series_q(const qcomplex& a, const qcomplex& b, const qcomplex& z)
{
    if (is_nonpositive_integer(b)) throw PoleError("kummer_m: b is a nonpositive integer");

    qcomplex term(1), sum(1);
    qreal l1 = 1;
    const qreal za = abs(z);
    const qreal aa = abs(a) + abs(b);
    const int n_max = 200000;
    int small_run = 0;
    for (int n = 0; n < n_max; ++n) {
        term *= (a + qreal(n)) / (b + qreal(n)) * z / qreal(n + 1);
        if (is_zero(term)) return {sum, 8 * q_eps * l1};  // a a nonpositive integer
        sum += term;
        const qreal t = abs(term);
        l1 += t;
        // past the turnover the terms decrease monotonically
        if (qreal(n) > za + aa + 2 && t <= qreal(1e-36) * abs(sum)) {
            if (++small_run >= 3) {
                const qreal err = 8 * q_eps * sqrtq(qreal(n + 1)) * l1 + 2 * t;
                return {sum, err};
            }
        } else {
            small_run = 0;
        }
        if (!finiteq(l1)) break;
    }
    throw AccuracyLoss("kummer_m: series did not converge");
}

}  // namespace detail

cplx kummer_m(cplx a, cplx b, cplx z)
{
    using namespace detail;
    const qcomplex qa(a), qb(b), qz(z);
    if (is_nonpositive_integer(qb)) throw PoleError("kummer_m: b is a nonpositive integer");

    // direct series, and Kummer's transformation e^z M(b-a, b, -z) which
    // avoids cancellation for Re z < 0
    QSum direct = kummer_series_q(qa, qb, qz);
    qcomplex best = direct.value;
    qreal best_err = direct.abs_error;
    if (z.real() < 0) {
        QSum t = kummer_series_q(qb - qa, qb, -qz);
        const qcomplex ez = exp(qz);
        const qreal terr = abs(ez) * t.abs_error;
        if (terr < best_err) {
            best = ez * t.value;
            best_err = terr;
        }
    }
    const qreal mag = abs(best);
    if (mag == 0) {
        if (best_err > qreal(1e-300)) throw AccuracyLoss("kummer_m: result lost to cancellation");
        return 0.0;
    }
    if (best_err > qreal(1e-10) * mag) throw AccuracyLoss("kummer_m: cancellation exceeds tolerance");
    const cplx out = best.to_double();
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw DomainError("kummer_m: result overflows double");
    return out;
}

}  // namespace ihodual
