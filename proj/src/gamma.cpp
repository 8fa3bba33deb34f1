#include "ihodual/complex_special.hpp"
#include "ihodual/errors.hpp"
#include "special_internal.hpp"

#include <cmath>

namespace ihodual {
namespace detail {

namespace {

// B_2k as exact fractions, k = 1..15
constexpr long long bern_num[] = {1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611,
                                  854513, -236364091, 8553103, -23749461029LL,
                                  8615841276005LL};
constexpr long long bern_den[] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330,
                                  138, 2730, 6, 870, 14322};

qcomplex stirling(const qcomplex& w)
{
    const qreal half_log_2pi = logq(2 * q_pi) / 2;
    qcomplex s = (w - qreal(0.5)) * log(w) - w + half_log_2pi;
    const qcomplex inv = qcomplex(1) / w;
    const qcomplex inv2 = inv * inv;
    qcomplex p = inv;
    for (int k = 1; k <= 15; ++k) {
        const qreal c = qreal(bern_num[k - 1]) /
                        (qreal(bern_den[k - 1]) * qreal(2 * k) * qreal(2 * k - 1));
        s += c * p;
        p *= inv2;
    }
    return s;
}

}  // namespace

bool is_nonpositive_integer(const qcomplex& z)
{
    return z.im == 0 && z.re <= 0 && floorq(z.re) == z.re;
}

qcomplex log_gamma_q(const qcomplex& z)
{
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at a nonpositive integer");
    if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
    if (z.re < -1e5) throw AccuracyLoss("log_gamma: Re z below -1e5 is not supported");

    // upward shift; a sum of principal logs keeps the continuation analytic
    // off the negative real axis
    qcomplex w = z;
    qreal mag = 0, ang = 0;
    while (w.re < 0 || abs(w) < 32) {
        mag += logq(abs(w));
        ang += arg(w);
        w += qcomplex(1);
    }
    const qcomplex shift(mag, ang);
    return stirling(w) - shift;
}

qcomplex rgamma_q(const qcomplex& z)
{
    if (is_nonpositive_integer(z)) return qcomplex(0);
    return exp(-log_gamma_q(z));
}

}  // namespace detail

cplx log_gamma(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    return detail::log_gamma_q(detail::qcomplex(z)).to_double();
}

cplx gamma(cplx z)
{
    const cplx v = std::exp(log_gamma(z));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("gamma: result overflows double");
    return v;
}

cplx rgamma(cplx z)
{
    const detail::qcomplex q(z);
    if (detail::is_nonpositive_integer(q)) return 0.0;
    return detail::rgamma_q(q).to_double();
}

}  // namespace ihodual
