// Minimal complex arithmetic on __float128. Internal only.
#pragma once

#include <complex>
#include <quadmath.h>

namespace ihodual::detail {

using qreal = __float128;

inline constexpr qreal q_eps = FLT128_EPSILON;
inline const qreal q_pi = M_PIq;

struct qcomplex {
    qreal re = 0;
    qreal im = 0;

    constexpr qcomplex() = default;
    constexpr qcomplex(qreal r) : re(r) {}
    constexpr qcomplex(qreal r, qreal i) : re(r), im(i) {}
    explicit qcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_double() const { return {double(re), double(im)}; }

    qcomplex& operator+=(const qcomplex& o) { re += o.re; im += o.im; return *this; }
    qcomplex& operator-=(const qcomplex& o) { re -= o.re; im -= o.im; return *this; }
    qcomplex& operator*=(const qcomplex& o)
    {
        qreal r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    qcomplex& operator/=(const qcomplex& o);
};

inline qcomplex operator+(qcomplex a, const qcomplex& b) { return a += b; }
inline qcomplex operator-(qcomplex a, const qcomplex& b) { return a -= b; }
inline qcomplex operator*(qcomplex a, const qcomplex& b) { return a *= b; }
inline qcomplex operator-(const qcomplex& a) { return {-a.re, -a.im}; }
inline qcomplex operator*(qreal s, const qcomplex& a) { return {s * a.re, s * a.im}; }
inline qcomplex operator*(const qcomplex& a, qreal s) { return {s * a.re, s * a.im}; }
inline qcomplex operator/(const qcomplex& a, qreal s) { return {a.re / s, a.im / s}; }

// Smith's algorithm
inline qcomplex& qcomplex::operator/=(const qcomplex& o)
{
    qreal r, d, nr, ni;
    if (fabsq(o.re) >= fabsq(o.im)) {
        r = o.im / o.re;
        d = o.re + o.im * r;
        nr = (re + im * r) / d;
        ni = (im - re * r) / d;
    } else {
        r = o.re / o.im;
        d = o.re * r + o.im;
        nr = (re * r + im) / d;
        ni = (im * r - re) / d;
    }
    re = nr;
    im = ni;
    return *this;
}
inline qcomplex operator/(qcomplex a, const qcomplex& b) { return a /= b; }

inline qreal abs(const qcomplex& z) { return hypotq(z.re, z.im); }
inline qreal arg(const qcomplex& z) { return atan2q(z.im, z.re); }
inline qcomplex conj(const qcomplex& z) { return {z.re, -z.im}; }
inline bool is_zero(const qcomplex& z) { return z.re == 0 && z.im == 0; }
inline bool is_finite(const qcomplex& z) { return finiteq(z.re) && finiteq(z.im); }

inline qcomplex polar(qreal r, qreal phi)
{
    qreal s, c;
    sincosq(phi, &s, &c);
    return {r * c, r * s};
}

inline qcomplex exp(const qcomplex& z) { return polar(expq(z.re), z.im); }

inline qcomplex log(const qcomplex& z) { return {logq(abs(z)), arg(z)}; }

inline qcomplex sqrt(const qcomplex& z)
{
    return polar(sqrtq(abs(z)), arg(z) / 2);
}

// principal branch
inline qcomplex pow(const qcomplex& z, const qcomplex& w)
{
    if (is_zero(z)) return {0, 0};
    return exp(w * log(z));
}

}  // namespace ihodual::detail
