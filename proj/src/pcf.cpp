#include "ihodual/complex_special.hpp"
#include "ihodual/errors.hpp"
#include "special_internal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ihodual {

const char* to_string(PcfRoute r)
{
    switch (r) {
    case PcfRoute::Series: return "series";
    case PcfRoute::Asymptotic: return "asymptotic";
    case PcfRoute::OdeForward: return "ode-forward";
    case PcfRoute::OdeBackward: return "ode-backward";
    }
    return "?";
}

namespace detail {
namespace {

struct Approx {
    qcomplex value;
    qreal abs_err = 0;
};

qreal rel(const Approx& a)
{
    const qreal m = abs(a.value);
    if (m == 0) return a.abs_err == 0 ? 0 : qreal(1e300);
    return a.abs_err / m;
}

// D_nu(z) = 2^(nu/2) e^(-z^2/4) [ sqrt(pi)/G((1-nu)/2) M(-nu/2, 1/2, z^2/2)
//                                - sqrt(2 pi) z / G(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]
Approx series_d(const qcomplex& nu, const qcomplex& z)
{
    const qcomplex x = z * z / qreal(2);
    const QSum m1 = kummer_series_q(-nu / qreal(2), qreal(0.5), x);
    const QSum m2 = kummer_series_q((qreal(1) - nu) / qreal(2), qreal(1.5), x);
    const qcomplex a = sqrtq(q_pi) * rgamma_q((qreal(1) - nu) / qreal(2));
    const qcomplex b = sqrtq(2 * q_pi) * rgamma_q(-nu / qreal(2));
    const qcomplex pre = exp(nu * (logq(qreal(2)) / 2) - z * z / qreal(4));
    const qcomplex t1 = a * m1.value;
    const qcomplex t2 = b * z * m2.value;
    Approx out;
    out.value = pre * (t1 - t2);
    const qreal ap = abs(pre);
    out.abs_err = ap * (abs(a) * m1.abs_error + abs(b * z) * m2.abs_error) +
                  ap * (abs(t1) + abs(t2)) * qreal(1e-31);
    return out;
}

// sum_n term_n with term_{n+1} = term_n * f(n) / ((n+1) * 2 z^2), truncated at
// the smallest term; returns the sum and the smallest term as error.
template <class F>
Approx asymptotic_sum(const qcomplex& z, F f)
{
    const qcomplex w = qreal(2) * z * z;
    qcomplex term(1), sum(1);
    qreal prev = 1;
    for (int n = 0; n < 400; ++n) {
        const qcomplex fn = f(n);
        if (is_zero(fn)) return {sum, 0};
        term *= fn / (qreal(n + 1) * w);
        const qreal t = abs(term);
        if (t > prev) return {sum, prev};
        sum += term;
        prev = t;
        if (t <= qreal(1e-36) * abs(sum)) return {sum, t};
    }
    return {sum, prev};
}

Approx asymptotic_d(const qcomplex& nu, const qcomplex& z)
{
    const qreal az = abs(z);
    if (az == 0) return {qcomplex(0), qreal(1e300)};
    const qcomplex lz = log(z);
    const qreal ph = lz.im;

    const Approx s1 = asymptotic_sum(z, [&](int n) {
        const qreal k = qreal(2 * n);
        return -((-nu + k) * (-nu + k + qreal(1)));
    });
    const qcomplex main = exp(nu * lz - z * z / qreal(4));
    Approx out{main * s1.value, abs(main) * s1.abs_err};

    const qreal absph = fabsq(ph);
    const qreal band = fmaxq(qreal(0.1), 2 / az);
    const bool beyond = absph > q_pi / 2;
    const bool near_stokes = fabsq(absph - q_pi / 2) < band;
    if (beyond || near_stokes) {
        const Approx s2 = asymptotic_sum(z, [&](int n) {
            const qreal k = qreal(2 * n);
            return (nu + qreal(1) + k) * (nu + qreal(2) + k);
        });
        const qreal sgn = ph >= 0 ? qreal(1) : qreal(-1);
        const qcomplex e_pi_nu = exp(qcomplex(0, sgn * q_pi) * nu);
        const qcomplex pref = sqrtq(2 * q_pi) * rgamma_q(-nu) * e_pi_nu *
                              exp(z * z / qreal(4) - (nu + qreal(1)) * lz);
        const qcomplex second = pref * s2.value;
        if (beyond) {
            out.value -= second;
            out.abs_err += abs(pref) * s2.abs_err;
        }
        if (near_stokes) out.abs_err += abs(second);
    }
    return out;
}

struct Transfer {
    qcomplex m[2][2];
    int steps = 0;
};

// fundamental matrix of y'' = (z^2/4 - nu - 1/2) y along the segment za -> zb
Transfer transfer(const qcomplex& nu, const qcomplex& za, const qcomplex& zb)
{
    Transfer t;
    t.m[0][0] = qreal(1);
    t.m[1][1] = qreal(1);
    const qcomplex d = zb - za;
    const qreal total = abs(d);
    if (total == 0) return t;
    const qcomplex dir = d / total;
    qreal pos = 0;
    std::vector<qcomplex> c0(400), c1(400);
    while (pos < total) {
        const qcomplex z0 = za + dir * pos;
        const qcomplex q0 = z0 * z0 / qreal(4) - nu - qreal(0.5);
        const qreal scale = sqrtq(abs(q0) + abs(z0) / 2 + 1);
        const qreal len = fminq(total - pos, qreal(1.5) / scale);
        const qcomplex h = dir * len;
        const qcomplex half_z0 = z0 / qreal(2);
        // basis solutions with (y, y') = (1, 0) and (0, 1) at z0
        qcomplex y[2], yp[2];
        for (int b = 0; b < 2; ++b) {
            std::vector<qcomplex>& a = b == 0 ? c0 : c1;
            a[0] = b == 0 ? qcomplex(1) : qcomplex(0);
            a[1] = b == 0 ? qcomplex(0) : qcomplex(1);
            qcomplex hp(1), val = a[0], der(0);
            // powers: val += a_k h^k, der += k a_k h^(k-1)
            qcomplex hk1(1);  // h^(k-1)
            int small = 0;
            for (int k = 1; k < 398; ++k) {
                if (k >= 2) {
                    qcomplex ak = q0 * a[k - 2];
                    if (k >= 3) ak += half_z0 * a[k - 3];
                    if (k >= 4) ak += a[k - 4] / qreal(4);
                    a[k] = ak / qreal(k * (k - 1));
                }
                hp = hp * h;
                const qcomplex tv = a[k] * hp;
                const qcomplex td = qreal(k) * a[k] * hk1;
                hk1 = hp;
                val += tv;
                der += td;
                if (abs(tv) + abs(td) * len <= qreal(1e-38) * (abs(val) + abs(der) * len + 1e-300)) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
            y[b] = val;
            yp[b] = der;
        }
        qcomplex n[2][2];
        for (int c = 0; c < 2; ++c) {
            n[0][c] = y[0] * t.m[0][c] + y[1] * t.m[1][c];
            n[1][c] = yp[0] * t.m[0][c] + yp[1] * t.m[1][c];
        }
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) t.m[r][c] = n[r][c];
        pos += len;
        ++t.steps;
    }
    return t;
}

Approx propagate(const Transfer& t, const Approx& y0, const Approx& yp0)
{
    Approx out;
    out.value = t.m[0][0] * y0.value + t.m[0][1] * yp0.value;
    const qreal a0 = abs(t.m[0][0]), a1 = abs(t.m[0][1]);
    out.abs_err = a0 * y0.abs_err + a1 * yp0.abs_err +
                  qreal(64) * qreal(t.steps + 1) * q_eps * (a0 * abs(y0.value) + a1 * abs(yp0.value));
    return out;
}

// (y, y') from D_nu and D_{nu+1} at the same point
std::pair<Approx, Approx> with_derivative(const Approx& d0, const Approx& d1, const qcomplex& z)
{
    Approx yp;
    yp.value = z / qreal(2) * d0.value - d1.value;
    yp.abs_err = abs(z) / 2 * d0.abs_err + d1.abs_err;
    return {d0, yp};
}

struct Candidate {
    Approx a;
    PcfRoute route;
};

}  // namespace
}  // namespace detail

PcfEvaluation pcf_d_eval(cplx s, cplx z)
{
    using namespace detail;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || !std::isfinite(z.real()) ||
        !std::isfinite(z.imag()))
        throw DomainError("pcf_d: non-finite argument");

    const qcomplex nu(s), qz(z);
    const qreal az = abs(qz);
    const qreal anu = abs(nu);

    std::vector<Candidate> cands;
    auto best_rel = [&]() {
        qreal b = qreal(1e300);
        for (const auto& c : cands) b = fminq(b, rel(c.a));
        return b;
    };

    if (az <= 14) cands.push_back({series_d(nu, qz), PcfRoute::Series});
    const bool band = az >= 5 && az <= 7;
    if (best_rel() > qreal(1e-13) || band) {
        if (az >= 2) cands.push_back({asymptotic_d(nu, qz), PcfRoute::Asymptotic});
    }
    if (best_rel() > qreal(1e-12)) {
        // Taylor transport from accurate start values; besides the radial
        // paths, starts spread around the circles are tried because the
        // error amplification depends on the direction of travel
        const qreal ph = arg(qz);
        const qreal r0 = 4;
        const qreal big = fmaxq(qreal(12), qreal(3.2) * sqrtq(anu) + 4);
        auto forward = [&](const qcomplex& zs) {
            const auto [y0, yp0] = with_derivative(series_d(nu, zs), series_d(nu + qreal(1), zs), zs);
            cands.push_back({propagate(transfer(nu, zs, qz), y0, yp0), PcfRoute::OdeForward});
        };
        auto backward = [&](const qcomplex& zb) {
            const auto [y0, yp0] =
                with_derivative(asymptotic_d(nu, zb), asymptotic_d(nu + qreal(1), zb), zb);
            cands.push_back({propagate(transfer(nu, zb, qz), y0, yp0), PcfRoute::OdeBackward});
        };
        if (az > r0) forward(polar(r0, ph));
        if (az < big) backward(polar(big, ph));
        if (best_rel() > qreal(1e-10)) {
            for (int k = 1; k < 8; ++k) {
                const qreal phk = ph + qreal(k) * q_pi / 4;
                if (az > r0) forward(polar(r0, phk));
                if (az < big) backward(polar(big, phk));
            }
        }
    }
    if (cands.empty()) throw AccuracyLoss("pcf_d: no evaluation route applies");

    const Candidate* best = &cands.front();
    for (const auto& c : cands)
        if (rel(c.a) < rel(best->a)) best = &c;

    const qreal tol = qreal(pcf_tolerance);
    for (const auto& c : cands) {
        if (&c == best || rel(c.a) > qreal(1e-9)) continue;
        const qreal diff = abs(c.a.value - best->a.value);
        const qreal allowed = tol * abs(best->a.value) + 10 * (c.a.abs_err + best->a.abs_err);
        if (diff > allowed)
            throw AccuracyLoss(std::string("pcf_d: routes ") + to_string(c.route) + " and " +
                               to_string(best->route) + " disagree");
    }
    const qreal r = rel(best->a);
    if (r > tol)
        throw AccuracyLoss("pcf_d: best route estimate " + std::to_string(double(r)) +
                           " exceeds tolerance");

    PcfEvaluation out;
    out.value = best->a.value.to_double();
    out.rel_error = double(r);
    out.route = best->route;
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw DomainError("pcf_d: result overflows double");
    return out;
}

cplx pcf_d(cplx s, cplx z) { return pcf_d_eval(s, z).value; }

cplx pcf_d_prime(cplx s, cplx z) { return 0.5 * z * pcf_d(s, z) - pcf_d(s + 1.0, z); }

}  // namespace ihodual
