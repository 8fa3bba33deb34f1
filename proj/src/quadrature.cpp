#include "quadrature.hpp"

#include "ihodual/errors.hpp"

#include <vector>

namespace ihodual::detail {
namespace {

struct Rule {
    std::vector<qreal> x, w;  // on [-1, 1]
};

Rule make_legendre(int n)
{
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        qreal x = cosq(q_pi * (qreal(i) + qreal(0.75)) / (qreal(n) + qreal(0.5)));
        qreal dp = 0;
        for (int it = 0; it < 100; ++it) {
            qreal p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const qreal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const qreal dx = p1 / dp;
            x -= dx;
            if (fabsq(dx) < qreal(1e-40)) break;
        }
        {
            qreal p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const qreal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        const qreal w = 2 / ((1 - x * x) * dp * dp);
        r.x[i] = -x;
        r.w[i] = w;
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const Rule& rule_lo()
{
    static const Rule r = make_legendre(20);
    return r;
}

const Rule& rule_hi()
{
    static const Rule r = make_legendre(30);
    return r;
}

struct Integrand {
    qcomplex p;
    qreal A;
    qcomplex c;
    qcomplex operator()(qreal u) const
    {
        const qcomplex e = p * logq(u) + c * u - A * u * u;
        return exp(e);
    }
    qreal log_mag(qreal u) const { return p.re * logq(u) + c.re * u - A * u * u; }
};

qcomplex apply(const Rule& r, const Integrand& f, qreal a, qreal b)
{
    const qreal mid = (a + b) / 2, half = (b - a) / 2;
    qcomplex s(0);
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

// Int_0^u0 u^p exp(c u - A u^2) du from the Taylor coefficients g_k of the
// exponential: (k+1) g_{k+1} = c g_k - 2A g_{k-1}
QuadResult origin_series(const qcomplex& p, qreal A, const qcomplex& c, qreal u0)
{
    qcomplex gm1(0), g(1);
    qcomplex upow(1);
    qcomplex sum = qcomplex(1) / (p + qreal(1));
    qreal l1 = abs(sum);
    int small = 0;
    for (int k = 0; k < 5000; ++k) {
        const qcomplex gn = (c * g - qreal(2) * A * gm1) / qreal(k + 1);
        gm1 = g;
        g = gn;
        upow = upow * u0;
        const qcomplex t = g * upow / (p + qreal(k + 2));
        sum += t;
        const qreal at = abs(t);
        l1 += at;
        if (k > 4 && at <= qreal(1e-38) * abs(sum)) {
            if (++small >= 3) {
                const qcomplex pre = exp((p + qreal(1)) * logq(u0));
                return {pre * sum, abs(pre) * 16 * q_eps * l1, 0};
            }
        } else {
            small = 0;
        }
    }
    throw QuadratureError("power-Gauss integral: origin series did not converge");
}

}  // namespace

QuadResult integrate_power_gauss(const qcomplex& p, qreal A, const qcomplex& c)
{
    if (!(A > 0)) throw QuadratureError("power-Gauss integral: Gaussian coefficient must be positive");
    if (!(p.re > -1)) throw QuadratureError("power-Gauss integral: endpoint singularity not integrable");

    const qreal ac = abs(c);
    const qreal u0 = ac <= 20 ? qreal(1) : qreal(20) / ac;
    QuadResult head = origin_series(p, A, c, u0);

    const Integrand f{p, A, c};
    // peak of |f| on [u0, inf)
    qreal upk = u0;
    {
        const qreal disc = c.re * c.re + 8 * A * p.re;
        if (disc >= 0) upk = fmaxq(u0, (c.re + sqrtq(disc)) / (4 * A));
    }
    const qreal emax = f.log_mag(upk);
    const qreal step = fmaxq(qreal(0.5), qreal(0.5) / sqrtq(A));
    qreal U = upk + step;
    while (f.log_mag(U) > emax - 95) U += step;

    const qreal width_scale = fmaxq(qreal(1), 1 / sqrtq(A));
    const qreal tol = qreal(1e-31) * expq(emax) * width_scale + qreal(1e-31) * abs(head.value);

    // initial panels resolve the local oscillation rate
    std::vector<std::pair<qreal, qreal>> stack;
    {
        std::vector<std::pair<qreal, qreal>> fwd;
        qreal x = u0;
        while (x < U) {
            const qreal rate = fabsq(c.im) + fabsq(p.im) / x + 1;
            const qreal w = fminq(qreal(1), qreal(6) / rate);
            const qreal b = fminq(U, x + w);
            fwd.push_back({x, b});
            x = b;
        }
        for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) stack.push_back(*it);
    }

    QuadResult out;
    out.value = head.value;
    out.abs_error = head.abs_error;
    const qreal total = U - u0;
    int panels = 0;
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const qcomplex lo = apply(rule_lo(), f, a, b);
        const qcomplex hi = apply(rule_hi(), f, a, b);
        const qreal diff = abs(hi - lo);
        if (diff <= tol * (b - a) / total || b - a < qreal(1e-12)) {
            out.value += hi;
            out.abs_error += diff;
            ++panels;
        } else {
            const qreal m = (a + b) / 2;
            stack.push_back({m, b});
            stack.push_back({a, m});
        }
        if (panels + stack.size() > 200000)
            throw QuadratureError("power-Gauss integral: panel budget exhausted");
    }
    // Gaussian tail beyond U, bounded by |f(U)| / (2AU - Re c - Re p / U)
    const qreal slope = 2 * A * U - c.re - p.re / U;
    out.abs_error += expq(f.log_mag(U)) / fmaxq(slope, qreal(1e-3));
    out.panels = panels;
    return out;
}

}  // namespace ihodual::detail
