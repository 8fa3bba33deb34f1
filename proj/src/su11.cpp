#include "ihodual/errors.hpp"
#include "ihodual/states.hpp"

#include <algorithm>
#include <cmath>

namespace ihodual {

namespace {

const cplx I(0.0, 1.0);

// Samples on a uniform grid; entries closer than `margin` to either end are
// not valid.
struct Field {
    std::vector<cplx> v;
    std::vector<double> x;
    double h;
    int margin = 0;
};

Field d1(const Field& f)
{
    Field g{std::vector<cplx>(f.v.size()), f.x, f.h, f.margin + 2};
    const int n = int(f.v.size());
    for (int i = g.margin; i < n - g.margin; ++i)
        g.v[i] = (-f.v[i + 2] + 8.0 * f.v[i + 1] - 8.0 * f.v[i - 1] + f.v[i - 2]) / (12.0 * f.h);
    return g;
}

Field d2(const Field& f)
{
    Field g{std::vector<cplx>(f.v.size()), f.x, f.h, f.margin + 2};
    const int n = int(f.v.size());
    for (int i = g.margin; i < n - g.margin; ++i)
        g.v[i] = (-f.v[i + 2] + 16.0 * f.v[i + 1] - 30.0 * f.v[i] + 16.0 * f.v[i - 1] - f.v[i - 2]) /
                 (12.0 * f.h * f.h);
    return g;
}

Field apply_k(int k, const Field& f)
{
    Field g;
    if (k == 3) {
        g = d1(f);
        for (size_t i = 0; i < g.v.size(); ++i) g.v[i] = -I * (f.x[i] * g.v[i] + 0.5 * f.v[i]);
    } else {
        g = d2(f);
        const double s = k == 1 ? -1.0 : 1.0;
        for (size_t i = 0; i < g.v.size(); ++i) g.v[i] = 0.5 * (-g.v[i] + s * f.x[i] * f.x[i] * f.v[i]);
    }
    return g;
}

Field combine(const Field& a, cplx ca, const Field& b, cplx cb)
{
    Field g{std::vector<cplx>(a.v.size()), a.x, a.h, std::max(a.margin, b.margin)};
    for (size_t i = 0; i < g.v.size(); ++i) g.v[i] = ca * a.v[i] + cb * b.v[i];
    return g;
}

Field commutator(int a, int b, const Field& f)
{
    return combine(apply_k(a, apply_k(b, f)), 1.0, apply_k(b, apply_k(a, f)), -1.0);
}

void indices(GeneratorPair p, int& a, int& b, int& c)
{
    switch (p) {
    case GeneratorPair::K1K2: a = 1, b = 2, c = 3; return;
    case GeneratorPair::K2K3: a = 2, b = 3, c = 1; return;
    case GeneratorPair::K3K1: a = 3, b = 1, c = 2; return;
    }
}

Field make_field(const std::vector<cplx>& test, const UniformGrid& grid, int stride)
{
    if (grid.n < 2 || !(grid.max > grid.min)) throw DomainError("su(1,1): invalid grid");
    if (int(test.size()) != grid.n) throw DomainError("su(1,1): test function size does not match grid");
    Field f;
    f.h = grid.step() * stride;
    for (int i = 0; i < grid.n; i += stride) {
        f.v.push_back(test[i]);
        f.x.push_back(grid.at(i));
    }
    return f;
}

}  // namespace

cplx su11_structure_constant(GeneratorPair pair, Su11Constants which)
{
    const double scale = which == Su11Constants::Stated ? 1.0 : 2.0;
    switch (pair) {
    case GeneratorPair::K1K2: return -I * scale;
    case GeneratorPair::K2K3: return which == Su11Constants::Stated ? I : -2.0 * I;
    case GeneratorPair::K3K1: return I * scale;
    }
    return 0.0;
}

double su11_commutator_residual(GeneratorPair pair, const std::vector<cplx>& test, const UniformGrid& grid,
                                Su11Constants which, double grid_tolerance)
{
    int a = 0, b = 0, c = 0;
    indices(pair, a, b, c);
    const Field f = make_field(test, grid, 1);
    if (int(f.v.size()) < 20) throw GridTooCoarse("su(1,1): need at least 20 grid points");
    const Field comm = commutator(a, b, f);
    const Field kc = apply_k(c, f);
    const cplx fc = su11_structure_constant(pair, which);

    // step-doubling estimate on the even points
    const Field fc2 = make_field(test, grid, 2);
    const Field comm2 = commutator(a, b, fc2);
    const int n = int(f.v.size());
    const int m2 = comm2.margin;
    double disc = 0.0;
    for (int j = m2; j < int(fc2.v.size()) - m2; ++j) {
        const int i = 2 * j;
        if (i < comm.margin || i >= n - comm.margin) continue;
        disc = std::max(disc, std::abs(comm.v[i] - comm2.v[j]) / 15.0);
    }
    if (disc > grid_tolerance) throw GridTooCoarse("su(1,1): discretisation error estimate above tolerance");

    double r = 0.0;
    for (int i = comm.margin; i < n - comm.margin; ++i) r = std::max(r, std::abs(comm.v[i] - fc * kc.v[i]));
    return r;
}

double su11_casimir_residual(int k, const std::vector<cplx>& test, const UniformGrid& grid, Su11Constants which)
{
    if (k < 1 || k > 3) throw DomainError("su(1,1): generator index must be 1, 2 or 3");
    const Field f = make_field(test, grid, 1);
    // Stated: K3^2 - K1^2 - K2^2. Realized: K1^2 - K2^2 + K3^2, K2 being the compact generator
    const double s1 = which == Su11Constants::Stated ? -1.0 : 1.0;
    const double s3 = 1.0, s2 = -1.0;
    auto casimir = [&](const Field& g) {
        const Field c3 = apply_k(3, apply_k(3, g));
        const Field c1 = apply_k(1, apply_k(1, g));
        const Field c2 = apply_k(2, apply_k(2, g));
        return combine(combine(c3, s3, c1, s1), 1.0, c2, s2);
    };
    const Field ck = casimir(apply_k(k, f));
    const Field kc = apply_k(k, casimir(f));
    const int n = int(f.v.size());
    const int m = std::max(ck.margin, kc.margin);
    double num = 0.0, den = 0.0;
    for (int i = m; i < n - m; ++i) {
        num = std::max(num, std::abs(ck.v[i] - kc.v[i]));
        den = std::max(den, std::abs(ck.v[i]));
    }
    return den > 0 ? num / den : 0.0;
}

}  // namespace ihodual
