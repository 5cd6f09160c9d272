#include "phasewave/interp.hpp"

#include "phasewave/errors.hpp"

#include <cmath>

namespace phasewave {

namespace {

using cplx = std::complex<double>;

// Thomas solve of the B-spline collocation system
//   (1/6) c[k-1] + (4/6) c[k] + (1/6) c[k+1] = f[k]
// with natural ends. The natural condition eliminates the virtual nodes as
// c[-1] = 2c[0] - c[1], which collapses the first equation to c[0] = f[0]
// (and symmetrically at the far end), leaving a strictly diagonally
// dominant interior system.
void prefilter_natural(cplx* c, int n, int stride) {
    if (n < 4) throw ShapeError("spline axis needs at least 4 samples");
    auto at = [&](int k) -> cplx& { return c[static_cast<std::ptrdiff_t>(k) * stride]; };

    int m = n - 2;
    std::vector<cplx> d(m);
    std::vector<double> diag(m);
    for (int k = 0; k < m; ++k) d[k] = at(k + 1);
    d[0] -= at(0) / 6.0;
    d[m - 1] -= at(n - 1) / 6.0;

    diag[0] = 4.0 / 6.0;
    for (int k = 1; k < m; ++k) {
        double w = (1.0 / 6.0) / diag[k - 1];
        diag[k] = 4.0 / 6.0 - w * (1.0 / 6.0);
        d[k] -= w * d[k - 1];
    }
    d[m - 1] /= diag[m - 1];
    for (int k = m - 2; k >= 0; --k) d[k] = (d[k] - (1.0 / 6.0) * d[k + 1]) / diag[k];

    for (int k = 0; k < m; ++k) at(k + 1) = d[k];
}

// Cyclic variant via the Sherman-Morrison rank-one correction.
void prefilter_periodic(cplx* c, int n, int stride) {
    if (n < 4) throw ShapeError("spline axis needs at least 4 samples");
    auto at = [&](int k) -> cplx& { return c[static_cast<std::ptrdiff_t>(k) * stride]; };

    const double off = 1.0 / 6.0, mid = 4.0 / 6.0;
    const double gamma = -mid;

    std::vector<cplx> r(n);
    for (int k = 0; k < n; ++k) r[k] = at(k);

    std::vector<cplx> u(n, cplx(0.0));
    u[0] = gamma;
    u[n - 1] = off;

    const double first = mid - gamma;
    const double last = mid - off * off / gamma;
    std::vector<double> dg(n);
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<cplx>& d = pass == 0 ? r : u;
        dg[0] = first;
        for (int k = 1; k < n; ++k) {
            double base = (k == n - 1) ? last : mid;
            double w = off / dg[k - 1];
            dg[k] = base - w * off;
            d[k] -= w * d[k - 1];
        }
        d[n - 1] /= dg[n - 1];
        for (int k = n - 2; k >= 0; --k) d[k] = (d[k] - off * d[k + 1]) / dg[k];
    }

    cplx factor = (r[0] + off * r[n - 1] / gamma) /
                  (1.0 + u[0] + off * u[n - 1] / gamma);
    for (int k = 0; k < n; ++k) at(k) = r[k] - factor * u[k];
}

inline void bspline_weights(double w, double out[4]) {
    double w2 = w * w, w3 = w2 * w;
    out[0] = (1.0 - 3.0 * w + 3.0 * w2 - w3) / 6.0;
    out[1] = (4.0 - 6.0 * w2 + 3.0 * w3) / 6.0;
    out[2] = (1.0 + 3.0 * w + 3.0 * w2 - 3.0 * w3) / 6.0;
    out[3] = w3 / 6.0;
}

inline int wrap_index(int k, int n) {
    k %= n;
    return k < 0 ? k + n : k;
}

} // namespace

BicubicSpline::BicubicSpline(const std::vector<cplx>& samples,
                             const AxisSpec& axis0, const AxisSpec& axis1)
    : a0_(axis0), a1_(axis1), coef_(samples) {
    if (samples.size() != static_cast<std::size_t>(axis0.n) * axis1.n)
        throw ShapeError("spline: sample count does not match axis sizes");
    // axis 1 first (contiguous rows), then axis 0 (strided columns)
    for (int i = 0; i < a0_.n; ++i) {
        cplx* row = coef_.data() + static_cast<std::ptrdiff_t>(i) * a1_.n;
        if (a1_.periodic) prefilter_periodic(row, a1_.n, 1);
        else prefilter_natural(row, a1_.n, 1);
    }
    for (int j = 0; j < a1_.n; ++j) {
        cplx* col = coef_.data() + j;
        if (a0_.periodic) prefilter_periodic(col, a0_.n, a1_.n);
        else prefilter_natural(col, a0_.n, a1_.n);
    }
}

std::complex<double> BicubicSpline::fetch(int i, int j) const {
    // Resolve at most one virtual layer per side on truncated axes via the
    // natural-end extrapolation c[-1] = 2c[0] - c[1].
    auto resolve = [](int k, int n, bool periodic, int& k0, int& k1, double& s0, double& s1) {
        if (periodic) { k0 = wrap_index(k, n); k1 = k0; s0 = 1.0; s1 = 0.0; return; }
        if (k < 0) { k0 = 0; k1 = 1; s0 = 2.0; s1 = -1.0; return; }
        if (k >= n) { k0 = n - 1; k1 = n - 2; s0 = 2.0; s1 = -1.0; return; }
        k0 = k; k1 = k; s0 = 1.0; s1 = 0.0;
    };
    int i0, i1, j0, j1;
    double si0, si1, sj0, sj1;
    resolve(i, a0_.n, a0_.periodic, i0, i1, si0, si1);
    resolve(j, a1_.n, a1_.periodic, j0, j1, sj0, sj1);

    auto raw = [&](int a, int b) { return coef_[static_cast<std::size_t>(a) * a1_.n + b]; };
    cplx v = si0 * (sj0 * raw(i0, j0) + sj1 * raw(i0, j1)) +
             si1 * (sj0 * raw(i1, j0) + sj1 * raw(i1, j1));
    return v;
}

std::complex<double> BicubicSpline::eval(double x0, double x1, bool* outside) const {
    if (outside) *outside = false;

    double u = (x0 - a0_.origin) / a0_.step;
    double v = (x1 - a1_.origin) / a1_.step;

    if (!a0_.periodic && (u < 0.0 || u > a0_.n - 1)) {
        if (outside) *outside = true;
        return {0.0, 0.0};
    }
    if (!a1_.periodic && (v < 0.0 || v > a1_.n - 1)) {
        if (outside) *outside = true;
        return {0.0, 0.0};
    }

    if (a0_.periodic) {
        u = std::fmod(u, a0_.n);
        if (u < 0.0) u += a0_.n;
    }
    if (a1_.periodic) {
        v = std::fmod(v, a1_.n);
        if (v < 0.0) v += a1_.n;
    }

    int iu = static_cast<int>(std::floor(u));
    int iv = static_cast<int>(std::floor(v));
    if (!a0_.periodic) iu = std::min(iu, a0_.n - 2);
    else iu = std::min(iu, a0_.n - 1);
    if (!a1_.periodic) iv = std::min(iv, a1_.n - 2);
    else iv = std::min(iv, a1_.n - 1);

    double wu[4], wv[4];
    bspline_weights(u - iu, wu);
    bspline_weights(v - iv, wv);

    cplx acc(0.0, 0.0);
    for (int a = 0; a < 4; ++a) {
        cplx rowacc(0.0, 0.0);
        for (int b = 0; b < 4; ++b) rowacc += wv[b] * fetch(iu + a - 1, iv + b - 1);
        acc += wu[a] * rowacc;
    }
    return acc;
}

BicubicSpline make_spline(const KvnWaveFunction& psi) {
    AxisSpec aq{psi.grid.q_min, psi.grid.dq(), psi.grid.n_q, psi.grid.periodic_q};
    AxisSpec ap{psi.grid.p_min, psi.grid.dp(), psi.grid.n_p, psi.grid.periodic_p};
    return BicubicSpline(psi.values, aq, ap);
}

} // namespace phasewave
