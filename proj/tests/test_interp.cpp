#include "doctest.h"

#include "phasewave/grid.hpp"
#include "phasewave/interp.hpp"
#include "phasewave/wavefunction.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace phasewave;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> sample2d(const AxisSpec& a0, const AxisSpec& a1,
                           const std::function<cplx(double, double)>& f) {
    std::vector<cplx> out(static_cast<std::size_t>(a0.n) * a1.n);
    for (int i = 0; i < a0.n; ++i)
        for (int j = 0; j < a1.n; ++j)
            out[static_cast<std::size_t>(i) * a1.n + j] =
                f(a0.origin + i * a0.step, a1.origin + j * a1.step);
    return out;
}

double max_err_at(const BicubicSpline& s, const AxisSpec& a0, const AxisSpec& a1,
                  const std::function<cplx(double, double)>& f,
                  const std::vector<std::pair<double, double>>& pts) {
    double worst = 0.0;
    for (auto [x, y] : pts) worst = std::max(worst, std::abs(s.eval(x, y) - f(x, y)));
    (void)a0;
    (void)a1;
    return worst;
}

}  // namespace

TEST_CASE("spline interpolates every sample exactly") {
    AxisSpec a0{-3.0, 0.4, 16, false};
    AxisSpec a1{-2.0, 0.3, 12, false};
    auto f = [](double x, double y) {
        return cplx(std::sin(1.3 * x) * std::exp(-0.2 * y * y), std::cos(x + y));
    };
    auto samples = sample2d(a0, a1, f);
    BicubicSpline s(samples, a0, a1);
    double worst = 0.0;
    for (int i = 0; i < a0.n; ++i)
        for (int j = 0; j < a1.n; ++j)
            worst = std::max(worst, std::abs(s.eval(a0.origin + i * a0.step,
                                                    a1.origin + j * a1.step) -
                                             samples[static_cast<std::size_t>(i) * a1.n + j]));
    CHECK(worst < 1e-12);
}

TEST_CASE("bilinear fields are reproduced everywhere") {
    // linear end extrapolation makes degree-1 data exact up to the hull edge
    AxisSpec a0{-1.0, 0.25, 12, false};
    AxisSpec a1{0.0, 0.5, 8, false};
    auto f = [](double x, double y) { return cplx(2.0 * x - 3.0 * y + 1.0 + 0.5 * x * y, 0.0); };
    BicubicSpline s(sample2d(a0, a1, f), a0, a1);
    std::vector<std::pair<double, double>> pts = {
        {-0.93, 0.07}, {0.11, 1.93}, {1.7, 3.4}, {-1.0, 0.0}, {0.33, 2.2}};
    CHECK(max_err_at(s, a0, a1, f, pts) < 1e-12);
}

TEST_CASE("truncated axes evaluate to zero outside the hull") {
    AxisSpec a0{0.0, 1.0, 8, false};
    AxisSpec a1{0.0, 1.0, 8, false};
    auto samples = sample2d(a0, a1, [](double, double) { return cplx(1.0, 0.0); });
    BicubicSpline s(samples, a0, a1);
    bool outside = false;
    CHECK(std::abs(s.eval(-0.01, 3.0, &outside)) == 0.0);
    CHECK(outside);
    outside = false;
    CHECK(std::abs(s.eval(3.0, 7.01, &outside)) == 0.0);
    CHECK(outside);
    outside = true;
    CHECK(std::abs(s.eval(3.5, 3.5, &outside) - cplx(1.0, 0.0)) < 1e-12);
    CHECK_FALSE(outside);
}

TEST_CASE("periodic axes wrap") {
    const int n = 24;
    const double step = 2.0 * M_PI / n;
    AxisSpec a0{0.0, step, n, true};
    AxisSpec a1{0.0, step, n, true};
    auto f = [](double x, double y) { return cplx(std::sin(x), std::cos(2.0 * y)); };
    BicubicSpline s(sample2d(a0, a1, f), a0, a1);
    for (double x : {0.37, 2.9, 5.5}) {
        auto v0 = s.eval(x, 1.1);
        auto v1 = s.eval(x + 2.0 * M_PI, 1.1 - 2.0 * M_PI);
        CHECK(std::abs(v0 - v1) < 1e-12);
    }
}

TEST_CASE("interpolation error decays like h^4") {
    // both components must be 2*pi periodic per axis or the wrap seam
    // dominates every resolution
    auto f = [](double x, double y) {
        return cplx(std::exp(std::sin(x)) * std::cos(y), std::sin(x + 2.0 * y));
    };

    // Cell midpoints keep the sampling offset fixed across resolutions, so
    // the sup error follows the h^4 law cleanly.
    double err[2];
    int idx = 0;
    for (int n : {32, 64}) {
        const double step = 2.0 * M_PI / n;
        AxisSpec a{0.0, step, n, true};
        BicubicSpline s(sample2d(a, a, f), a, a);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double x = (i + 0.5) * step, y = (j + 0.5) * step;
                worst = std::max(worst, std::abs(s.eval(x, y) - f(x, y)));
            }
        }
        err[idx++] = worst;
    }
    double ratio = err[0] / err[1];
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("natural-end convergence on a compactly supported field") {
    auto f = [](double x, double y) {
        return cplx(std::exp(-x * x - 0.8 * y * y) * (1.0 + 0.2 * x), 0.0);
    };
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 7; ++k) pts.emplace_back(-1.3 + 0.41 * k, 1.2 - 0.37 * k);

    double err[2];
    int idx = 0;
    for (int n : {64, 128}) {
        const double step = 16.0 / n;
        AxisSpec a{-8.0, step, n, false};
        BicubicSpline s(sample2d(a, a, f), a, a);
        err[idx++] = max_err_at(s, a, a, f, pts);
    }
    double ratio = err[0] / err[1];
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("make_spline matches the wave function at the nodes") {
    auto g = make_grid(-4.0, 4.0, 32, -4.0, 4.0, 32);
    auto psi = gaussian_state(g, 0.4, -0.2, 0.9, 0.7);
    auto s = make_spline(psi);
    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i)
        for (int j = 0; j < g.n_p; ++j)
            worst = std::max(worst, std::abs(s.eval(g.q_at(i), g.p_at(j)) - psi.at(i, j)));
    CHECK(worst < 1e-12);
}
