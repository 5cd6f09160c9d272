#pragma once

#include "phasewave/wavefunction.hpp"

#include <complex>
#include <vector>

namespace phasewave {

// One interpolation axis: nodes at origin + k*step, k = 0..n-1. A periodic
// axis wraps with period n*step; a truncated axis evaluates to zero outside
// the sampled hull [origin, origin + (n-1)*step].
struct AxisSpec {
    double origin = 0.0;
    double step = 1.0;
    int n = 0;
    bool periodic = false;
};

// Interpolating bicubic B-spline surface over a row-major n0 x n1 complex
// field. Construction runs the tridiagonal prefilter along both axes so the
// surface passes through every sample; evaluation gathers a 4x4 stencil.
// Natural end conditions on truncated axes, cyclic closure on periodic ones.
class BicubicSpline {
public:
    BicubicSpline(const std::vector<std::complex<double>>& samples,
                  const AxisSpec& axis0, const AxisSpec& axis1);

    // Value at (x0, x1). On truncated axes, points outside the sampled hull
    // give 0 and set *outside (when provided).
    std::complex<double> eval(double x0, double x1, bool* outside = nullptr) const;

private:
    AxisSpec a0_, a1_;
    std::vector<std::complex<double>> coef_;

    std::complex<double> fetch(int i, int j) const;
};

// Spline over a wave function, axes taken from its grid (q is axis 0).
BicubicSpline make_spline(const KvnWaveFunction& psi);

} // namespace phasewave
