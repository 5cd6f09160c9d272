#pragma once

#include "phasewave/hamiltonian.hpp"
#include "phasewave/wavefunction.hpp"

#include <functional>

namespace phasewave {

// Advances a phase-space amplitude by time t along the characteristics of
// dq/dt = p/m, dp/dt = -V'(q). One-shot semi-Lagrangian: every output node
// traces its characteristic back to t=0 (closed form where available,
// `steps` Verlet substeps otherwise) and reads the initial field through a
// single prefiltered bicubic spline, so interpolation error does not
// accumulate with t. Backward points beyond a truncated axis read zero;
// if that discards more than 1e-6 of the squared mass an OutflowError
// carries the measured fraction. `lost_mass_fraction` (optional) receives
// the measured fraction either way.
KvnWaveFunction propagate_qp(const KvnWaveFunction& psi, const HamiltonianSpec& h,
                             double t, int steps = 256,
                             double* lost_mass_fraction = nullptr);

// L-infinity distance between the propagated densities of psi and of
// psi * exp(i * phase_field). Statistics depend on the density alone, so
// this measures how well the numerics respect that invariance: exact
// characteristics make the two backward maps identical and only
// interpolation error survives.
double superselection_check(const KvnWaveFunction& psi,
                            const std::function<double(double, double)>& phase_field,
                            const HamiltonianSpec& h, double t, int steps = 256);

} // namespace phasewave
