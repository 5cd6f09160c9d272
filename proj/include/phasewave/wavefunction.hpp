#pragma once

#include "phasewave/grid.hpp"
#include "phasewave/observable.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace phasewave {

// Which coordinates the second axis carries. QP is the ordinary
// phase-space representation; QLambdaP is its Fourier dual along p.
enum class Representation { QP, QLambdaP };

// Complex amplitude field on a phase-space grid. Observable statistics only
// ever read |values|^2; the phase is dynamical bookkeeping.
struct KvnWaveFunction {
    PhaseSpaceGrid grid;
    Representation rep = Representation::QP;
    std::vector<std::complex<double>> values;

    std::complex<double>& at(int i, int j) { return values[grid.index(i, j)]; }
    const std::complex<double>& at(int i, int j) const { return values[grid.index(i, j)]; }
};

// Samples `f` on the grid nodes. Throws NumericDomainError if any sample is
// non-finite.
KvnWaveFunction make_wavefunction(const PhaseSpaceGrid& grid,
                                  const std::function<std::complex<double>(double, double)>& f,
                                  Representation rep = Representation::QP);

// Normalized Gaussian packet. sigma_q and sigma_p are the standard
// deviations of the density |psi|^2 along each axis.
KvnWaveFunction gaussian_state(const PhaseSpaceGrid& grid,
                               double q0, double p0,
                               double sigma_q, double sigma_p);

// L2 norm in the grid Riemann inner product (compensated summation).
double norm(const KvnWaveFunction& psi);

// <a|b> = sum conj(a) b dq dp. Throws ShapeError on grid or representation
// mismatch.
std::complex<double> inner_product(const KvnWaveFunction& a, const KvnWaveFunction& b);

// Scales psi to unit norm in place and returns the previous norm.
// Throws DegenerateStateError when the field is numerically zero.
double normalize(KvnWaveFunction& psi);

// Pointwise density |psi|^2.
std::vector<double> density(const KvnWaveFunction& psi);

// <f> = sum f(q_i, p_j) |psi_ij|^2 dq dp. Precondition: psi normalized
// (checked to 1e-6, PreconditionError names the measured norm). Throws
// NumericDomainError if f is non-finite anywhere on the grid.
double expectation(const KvnWaveFunction& psi, const ObservableFn& f);

// Polar decomposition psi = amplitude * exp(i*phase). Where the density
// falls below epsilon = 1e-12 * max density the phase is meaningless;
// those nodes carry defined = 0 and phase = 0. Elsewhere the phase lies
// in (-pi, pi].
struct AmplitudePhase {
    std::vector<double> amplitude;
    std::vector<double> phase;
    std::vector<std::uint8_t> defined;
    double epsilon = 0.0;
};
AmplitudePhase amplitude_phase_split(const KvnWaveFunction& psi);

// Multiplies psi by exp(i * phase_field(q, p)) in place. Densities are
// invariant under this map; propagation commutes with it up to
// interpolation error.
void apply_phase_field(KvnWaveFunction& psi,
                       const std::function<double(double, double)>& phase_field);

} // namespace phasewave
