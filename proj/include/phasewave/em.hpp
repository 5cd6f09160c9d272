#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace phasewave {

// Six-component field psi = (E_x, E_y, E_z, -B_x, -B_y, -B_z) on a periodic
// cubic lattice (z fastest). Axes of extent 1 are inert, so 1-D and 2-D
// configurations are the same type. The first-order evolution
// d_t psi = -sum_i beta_i d_i psi encodes d_t E = curl B, d_t B = -curl E.
struct EmFieldState {
    int nx = 1, ny = 1, nz = 1;
    double dx = 1.0;
    std::array<std::vector<std::complex<double>>, 6> comp;

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * ny + iy) * nz + iz;
    }
    int active_dims() const { return (nx > 1) + (ny > 1) + (nz > 1); }
    // volume element of the active axes
    double cell_volume() const;
};

// The three real symmetric 6x6 generator blocks. Symmetry and the sample
// spectrum {0, 0, +-|k|, +-|k|} are verified on first use.
const std::array<Eigen::Matrix<double, 6, 6>, 3>& beta_matrices();

// The Fourier symbol B(k) = kx beta_x + ky beta_y + kz beta_z.
Eigen::Matrix<double, 6, 6> beta_symbol(double kx, double ky, double kz);

// Samples a user field; components indexed as in EmFieldState (the last
// three carry -B). Throws NumericDomainError on non-finite samples.
EmFieldState make_em_state(int nx, int ny, int nz, double dx,
                           const std::function<std::array<std::complex<double>, 6>(
                               double, double, double)>& sampler);

enum class Polarization { Circular, Linear };

// Plane wave with integer mode numbers (exactly one may be nonzero; the
// wave runs along that axis). Circular: unit-Poynting rotating pair.
// Linear: E along the first transverse axis, B along the second.
EmFieldState make_plane_wave(int nx, int ny, int nz, double dx,
                             int mx, int my, int mz, Polarization pol);

// Exact propagation by time t: each Fourier mode is rotated by
// exp(-i B(k) t) through the eigendecomposition of the real symmetric
// symbol. Unitary per mode, so energy is conserved to roundoff and a
// single-|k| field returns exactly at t = 2 pi/|k|.
EmFieldState propagate_em(const EmFieldState& state, double t);

// S_i = (1/2) psi^dag beta_i psi; equals (E x B)_i for real fields.
std::array<std::vector<double>, 3> poynting(const EmFieldState& state);

// rho = (1/2) psi^dag psi = (|E|^2 + |B|^2)/2.
std::vector<double> energy_density(const EmFieldState& state);

double total_energy(const EmFieldState& state);

// max over interior snapshot times and grid points of
// |(rho_{n+1} - rho_{n-1})/(2 dt) + div S_n| with a spectral divergence.
// Needs at least 3 snapshots taken dt apart.
double continuity_residual(const std::vector<EmFieldState>& trajectory, double dt);

// Removes the longitudinal part of E and B mode by mode (k = 0 untouched).
// Idempotent; leaves transverse fields unchanged.
EmFieldState project_divergence_free(const EmFieldState& state);

// Spectral max |div E| + max |div B|, for diagnostics and tests.
double max_divergence(const EmFieldState& state);

} // namespace phasewave
