#pragma once

#include "phasewave/grid.hpp"
#include "phasewave/hamiltonian.hpp"

#include <complex>
#include <vector>

namespace phasewave {

// One-dimensional quantum wave function on a uniform position grid,
// q_i = q_min + i*dq with dq = (q_max - q_min)/n.
struct QuantumState1D {
    double q_min = 0.0;
    double q_max = 0.0;
    int n = 0;
    double hbar = 1.0;
    std::vector<std::complex<double>> values;

    double dq() const { return (q_max - q_min) / n; }
    double q_at(int i) const { return q_min + i * dq(); }
};

// Harmonic-oscillator eigenstate (level 0 or 1), normalized in the grid
// Riemann sum.
QuantumState1D harmonic_eigenstate(int level, double q_min, double q_max, int n,
                                   double hbar, double mass, double omega);

// Real phase-space quasi-distribution. The grid's p axis is the discrete
// dual induced by the construction: dp = pi*hbar/(n*dq), symmetric about 0.
struct WignerFunction {
    PhaseSpaceGrid grid;
    double hbar = 1.0;
    std::vector<double> values;

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

// Normalized Gaussian quasi-distribution (unit total mass); sigma_q and
// sigma_p are the standard deviations of the distribution itself.
WignerFunction gaussian_wigner(const PhaseSpaceGrid& grid, double q0, double p0,
                               double sigma_q, double sigma_p, double hbar);

// W(q,p) = (1/(pi hbar)) sum_j exp(-2 i p j dq / hbar) psi(q + j dq)
// psi*(q - j dq) dq, evaluated with an FFT per position row on the exact
// dual momentum grid p_k = pi hbar k/(n dq). The position marginal
// integrates to |psi(q)|^2 identically. Precondition: at least
// 1 - 1e-12 of the state's mass lies in the inner half of the grid
// (PreconditionError reports the measured fraction otherwise).
WignerFunction wigner_from_psi(const QuantumState1D& psi);

// dW/dt for H = p^2/2m + V(q) with deg V <= 4 (UnsupportedError above):
//   -(p/m) dW/dq + V'(q) dW/dp - (hbar^2/24) V'''(q) d^3W/dp^3,
// spectral derivatives on a periodic grid. The truncation is exact for
// deg V <= 4: higher Moyal terms vanish identically.
std::vector<double> moyal_rhs(const WignerFunction& w, const HamiltonianSpec& h);

// Classical RK4 in time on moyal_rhs. Precondition dt <= 0.25 dq dp
// (PreconditionError); the step count is ceil(t/dt) so the actual step
// never exceeds dt. Conserves total mass to roundoff (every rhs term has
// zero mean).
WignerFunction propagate_moyal(const WignerFunction& w, const HamiltonianSpec& h,
                               double t, double dt);

struct GapPoint {
    double hbar = 0.0;
    double gap_l2 = 0.0;
};

// L2 distance at time t between the Moyal evolution at each hbar and the
// hbar-independent Liouville advection of the same W0 (computed once with
// the semi-Lagrangian machinery). The list comes back in the input order.
std::vector<GapPoint> classical_limit_gap(const WignerFunction& w0,
                                          const HamiltonianSpec& h,
                                          double t, double dt,
                                          const std::vector<double>& hbars,
                                          int advect_steps = 1024);

} // namespace phasewave
