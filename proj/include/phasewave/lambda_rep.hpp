#pragma once

#include "phasewave/hamiltonian.hpp"
#include "phasewave/wavefunction.hpp"

#include <vector>

namespace phasewave {

// Fourier transform along the momentum axis with the forward kernel
// e^{+i p lambda} / sqrt(2 pi). The dual grid is exact:
// d_lambda = 2 pi / (n_p dp) with lambda in [-pi/dp, pi/dp), which makes
// the discrete map unitary in the Riemann inner product to roundoff.
// The lambda axis of the result is marked periodic (it is aDFT dual).
KvnWaveFunction to_lambda_rep(const KvnWaveFunction& psi);

// Inverse map back to (q, p). The original momentum window cannot be
// recovered from the lambda grid alone, so it is passed explicitly and
// validated against the dual spacing (ShapeError on mismatch).
KvnWaveFunction from_lambda_rep(const KvnWaveFunction& psi_lambda,
                                double p_min, double p_max,
                                bool periodic_p = false);

// Evolves the lambda-representation field under H = p^2/2 + V(q) by time t
// with Strang splitting: half a potential kick exp(-i V'(q) lambda dt/2),
// a full kinetic step exp(-i k_q k_lambda dt) in the 2-D Fourier domain,
// half a kick again. Both axes are treated spectrally (periodic); the
// field must be negligible at the q boundary. Restricted to mass = 1
// (UnsupportedError otherwise). dt is a target step; the actual step is
// t / round(t/dt) so the window is hit exactly. For V' = 0 the map is
// exact for any t.
KvnWaveFunction propagate_lambda(const KvnWaveFunction& psi_lambda,
                                 const HamiltonianSpec& h, double t, double dt);

// J = 2 Im(psi* d_q d_lambda psi), evaluated spectrally. The density of a
// freely evolving field obeys d_t rho = -J.
std::vector<double> probability_current(const KvnWaveFunction& psi_lambda);

} // namespace phasewave
