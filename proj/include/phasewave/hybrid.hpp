#pragma once

#include <Eigen/Dense>

#include <complex>

#include "phasewave/wavefunction.hpp"

namespace phasewave {

// Spin-1/2 degree of freedom coupled to a classical phase-space wave
// function: |Psi> = c_plus |+> psi_plus(q,p) + c_minus |-> psi_minus(q,p).
// Both branch fields live on the same grid and are individually normalized;
// (c_plus, c_minus) carries the branch weights, |c+|^2 + |c-|^2 = 1.
struct HybridSpinKvnState {
    std::complex<double> c_plus, c_minus;
    KvnWaveFunction psi_plus, psi_minus;
};

HybridSpinKvnState make_hybrid_state(std::complex<double> c_plus,
                                     std::complex<double> c_minus,
                                     KvnWaveFunction psi_plus,
                                     KvnWaveFunction psi_minus);

// Advects each branch under its own linear potential V_pm(q) = -/+ mass*gamma*q,
// so the |+> branch accelerates toward +q and the |-> branch toward -q.
// A branch with exactly zero weight is left untouched.
HybridSpinKvnState sg_propagate(const HybridSpinKvnState& state, double mass, double gamma,
                                double t, int steps = 256);

// |c+ c-*| * |<psi+|psi->|: the magnitude of the off-diagonal element of the
// reduced spin density matrix.  Invariant under global phases and, once the
// branch overlap vanishes, under any relative phase as well.
double reduced_spin_coherence(const HybridSpinKvnState& state);

// Two-outcome readout by thresholding the total position density at
// q_split (nodes with q >= q_split count as "up").  Requires the branches
// to have decohered: reduced_spin_coherence <= 1e-3, else PreconditionError.
struct SgHistogram {
    double p_up = 0.0;
    double p_down = 0.0;
};

SgHistogram sg_outcome_histogram(const HybridSpinKvnState& state, double q_split);

// Mean position of one branch; convenience accessor for time series.
double branch_mean_q(const HybridSpinKvnState& state, int branch);

// ---------------------------------------------------------------------------
// Momentum-meter model: a harmonic (or free) system coupled to a meter whose
// momentum reads out the system momentum, evolved at the level of first and
// second moments.  State vector order: (q, p, qA, pA, chiA, piA), where
// (qA, pA) is the meter pair and (chiA, piA) its hidden partner pair.
// The equations of motion are linear:
//   dq/dt  = p/m + g*chiA      dp/dt  = -m*omega^2*q
//   dqA/dt = 0                 dpA/dt = chiA/M + g*p
//   dchiA/dt = 0               dpiA/dt = 0
// ---------------------------------------------------------------------------

struct MeterMomentState {
    Eigen::Matrix<double, 6, 1> mean;
    Eigen::Matrix<double, 6, 6> cov;
    double g = 0.0;      // system-meter coupling
    double m = 1.0;      // system mass
    double meter_m = 1.0;  // meter mass M
    double omega = 0.0;  // system frequency (0 = free)
};

MeterMomentState make_meter_state(const Eigen::Matrix<double, 6, 1>& mean,
                                  const Eigen::Matrix<double, 6, 6>& cov, double g, double m,
                                  double meter_m, double omega);

// Exact transition matrix Phi(t) of the linear flow above.
Eigen::Matrix<double, 6, 6> meter_transition(double g, double m, double meter_m, double omega,
                                             double t);

// mean -> Phi mean, cov -> Phi cov Phi^T.
MeterMomentState momentum_meter_evolve(const MeterMomentState& state, double t);

// Splits the meter-momentum shift <pA>(t) - <pA>(0) into the part sourced by
// the system signal, g * integral of <p>, and the hidden drift t*<chiA>/M
// that no observable statistics can distinguish from it.
struct MeterReadout {
    double observable_term = 0.0;
    double hidden_term = 0.0;
    double total_shift = 0.0;
};

MeterReadout meter_pa_decomposition(const MeterMomentState& initial, double t);

// d<q>/dt decomposition at the current state: the observable velocity <p>/m
// plus the hidden contribution g*<chiA>.  The meter coupling displaces the
// system position through a term invisible to momentum statistics.
struct PositionRateReport {
    double observable_rate = 0.0;
    double hidden_rate = 0.0;
    double total_rate = 0.0;
};

PositionRateReport position_rate_report(const MeterMomentState& state);

}  // namespace phasewave
