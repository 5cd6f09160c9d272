#include "phasewave/hybrid.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "phasewave/errors.hpp"
#include "phasewave/hamiltonian.hpp"
#include "phasewave/propagator.hpp"
#include "phasewave/reduce.hpp"

namespace phasewave {

namespace {

using cplx = std::complex<double>;

void check_spin_norm(cplx c_plus, cplx c_minus) {
    const double n2 = std::norm(c_plus) + std::norm(c_minus);
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw PreconditionError("spin amplitudes give |c+|^2 + |c-|^2 = " + std::to_string(n2) +
                                ", expected 1");
    }
}

}  // namespace

HybridSpinKvnState make_hybrid_state(cplx c_plus, cplx c_minus, KvnWaveFunction psi_plus,
                                     KvnWaveFunction psi_minus) {
    if (!psi_plus.grid.same_shape(psi_minus.grid)) {
        throw ShapeError("hybrid branches live on different grids");
    }
    if (psi_plus.rep != Representation::QP || psi_minus.rep != Representation::QP) {
        throw ShapeError("hybrid branches must be in the (q,p) representation");
    }
    const double spin_n = std::sqrt(std::norm(c_plus) + std::norm(c_minus));
    if (spin_n < 1e-150) throw DegenerateStateError("spin amplitudes are both zero");

    HybridSpinKvnState s{c_plus / spin_n, c_minus / spin_n, std::move(psi_plus),
                         std::move(psi_minus)};
    if (std::norm(s.c_plus) > 0.0) normalize(s.psi_plus);
    if (std::norm(s.c_minus) > 0.0) normalize(s.psi_minus);
    return s;
}

HybridSpinKvnState sg_propagate(const HybridSpinKvnState& state, double mass, double gamma,
                                double t, int steps) {
    check_spin_norm(state.c_plus, state.c_minus);
    if (!(mass > 0.0)) throw ConfigError("mass must be positive");
    if (!std::isfinite(gamma)) throw ConfigError("gamma must be finite");

    // V_pm(q) = -/+ mass*gamma*q; force on the branch is +/- mass*gamma.
    const HamiltonianSpec h_plus = HamiltonianSpec::polynomial_v(mass, {0.0, -mass * gamma});
    const HamiltonianSpec h_minus = HamiltonianSpec::polynomial_v(mass, {0.0, mass * gamma});

    HybridSpinKvnState out = state;
    if (std::norm(state.c_plus) > 0.0) out.psi_plus = propagate_qp(state.psi_plus, h_plus, t, steps);
    if (std::norm(state.c_minus) > 0.0)
        out.psi_minus = propagate_qp(state.psi_minus, h_minus, t, steps);
    return out;
}

double reduced_spin_coherence(const HybridSpinKvnState& state) {
    check_spin_norm(state.c_plus, state.c_minus);
    if (std::norm(state.c_plus) == 0.0 || std::norm(state.c_minus) == 0.0) return 0.0;
    const cplx overlap = inner_product(state.psi_plus, state.psi_minus);
    return std::abs(state.c_plus * std::conj(state.c_minus)) * std::abs(overlap);
}

SgHistogram sg_outcome_histogram(const HybridSpinKvnState& state, double q_split) {
    const double coherence = reduced_spin_coherence(state);
    if (coherence > 1e-3) {
        throw PreconditionError("branches still overlap: reduced spin coherence = " +
                                std::to_string(coherence) +
                                " > 1e-3; outcome probabilities are not yet classical");
    }
    const PhaseSpaceGrid& g = state.psi_plus.grid;
    const double w_plus = std::norm(state.c_plus);
    const double w_minus = std::norm(state.c_minus);

    KahanSum up, down;
    for (int i = 0; i < g.n_q; ++i) {
        const bool is_up = g.q_at(i) >= q_split;
        for (int j = 0; j < g.n_p; ++j) {
            const double rho = w_plus * std::norm(state.psi_plus.at(i, j)) +
                               w_minus * std::norm(state.psi_minus.at(i, j));
            if (is_up) {
                up.add(rho);
            } else {
                down.add(rho);
            }
        }
    }
    const double cell = g.cell_area();
    SgHistogram h;
    h.p_up = up.value() * cell;
    h.p_down = down.value() * cell;
    return h;
}

double branch_mean_q(const HybridSpinKvnState& state, int branch) {
    if (branch != 0 && branch != 1) throw ConfigError("branch must be 0 (plus) or 1 (minus)");
    // Renormalize a copy so residual interpolation drift in the branch norm
    // cannot poison the mean.
    KvnWaveFunction psi = (branch == 0) ? state.psi_plus : state.psi_minus;
    normalize(psi);
    return expectation(psi, ObservableFn::coordinate_q());
}

// ---------------------------------------------------------------------------
// Momentum meter
// ---------------------------------------------------------------------------

MeterMomentState make_meter_state(const Eigen::Matrix<double, 6, 1>& mean,
                                  const Eigen::Matrix<double, 6, 6>& cov, double g, double m,
                                  double meter_m, double omega) {
    if (!(m > 0.0)) throw ConfigError("system mass must be positive");
    if (!(meter_m > 0.0)) throw ConfigError("meter mass must be positive");
    if (!(omega >= 0.0)) throw ConfigError("omega must be non-negative");
    if (!std::isfinite(g)) throw ConfigError("coupling g must be finite");
    for (int i = 0; i < 6; ++i) {
        if (!std::isfinite(mean(i))) throw NumericDomainError("meter mean is not finite");
        if (cov(i, i) < 0.0) {
            throw ConfigError("covariance diagonal entry " + std::to_string(i) + " is negative");
        }
        for (int j = 0; j < 6; ++j) {
            if (!std::isfinite(cov(i, j))) throw NumericDomainError("meter covariance is not finite");
            if (std::abs(cov(i, j) - cov(j, i)) > 1e-12 * (1.0 + std::abs(cov(i, j)))) {
                throw ConfigError("covariance matrix is not symmetric");
            }
        }
    }
    return MeterMomentState{mean, cov, g, m, meter_m, omega};
}

Eigen::Matrix<double, 6, 6> meter_transition(double g, double m, double meter_m, double omega,
                                             double t) {
    if (!(m > 0.0) || !(meter_m > 0.0)) throw ConfigError("masses must be positive");
    if (omega < 0.0) throw ConfigError("omega must be non-negative");

    Eigen::Matrix<double, 6, 6> phi = Eigen::Matrix<double, 6, 6>::Identity();
    if (omega == 0.0) {
        // Free system: p constant, q drifts, meter momentum integrates g*p.
        phi(0, 1) = t / m;
        phi(0, 4) = g * t;
        phi(3, 1) = g * t;
        phi(3, 4) = t / meter_m;
        return phi;
    }
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double sw = s / omega;

    phi(0, 0) = c;
    phi(0, 1) = sw / m;
    phi(0, 4) = g * sw;

    phi(1, 0) = -m * omega * s;
    phi(1, 1) = c;
    phi(1, 4) = m * g * (c - 1.0);

    phi(3, 0) = -g * m * (1.0 - c);
    phi(3, 1) = g * sw;
    phi(3, 4) = t / meter_m + m * g * g * (sw - t);
    return phi;
}

MeterMomentState momentum_meter_evolve(const MeterMomentState& state, double t) {
    const Eigen::Matrix<double, 6, 6> phi =
        meter_transition(state.g, state.m, state.meter_m, state.omega, t);
    MeterMomentState out = state;
    out.mean = phi * state.mean;
    out.cov = phi * state.cov * phi.transpose();
    return out;
}

MeterReadout meter_pa_decomposition(const MeterMomentState& initial, double t) {
    const double g = initial.g, m = initial.m, omega = initial.omega;
    const double q0 = initial.mean(0), p0 = initial.mean(1), chi0 = initial.mean(4);

    // g * integral_0^t <p(tau)> dtau, using the closed-form mean flow.
    double integral_p;
    if (omega == 0.0) {
        integral_p = p0 * t;
    } else {
        const double c = std::cos(omega * t);
        const double sw = std::sin(omega * t) / omega;
        integral_p = -m * q0 * (1.0 - c) + p0 * sw + m * g * (sw - t) * chi0;
    }

    MeterReadout r;
    r.observable_term = g * integral_p;
    r.hidden_term = (chi0 / initial.meter_m) * t;
    r.total_shift = momentum_meter_evolve(initial, t).mean(3) - initial.mean(3);
    return r;
}

PositionRateReport position_rate_report(const MeterMomentState& state) {
    PositionRateReport r;
    r.observable_rate = state.mean(1) / state.m;
    r.hidden_rate = state.g * state.mean(4);
    r.total_rate = r.observable_rate + r.hidden_rate;
    return r;
}

}  // namespace phasewave
