#pragma once

#include <array>
#include <string>
#include <vector>

namespace phasewave {

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

// Point in the extended space tracked by the hidden-pair equations of
// motion. (chi, pi) generate translations of (p, q) and commute with every
// function of (q, p); they are flagged hidden in all reports because no
// physical statistic depends on them.
struct HiddenPairPoint {
    double q = 0.0;
    double p = 0.0;
    double chi = 0.0;
    double pi = 0.0;
};

enum class HamiltonianKind { Free, Harmonic, Quartic, PolynomialV };

// H = p^2/(2m) + V(q) with V polynomial. The kind tag selects closed-form
// characteristics where they exist; all kinds share the coefficient form of
// V for derivatives.
class HamiltonianSpec {
public:
    static HamiltonianSpec free_particle(double mass);
    static HamiltonianSpec harmonic(double mass, double omega);
    // V = (1/2) m omega^2 q^2 + lambda4 q^4 / 4
    static HamiltonianSpec quartic(double mass, double omega, double lambda4);
    // V = sum_k coeffs[k] q^k
    static HamiltonianSpec polynomial_v(double mass, std::vector<double> coeffs);

    HamiltonianKind kind() const { return kind_; }
    double mass() const { return mass_; }
    double omega() const { return omega_; }
    double lambda4() const { return lambda4_; }
    const std::vector<double>& v_coeffs() const { return v_coeffs_; }

    int potential_degree() const;
    double potential(double q) const;
    double v_prime(double q) const;
    double v_second(double q) const;
    double v_third(double q) const;

    // True when characteristics are evaluated in closed form (degree <= 2
    // potentials); otherwise a symplectic integrator with substeps runs.
    bool has_closed_form_flow() const;

    std::string describe() const;

private:
    HamiltonianKind kind_ = HamiltonianKind::Free;
    double mass_ = 1.0;
    double omega_ = 0.0;
    double lambda4_ = 0.0;
    std::vector<double> v_coeffs_;
};

// Advances (q, p) along dq/dt = p/m, dp/dt = -V'(q) by time t (either
// sign). Closed form for potentials of degree <= 2; Stoermer-Verlet with
// `steps` substeps otherwise (exact for degree <= 1, time-reversible
// always).
PhasePoint liouville_flow(const HamiltonianSpec& h, PhasePoint x, double t, int steps = 256);

// Fixed-step flow wrapper carrying its integrator tag. Composing step()
// with step_back() returns the start point to roundoff.
struct FlowMap {
    enum class Order { ClosedForm, Verlet2 };

    HamiltonianSpec hamiltonian;
    double dt = 0.0;
    Order order = Order::ClosedForm;

    FlowMap(HamiltonianSpec h, double step_dt);
    PhasePoint step(PhasePoint x) const;
    PhasePoint step_back(PhasePoint x) const;
};

// Heisenberg evolution of the commuting hidden pair alongside (q, p):
// chi follows pi/m and pi follows -V''-type coupling exactly as (q, p) do
// for quadratic Hamiltonians. Supported kinds: free and harmonic; anything
// else throws UnsupportedError.
HiddenPairPoint hidden_pair_eom(const HamiltonianSpec& h, HiddenPairPoint x, double t);

} // namespace phasewave
