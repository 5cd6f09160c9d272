#include "phasewave/hamiltonian.hpp"

#include "phasewave/errors.hpp"

#include <cmath>

namespace phasewave {

namespace {

void require_mass(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("mass must be positive and finite");
}

double poly_eval(const std::vector<double>& c, double q) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * q + c[k];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

} // namespace

HamiltonianSpec HamiltonianSpec::free_particle(double mass) {
    require_mass(mass);
    HamiltonianSpec h;
    h.kind_ = HamiltonianKind::Free;
    h.mass_ = mass;
    return h;
}

HamiltonianSpec HamiltonianSpec::harmonic(double mass, double omega) {
    require_mass(mass);
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ConfigError("omega must be non-negative and finite");
    HamiltonianSpec h;
    h.kind_ = HamiltonianKind::Harmonic;
    h.mass_ = mass;
    h.omega_ = omega;
    h.v_coeffs_ = {0.0, 0.0, 0.5 * mass * omega * omega};
    return h;
}

HamiltonianSpec HamiltonianSpec::quartic(double mass, double omega, double lambda4) {
    require_mass(mass);
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw ConfigError("omega must be non-negative and finite");
    if (!std::isfinite(lambda4)) throw ConfigError("lambda4 must be finite");
    HamiltonianSpec h;
    h.kind_ = HamiltonianKind::Quartic;
    h.mass_ = mass;
    h.omega_ = omega;
    h.lambda4_ = lambda4;
    h.v_coeffs_ = {0.0, 0.0, 0.5 * mass * omega * omega, 0.0, 0.25 * lambda4};
    return h;
}

HamiltonianSpec HamiltonianSpec::polynomial_v(double mass, std::vector<double> coeffs) {
    require_mass(mass);
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw ConfigError("potential coefficients must be finite");
    }
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    HamiltonianSpec h;
    h.kind_ = HamiltonianKind::PolynomialV;
    h.mass_ = mass;
    h.v_coeffs_ = std::move(coeffs);
    return h;
}

int HamiltonianSpec::potential_degree() const {
    int deg = -1;
    for (std::size_t k = 0; k < v_coeffs_.size(); ++k) {
        if (v_coeffs_[k] != 0.0) deg = static_cast<int>(k);
    }
    return deg;
}

double HamiltonianSpec::potential(double q) const { return poly_eval(v_coeffs_, q); }

double HamiltonianSpec::v_prime(double q) const {
    return poly_eval(poly_derivative(v_coeffs_), q);
}

double HamiltonianSpec::v_second(double q) const {
    return poly_eval(poly_derivative(poly_derivative(v_coeffs_)), q);
}

double HamiltonianSpec::v_third(double q) const {
    return poly_eval(poly_derivative(poly_derivative(poly_derivative(v_coeffs_))), q);
}

bool HamiltonianSpec::has_closed_form_flow() const {
    int deg = potential_degree();
    if (deg <= 1) return true;
    if (deg == 2) return v_coeffs_[2] > 0.0;
    return false;
}

std::string HamiltonianSpec::describe() const {
    switch (kind_) {
        case HamiltonianKind::Free: return "free";
        case HamiltonianKind::Harmonic: return "harmonic";
        case HamiltonianKind::Quartic: return "quartic";
        case HamiltonianKind::PolynomialV: return "polynomial";
    }
    return "unknown";
}

namespace {

PhasePoint flow_closed_form(const HamiltonianSpec& h, PhasePoint x, double t) {
    const auto& c = h.v_coeffs();
    int deg = h.potential_degree();
    double m = h.mass();
    if (deg <= 0) {
        return {x.q + x.p * t / m, x.p};
    }
    if (deg == 1) {
        double force = -c[1];
        return {x.q + x.p * t / m + 0.5 * force * t * t / m, x.p + force * t};
    }
    // deg == 2, c[2] > 0: harmonic rotation about the shifted center
    double omega = std::sqrt(2.0 * c[2] / m);
    double center = c.size() > 1 ? -c[1] / (2.0 * c[2]) : 0.0;
    double dqc = x.q - center;
    double cw = std::cos(omega * t), sw = std::sin(omega * t);
    double q1 = dqc * cw + x.p / (m * omega) * sw;
    double p1 = -m * omega * dqc * sw + x.p * cw;
    return {q1 + center, p1};
}

PhasePoint flow_verlet(const HamiltonianSpec& h, PhasePoint x, double t, int steps) {
    double dt = t / steps;
    double m = h.mass();
    double q = x.q, p = x.p;
    for (int k = 0; k < steps; ++k) {
        double ph = p - 0.5 * dt * h.v_prime(q);
        q += dt * ph / m;
        p = ph - 0.5 * dt * h.v_prime(q);
    }
    return {q, p};
}

} // namespace

PhasePoint liouville_flow(const HamiltonianSpec& h, PhasePoint x, double t, int steps) {
    if (t == 0.0) return x;
    if (h.has_closed_form_flow()) return flow_closed_form(h, x, t);
    if (steps < 1) throw ConfigError("steps must be at least 1");
    return flow_verlet(h, x, t, steps);
}

FlowMap::FlowMap(HamiltonianSpec h, double step_dt)
    : hamiltonian(std::move(h)), dt(step_dt) {
    if (!(std::isfinite(dt))) throw ConfigError("dt must be finite");
    order = hamiltonian.has_closed_form_flow() ? Order::ClosedForm : Order::Verlet2;
}

PhasePoint FlowMap::step(PhasePoint x) const {
    return liouville_flow(hamiltonian, x, dt, 1);
}

PhasePoint FlowMap::step_back(PhasePoint x) const {
    return liouville_flow(hamiltonian, x, -dt, 1);
}

HiddenPairPoint hidden_pair_eom(const HamiltonianSpec& h, HiddenPairPoint x, double t) {
    double m = h.mass();
    switch (h.kind()) {
        case HamiltonianKind::Free:
            return {x.q + x.p * t / m, x.p, x.chi + x.pi * t / m, x.pi};
        case HamiltonianKind::Harmonic: {
            double omega = h.omega();
            if (omega == 0.0)
                return {x.q + x.p * t / m, x.p, x.chi + x.pi * t / m, x.pi};
            double cw = std::cos(omega * t), sw = std::sin(omega * t);
            double q1 = x.q * cw + x.p / (m * omega) * sw;
            double p1 = -m * omega * x.q * sw + x.p * cw;
            double chi1 = x.chi * cw + x.pi / (m * omega) * sw;
            double pi1 = -m * omega * x.chi * sw + x.pi * cw;
            return {q1, p1, chi1, pi1};
        }
        default:
            throw UnsupportedError(
                "hidden_pair_eom: closed form exists only for free and harmonic Hamiltonians");
    }
}

} // namespace phasewave
