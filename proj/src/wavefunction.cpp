#include "phasewave/wavefunction.hpp"

#include "phasewave/errors.hpp"
#include "phasewave/reduce.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace phasewave {

KvnWaveFunction make_wavefunction(const PhaseSpaceGrid& grid,
                                  const std::function<std::complex<double>(double, double)>& f,
                                  Representation rep) {
    KvnWaveFunction psi;
    psi.grid = grid;
    psi.rep = rep;
    psi.values.resize(grid.size());
    for (int i = 0; i < grid.n_q; ++i) {
        double q = grid.q_at(i);
        for (int j = 0; j < grid.n_p; ++j) {
            std::complex<double> v = f(q, grid.p_at(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericDomainError("wave function sampler returned a non-finite value at q=" +
                                         std::to_string(q) + ", p=" + std::to_string(grid.p_at(j)));
            psi.at(i, j) = v;
        }
    }
    return psi;
}

KvnWaveFunction gaussian_state(const PhaseSpaceGrid& grid,
                               double q0, double p0,
                               double sigma_q, double sigma_p) {
    if (!(sigma_q > 0.0)) throw ConfigError("sigma_q must be positive");
    if (!(sigma_p > 0.0)) throw ConfigError("sigma_p must be positive");
    double amp = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma_q * sigma_p);
    return make_wavefunction(grid, [=](double q, double p) {
        double aq = (q - q0) / (2.0 * sigma_q);
        double ap = (p - p0) / (2.0 * sigma_p);
        return std::complex<double>(amp * std::exp(-aq * aq - ap * ap), 0.0);
    });
}

double norm(const KvnWaveFunction& psi) {
    KahanSum s;
    for (const auto& v : psi.values) s.add(std::norm(v));
    return std::sqrt(s.value() * psi.grid.cell_area());
}

std::complex<double> inner_product(const KvnWaveFunction& a, const KvnWaveFunction& b) {
    if (!a.grid.same_shape(b.grid))
        throw ShapeError("inner_product: grids differ");
    if (a.rep != b.rep)
        throw ShapeError("inner_product: representations differ");
    KahanSumComplex s;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        s.add(std::conj(a.values[k]) * b.values[k]);
    return s.value() * a.grid.cell_area();
}

double normalize(KvnWaveFunction& psi) {
    double n = norm(psi);
    if (n <= 0.0 || !std::isfinite(n))
        throw DegenerateStateError("normalize: wave function has zero norm");
    double inv = 1.0 / n;
    for (auto& v : psi.values) v *= inv;
    return n;
}

std::vector<double> density(const KvnWaveFunction& psi) {
    std::vector<double> rho(psi.values.size());
    for (std::size_t k = 0; k < psi.values.size(); ++k) rho[k] = std::norm(psi.values[k]);
    return rho;
}

double expectation(const KvnWaveFunction& psi, const ObservableFn& f) {
    double n = norm(psi);
    if (std::abs(n - 1.0) > 1e-6)
        throw PreconditionError("expectation: wave function is not normalized (norm = " +
                                std::to_string(n) + ")");
    KahanSum s;
    for (int i = 0; i < psi.grid.n_q; ++i) {
        double q = psi.grid.q_at(i);
        for (int j = 0; j < psi.grid.n_p; ++j) {
            double fv = f(q, psi.grid.p_at(j));
            if (!std::isfinite(fv))
                throw NumericDomainError("expectation: observable is non-finite at q=" +
                                         std::to_string(q) + ", p=" +
                                         std::to_string(psi.grid.p_at(j)));
            s.add(fv * std::norm(psi.at(i, j)));
        }
    }
    return s.value() * psi.grid.cell_area();
}

AmplitudePhase amplitude_phase_split(const KvnWaveFunction& psi) {
    AmplitudePhase out;
    out.amplitude.resize(psi.values.size());
    out.phase.assign(psi.values.size(), 0.0);
    out.defined.assign(psi.values.size(), 0);

    double max_rho = 0.0;
    for (const auto& v : psi.values) max_rho = std::max(max_rho, std::norm(v));
    out.epsilon = 1e-12 * max_rho;

    for (std::size_t k = 0; k < psi.values.size(); ++k) {
        double rho = std::norm(psi.values[k]);
        out.amplitude[k] = std::sqrt(rho);
        if (rho >= out.epsilon && rho > 0.0) {
            double s = std::arg(psi.values[k]);
            if (s <= -std::numbers::pi) s = std::numbers::pi;
            out.phase[k] = s;
            out.defined[k] = 1;
        }
    }
    return out;
}

void apply_phase_field(KvnWaveFunction& psi,
                       const std::function<double(double, double)>& phase_field) {
    for (int i = 0; i < psi.grid.n_q; ++i) {
        double q = psi.grid.q_at(i);
        for (int j = 0; j < psi.grid.n_p; ++j) {
            double phi = phase_field(q, psi.grid.p_at(j));
            if (!std::isfinite(phi))
                throw NumericDomainError("apply_phase_field: phase is non-finite at q=" +
                                         std::to_string(q) + ", p=" +
                                         std::to_string(psi.grid.p_at(j)));
            psi.at(i, j) *= std::complex<double>(std::cos(phi), std::sin(phi));
        }
    }
}

} // namespace phasewave
