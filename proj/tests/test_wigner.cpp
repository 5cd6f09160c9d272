#include "doctest.h"

#include "phasewave/errors.hpp"
#include "phasewave/grid.hpp"
#include "phasewave/hamiltonian.hpp"
#include "phasewave/reduce.hpp"
#include "phasewave/wigner.hpp"

#include <cmath>
#include <vector>

using namespace phasewave;

namespace {

double wigner_rel_l2(const WignerFunction& a, const WignerFunction& b) {
    KahanSum num, den;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        double d = a.values[k] - b.values[k];
        num.add(d * d);
        den.add(b.values[k] * b.values[k]);
    }
    return std::sqrt(num.value() / den.value());
}

double total_mass(const WignerFunction& w) {
    KahanSum s;
    for (double v : w.values) s.add(v);
    return s.value() * w.grid.cell_area();
}

}  // namespace

TEST_CASE("harmonic eigenstates are grid-normalized") {
    for (int level : {0, 1}) {
        auto psi = harmonic_eigenstate(level, -8.0, 8.0, 256, 1.0, 1.0, 1.0);
        KahanSum s;
        for (const auto& v : psi.values) s.add(std::norm(v));
        CHECK(std::abs(s.value() * psi.dq() - 1.0) < 1e-13);
    }
}

TEST_CASE("ground-state transform matches the analytic phase-space Gaussian") {
    // [-12, 12] keeps the inner-half mass deficit below the 1e-12 gate
    auto psi = harmonic_eigenstate(0, -12.0, 12.0, 256, 1.0, 1.0, 1.0);
    auto w = wigner_from_psi(psi);
    double worst = 0.0;
    for (int i = 0; i < w.grid.n_q; ++i) {
        double q = w.grid.q_at(i);
        for (int j = 0; j < w.grid.n_p; ++j) {
            double p = w.grid.p_at(j);
            double ref = std::exp(-q * q - p * p) / M_PI;
            worst = std::max(worst, std::abs(w.at(i, j) - ref));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("first excited state dips negative at the origin") {
    auto psi = harmonic_eigenstate(1, -12.0, 12.0, 256, 1.0, 1.0, 1.0);
    auto w = wigner_from_psi(psi);
    // q = 0 and p = 0 are exact nodes of this grid
    const int i0 = 128, j0 = 128;
    CHECK(w.grid.q_at(i0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w.grid.p_at(j0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(w.at(i0, j0) - (-1.0 / M_PI)) < 1e-10);

    double worst = 0.0;
    for (int i = 0; i < w.grid.n_q; ++i) {
        double q = w.grid.q_at(i);
        for (int j = 0; j < w.grid.n_p; ++j) {
            double p = w.grid.p_at(j);
            double r2 = q * q + p * p;
            double ref = (2.0 * r2 - 1.0) * std::exp(-r2) / M_PI;
            worst = std::max(worst, std::abs(w.at(i, j) - ref));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("marginals recover both densities") {
    auto psi = harmonic_eigenstate(1, -12.0, 12.0, 256, 1.0, 1.0, 1.0);
    auto w = wigner_from_psi(psi);
    const double dp = w.grid.dp(), dq = w.grid.dq();

    // position marginal equals the sampled |psi|^2 by construction
    double worst_q = 0.0;
    for (int i = 0; i < w.grid.n_q; ++i) {
        KahanSum s;
        for (int j = 0; j < w.grid.n_p; ++j) s.add(w.at(i, j));
        worst_q = std::max(worst_q, std::abs(s.value() * dp - std::norm(psi.values[i])));
    }
    CHECK(worst_q < 1e-12);

    // momentum marginal against the analytic transform of the eigenstate
    double worst_p = 0.0;
    for (int j = 0; j < w.grid.n_p; ++j) {
        KahanSum s;
        for (int i = 0; i < w.grid.n_q; ++i) s.add(w.at(i, j));
        double p = w.grid.p_at(j);
        double ref = 2.0 * p * p * std::exp(-p * p) / std::sqrt(M_PI);
        worst_p = std::max(worst_p, std::abs(s.value() * dq - ref));
    }
    CHECK(worst_p < 1e-8);
}

TEST_CASE("states leaking out of the inner half are rejected") {
    auto psi = harmonic_eigenstate(0, -2.0, 2.0, 64, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS((void)wigner_from_psi(psi), PreconditionError);
}

TEST_CASE("gaussian quasi-distribution carries unit mass") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    auto w = gaussian_wigner(g, 0.5, -0.2, 0.5, 0.6, 0.3);
    CHECK(std::abs(total_mass(w) - 1.0) < 1e-9);
}

TEST_CASE("moyal rhs matches the analytic Gaussian derivative stack") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    const double q0 = 0.3, p0 = -0.1, sq = 0.5, sp = 0.5, hbar = 0.4;
    auto w = gaussian_wigner(g, q0, p0, sq, sp, hbar);
    auto h = HamiltonianSpec::quartic(1.0, 1.0, 1.0);
    auto rhs = moyal_rhs(w, h);

    double worst = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
        double q = g.q_at(i);
        for (int j = 0; j < g.n_p; ++j) {
            double p = g.p_at(j);
            double val = w.at(i, j);
            double dwq = -(q - q0) / (sq * sq) * val;
            double pt = p - p0;
            double dwp = -pt / (sp * sp) * val;
            double d3wp = (-pt * pt * pt / std::pow(sp, 6) + 3.0 * pt / std::pow(sp, 4)) * val;
            double ref = -p / h.mass() * dwq + h.v_prime(q) * dwp -
                         hbar * hbar / 24.0 * h.v_third(q) * d3wp;
            worst = std::max(worst, std::abs(rhs[g.index(i, j)] - ref));
        }
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("moyal evolution is limited to quartic potentials") {
    auto g = make_grid(-4.0, 4.0, 64, -4.0, 4.0, 64);
    auto w = gaussian_wigner(g, 0.0, 0.0, 0.5, 0.5, 0.2);
    auto h5 = HamiltonianSpec::polynomial_v(1.0, {0.0, 0.0, 0.5, 0.0, 0.0, 0.1});
    CHECK_THROWS_AS((void)moyal_rhs(w, h5), UnsupportedError);
}

TEST_CASE("moyal steps larger than the stability guard are rejected") {
    auto g = make_grid(-4.0, 4.0, 64, -4.0, 4.0, 64);
    auto w = gaussian_wigner(g, 0.0, 0.0, 0.5, 0.5, 0.2);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    CHECK_THROWS_AS((void)propagate_moyal(w, h, 1.0, 0.3), PreconditionError);
}

TEST_CASE("harmonic moyal flow transports the Gaussian rigidly") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto w0 = gaussian_wigner(g, 1.0, 0.0, 0.5, 0.5, 0.3);
    const double t = 0.5;
    auto wt = propagate_moyal(w0, h, t, 1e-3);
    CHECK(std::abs(total_mass(wt) - 1.0) < 1e-9);
    auto ref = gaussian_wigner(g, std::cos(t), -std::sin(t), 0.5, 0.5, 0.3);
    CHECK(wigner_rel_l2(wt, ref) < 1e-5);
}

TEST_CASE("the classical gap scales like hbar squared") {
    auto g = make_grid(-4.0, 4.0, 96, -4.0, 4.0, 96);
    auto w0 = gaussian_wigner(g, 0.3, 0.0, 0.4, 0.4, 0.2);
    auto h = HamiltonianSpec::quartic(1.0, 1.0, 1.0);
    auto gaps = classical_limit_gap(w0, h, 0.3, 2e-4, {0.2, 0.4}, 512);
    REQUIRE(gaps.size() == 2u);
    CHECK(gaps[0].hbar == 0.2);
    CHECK(gaps[0].gap_l2 > 0.0);
    double ratio = gaps[1].gap_l2 / gaps[0].gap_l2;
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}

TEST_CASE("the harmonic gap vanishes to advection error for every hbar") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    auto w0 = gaussian_wigner(g, 1.0, 0.0, 1.0, 1.0, 0.2);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto gaps = classical_limit_gap(w0, h, 0.4, 1e-3, {0.1, 0.4}, 512);
    for (const auto& gp : gaps) CHECK(gp.gap_l2 < 1e-4);
}
