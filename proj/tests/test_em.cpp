#include "doctest.h"

#include "phasewave/em.hpp"
#include "phasewave/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

using namespace phasewave;
using cplx = std::complex<double>;

namespace {

double max_component_diff(const EmFieldState& a, const EmFieldState& b) {
    double worst = 0.0;
    for (int c = 0; c < 6; ++c)
        for (std::size_t k = 0; k < a.comp[c].size(); ++k)
            worst = std::max(worst, std::abs(a.comp[c][k] - b.comp[c][k]));
    return worst;
}

// real three-mode test field, periodic on an n^3 box of spacing dx
EmFieldState ripple_state(int n, double dx) {
    const double L = n * dx;
    const double k1 = 2.0 * M_PI / L;
    return make_em_state(n, n, n, dx, [&](double x, double y, double z) {
        std::array<cplx, 6> v{};
        v[0] = 0.7 * std::cos(k1 * z) + 0.2 * std::sin(2.0 * k1 * y);
        v[1] = -0.4 * std::sin(k1 * x);
        v[2] = 0.5 * std::cos(k1 * (x + y));
        v[3] = -(0.3 * std::sin(k1 * y));           // -B_x
        v[4] = -(-0.6 * std::cos(2.0 * k1 * z));    // -B_y
        v[5] = -(0.25 * std::sin(k1 * (y - z)));    // -B_z
        return v;
    });
}

}  // namespace

TEST_CASE("generator blocks are exactly symmetric") {
    const auto& betas = beta_matrices();
    for (const auto& b : betas) {
        CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("the symbol spectrum is {0, 0, +-|k|, +-|k|}") {
    const std::vector<std::array<double, 3>> ks = {
        {1.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.3, 0.7, -1.1}, {2.5, -0.4, 0.9}};
    for (const auto& k : ks) {
        double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(
            beta_symbol(k[0], k[1], k[2]));
        const auto& ev = es.eigenvalues();
        CHECK(std::abs(ev[0] + kn) < 1e-12);
        CHECK(std::abs(ev[1] + kn) < 1e-12);
        CHECK(std::abs(ev[2]) < 1e-12);
        CHECK(std::abs(ev[3]) < 1e-12);
        CHECK(std::abs(ev[4] - kn) < 1e-12);
        CHECK(std::abs(ev[5] - kn) < 1e-12);
    }
}

TEST_CASE("the generator encodes both curl equations") {
    // E = (cos kz, 0, 0), B = 0 at t = 0:
    //   dE/dt = curl B = 0, dB/dt = -curl E = (0, k sin kz, 0)
    const int n = 16;
    const double dx = 0.5, L = n * dx, k = 2.0 * M_PI / L;
    auto s0 = make_em_state(1, 1, n, dx, [&](double, double, double z) {
        std::array<cplx, 6> v{};
        v[0] = std::cos(k * z);
        return v;
    });
    const double eps = 1e-6;
    auto s1 = propagate_em(s0, eps);
    double worst = 0.0;
    for (int iz = 0; iz < n; ++iz) {
        double z = iz * dx;
        std::size_t idx = s0.index(0, 0, iz);
        // comp[4] carries -B_y, so its rate is -k sin(kz)
        double db = (s1.comp[4][idx].real() - s0.comp[4][idx].real()) / eps;
        worst = std::max(worst, std::abs(db + k * std::sin(k * z)));
        double de = (s1.comp[0][idx].real() - s0.comp[0][idx].real()) / eps;
        worst = std::max(worst, std::abs(de));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("poynting flux and energy density match the real-field formulas") {
    auto s = ripple_state(8, 0.7);
    auto flux = poynting(s);
    auto rho = energy_density(s);
    double worst_s = 0.0, worst_rho = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        double e[3], b[3];
        for (int c = 0; c < 3; ++c) {
            e[c] = s.comp[c][k].real();
            b[c] = -s.comp[3 + c][k].real();
        }
        double sx = e[1] * b[2] - e[2] * b[1];
        double sy = e[2] * b[0] - e[0] * b[2];
        double sz = e[0] * b[1] - e[1] * b[0];
        worst_s = std::max({worst_s, std::abs(flux[0][k] - sx), std::abs(flux[1][k] - sy),
                            std::abs(flux[2][k] - sz)});
        double r = 0.5 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + b[0] * b[0] +
                          b[1] * b[1] + b[2] * b[2]);
        worst_rho = std::max(worst_rho, std::abs(rho[k] - r));
    }
    CHECK(worst_s < 1e-12);
    CHECK(worst_rho < 1e-12);
}

TEST_CASE("energy is conserved to roundoff over long times") {
    auto s = ripple_state(8, 0.7);
    double e0 = total_energy(s);
    auto s_t = propagate_em(s, 100.0);
    CHECK(std::abs(total_energy(s_t) - e0) < 1e-10 * e0);
}

TEST_CASE("a single-shell plane wave returns at its period") {
    const int n = 16;
    const double dx = 0.5;
    const double k = 2.0 * M_PI / (n * dx);
    for (auto pol : {Polarization::Circular, Polarization::Linear}) {
        auto s = make_plane_wave(1, 1, n, dx, 0, 0, 1, pol);
        auto back = propagate_em(s, 2.0 * M_PI / k);
        CHECK(max_component_diff(back, s) < 1e-10);
    }
}

TEST_CASE("plane-wave construction validates its mode numbers") {
    CHECK_THROWS_AS((void)make_plane_wave(8, 8, 8, 0.5, 1, 1, 0, Polarization::Circular),
                    ConfigError);
    CHECK_THROWS_AS((void)make_plane_wave(8, 8, 8, 0.5, 0, 0, 0, Polarization::Circular),
                    ConfigError);
}

TEST_CASE("non-finite samples are rejected") {
    CHECK_THROWS_AS((void)make_em_state(1, 1, 8, 0.5,
                                        [](double, double, double z) {
                                            std::array<cplx, 6> v{};
                                            v[0] = z == 0.0 ? std::nan("") : 1.0;
                                            return v;
                                        }),
                    NumericDomainError);
}

TEST_CASE("continuity holds and sharpens at second order in dt") {
    const int n = 64;
    const double dx = 0.2;
    auto s = make_plane_wave(1, 1, n, dx, 0, 0, 1, Polarization::Linear);
    const double t0 = 0.3;

    auto residual_at = [&](double dt) {
        std::vector<EmFieldState> traj;
        traj.push_back(propagate_em(s, t0 - dt));
        traj.push_back(propagate_em(s, t0));
        traj.push_back(propagate_em(s, t0 + dt));
        return continuity_residual(traj, dt);
    };

    double r1 = residual_at(1e-3);
    double r2 = residual_at(2e-3);
    CHECK(r1 < 1e-4);
    double ratio = r2 / r1;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("a circular wave carries a steady density") {
    // both polarizations rotate inside the same energy shell; the circular
    // combination keeps rho constant so the residual collapses to roundoff
    const int n = 32;
    auto s = make_plane_wave(1, 1, n, 0.4, 0, 0, 1, Polarization::Circular);
    std::vector<EmFieldState> traj;
    const double dt = 1e-3;
    for (int k = -1; k <= 1; ++k) traj.push_back(propagate_em(s, 0.3 + k * dt));
    CHECK(continuity_residual(traj, dt) < 1e-9);
}

TEST_CASE("the longitudinal projector removes divergence and is idempotent") {
    const int n = 16;
    const double dx = 0.5, L = n * dx, k = 2.0 * M_PI / L;
    // E has a longitudinal z-ripple: div E != 0
    auto s = make_em_state(n, n, n, dx, [&](double, double, double z) {
        std::array<cplx, 6> v{};
        v[2] = std::sin(k * z);
        v[4] = -(0.3 * std::cos(k * z));
        return v;
    });
    CHECK(max_divergence(s) > 0.1);
    auto proj = project_divergence_free(s);
    CHECK(max_divergence(proj) < 1e-12);
    auto proj2 = project_divergence_free(proj);
    CHECK(max_component_diff(proj2, proj) < 1e-13);

    auto wave = make_plane_wave(1, 1, 32, 0.4, 0, 0, 1, Polarization::Linear);
    auto wave_proj = project_divergence_free(wave);
    CHECK(max_component_diff(wave_proj, wave) < 1e-13);
}

TEST_CASE("the linear wave travels at unit speed") {
    // E_x = B_y = cos(k z) at t = 0 solves the pair of curl equations as
    // the travelling profile cos(k (z - t))
    const int n = 32;
    const double dx = 0.4, L = n * dx, k = 2.0 * M_PI / L;
    auto s = make_plane_wave(1, 1, n, dx, 0, 0, 1, Polarization::Linear);
    const double t = 0.77;
    auto st = propagate_em(s, t);
    double worst = 0.0;
    for (int iz = 0; iz < n; ++iz) {
        double z = iz * dx;
        std::size_t idx = s.index(0, 0, iz);
        worst = std::max(worst, std::abs(st.comp[0][idx].real() - std::cos(k * (z - t))));
        worst = std::max(worst, std::abs(-st.comp[4][idx].real() - std::cos(k * (z - t))));
    }
    CHECK(worst < 1e-10);
}
