#include "doctest.h"

#include "phasewave/errors.hpp"
#include "phasewave/grid.hpp"
#include "phasewave/hamiltonian.hpp"
#include "phasewave/observable.hpp"
#include "phasewave/propagator.hpp"
#include "phasewave/reduce.hpp"
#include "phasewave/wavefunction.hpp"

#include <cmath>
#include <complex>

using namespace phasewave;

namespace {

double rel_l2(const KvnWaveFunction& a, const KvnWaveFunction& b) {
    KahanSum num, den;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num.add(std::norm(a.values[i] - b.values[i]));
        den.add(std::norm(b.values[i]));
    }
    return std::sqrt(num.value() / den.value());
}

}  // namespace

TEST_CASE("free advection matches the analytic shear") {
    auto g = make_grid(-8.0, 8.0, 256, -8.0, 8.0, 256);
    auto h = HamiltonianSpec::free_particle(1.0);
    auto psi0 = gaussian_state(g, -0.5, 0.6, 0.7, 0.6);
    const double t = 0.8;
    auto psi_t = propagate_qp(psi0, h, t);
    auto exact = make_wavefunction(g, [&](double q, double p) {
        double s_q = 0.7 * std::sqrt(2.0), s_p = 0.6 * std::sqrt(2.0);
        double amp = 1.0 / (M_PI * s_q * s_p);  // |psi|^2 integrates to 1
        double qq = (q - t * p) - (-0.5), pp = p - 0.6;
        return std::complex<double>(
            std::sqrt(amp) * std::exp(-qq * qq / (2.0 * s_q * s_q) - pp * pp / (2.0 * s_p * s_p)),
            0.0);
    });
    CHECK(rel_l2(psi_t, exact) < 1e-4);
}

TEST_CASE("harmonic advection returns at the period") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto psi0 = gaussian_state(g, 1.2, 0.0, 0.7, 0.7);
    auto psi_T = propagate_qp(psi0, h, 2.0 * M_PI);
    CHECK(rel_l2(psi_T, psi0) < 1e-3);
    CHECK(std::abs(norm(psi_T) - 1.0) < 1e-6);
}

TEST_CASE("one-shot advection keeps the norm") {
    auto g = make_grid(-6.0, 6.0, 256, -6.0, 6.0, 256);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto psi0 = gaussian_state(g, 1.0, 0.0, 0.7, 0.7);
    auto psi_t = propagate_qp(psi0, h, 2.0 * M_PI / 3.0);
    CHECK(std::abs(norm(psi_t) - 1.0) < 1e-6);
}

TEST_CASE("expectation rates follow the Poisson bracket") {
    // d<f>/dt = <{f, H}> checked with a central difference in t
    auto g = make_grid(-6.0, 6.0, 256, -6.0, 6.0, 256);
    const double t0 = 0.7, eps = 1e-3;

    auto run = [&](const HamiltonianSpec& h, double q0, double p0) {
        // sigma 0.35 keeps the quartic energy shells that cross p = +-6
        // within t0 out at ~6 sigma, below the outflow gate
        auto psi0 = gaussian_state(g, q0, p0, 0.35, 0.35);
        auto at = [&](double t) { return propagate_qp(psi0, h, t); };
        auto plus = at(t0 + eps);
        auto minus = at(t0 - eps);
        auto mid = at(t0);
        normalize(plus);
        normalize(minus);
        normalize(mid);

        struct Probe {
            ObservableFn f;
            ObservableFn bracket;  // {f, H}
        };
        const double m = h.mass();
        auto vprime_fn = ObservableFn::from_callable(
            [h](double q, double) { return h.v_prime(q); });
        std::vector<Probe> probes;
        probes.push_back({ObservableFn::coordinate_q(),
                          ObservableFn::coordinate_p() * (1.0 / m)});
        probes.push_back({ObservableFn::coordinate_p(), vprime_fn * (-1.0)});
        probes.push_back({ObservableFn::monomial(1.0, 2, 0),
                          ObservableFn::monomial(2.0 / m, 1, 1)});
        probes.push_back({ObservableFn::monomial(1.0, 0, 2),
                          ObservableFn::coordinate_p() * vprime_fn * (-2.0)});
        probes.push_back({ObservableFn::monomial(1.0, 1, 1),
                          ObservableFn::monomial(1.0 / m, 0, 2) +
                              ObservableFn::coordinate_q() * vprime_fn * (-1.0)});

        for (const auto& pr : probes) {
            double lhs = (expectation(plus, pr.f) - expectation(minus, pr.f)) / (2.0 * eps);
            double rhs = expectation(mid, pr.bracket);
            CHECK(std::abs(lhs - rhs) < 1e-3);
        }
    };

    run(HamiltonianSpec::harmonic(1.0, 1.0), 1.0, 0.3);
    run(HamiltonianSpec::quartic(1.0, 1.0, 1.0), 0.5, 0.2);
}

TEST_CASE("a constant phase never changes the evolved density") {
    auto g = make_grid(-6.0, 6.0, 128, -6.0, 6.0, 128);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto psi0 = gaussian_state(g, 1.0, 0.0, 0.7, 0.7);
    double d = superselection_check(psi0, [](double, double) { return 1.234; }, h, 1.0);
    CHECK(d < 1e-14);
}

TEST_CASE("a position-dependent phase is screened to interpolation error") {
    auto g = make_grid(-6.0, 6.0, 256, -6.0, 6.0, 256);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto psi0 = gaussian_state(g, 1.0, 0.0, 0.7, 0.7);
    auto field = [](double q, double p) {
        return 0.4 * std::sin(1.3 * q - 0.2) + 0.3 * std::cos(0.9 * p + 0.5) + 0.2 * q * p / 36.0;
    };
    double d = superselection_check(psi0, field, h, 1.0);
    CHECK(d < 1e-6);
}

TEST_CASE("mass leaving a truncated grid raises and reports the fraction") {
    auto g = make_grid(-1.0, 1.0, 32, -1.0, 1.0, 32);
    auto h = HamiltonianSpec::free_particle(1.0);
    auto psi0 = gaussian_state(g, 0.0, 0.0, 0.25, 0.25);
    bool threw = false;
    try {
        (void)propagate_qp(psi0, h, 5.0);
    } catch (const OutflowError& e) {
        threw = true;
        // free shear: P(|q + 5p| > 1) for the grid-truncated Gaussian
        CHECK(e.lost_mass_fraction > 0.40);
        CHECK(e.lost_mass_fraction < 0.47);
        CHECK(std::string(e.what()).find("lost mass") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("the lost-mass probe reports tiny fractions without throwing") {
    auto g = make_grid(-8.0, 8.0, 128, -8.0, 8.0, 128);
    auto h = HamiltonianSpec::harmonic(1.0, 1.0);
    auto psi0 = gaussian_state(g, 0.5, 0.0, 0.6, 0.6);
    double lost = -1.0;
    (void)propagate_qp(psi0, h, 1.0, 256, &lost);
    CHECK(lost >= 0.0);
    CHECK(lost <= 1e-6);
}

TEST_CASE("propagation rejects the wrong representation") {
    auto g = make_grid(-6.0, 6.0, 64, -6.0, 6.0, 64);
    auto psi = gaussian_state(g, 0.0, 0.0, 1.0, 1.0);
    psi.rep = Representation::QLambdaP;
    CHECK_THROWS_AS((void)propagate_qp(psi, HamiltonianSpec::free_particle(1.0), 1.0),
                    ShapeError);
}
