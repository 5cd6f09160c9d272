#include "doctest.h"

#include "phasewave/beam.hpp"
#include "phasewave/errors.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace phasewave;
using cplx = std::complex<double>;

namespace {

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1p-53; }

BeamState random_product(std::mt19937_64& rng) {
    return product_state(M_PI * uniform01(rng), M_PI * uniform01(rng));
}

}  // namespace

TEST_CASE("correlations follow the rotated-analyzer closed forms") {
    auto bell = bell_state();
    for (double a : {0.0, 0.3, 1.1}) {
        for (double b : {-0.2, 0.45, 2.0}) {
            CHECK(correlation(bell, a, b) == doctest::Approx(std::cos(2.0 * (a - b))).epsilon(1e-12));
        }
    }

    auto prod = product_state(0.4, -0.7);
    for (double a : {0.0, 0.9}) {
        for (double b : {0.2, 1.7}) {
            CHECK(correlation(prod, a, b) ==
                  doctest::Approx(std::cos(2.0 * (a - 0.4)) * std::cos(2.0 * (b + 0.7)))
                      .epsilon(1e-12));
        }
    }

    auto partial = schmidt_state(0.6);
    for (double a : {0.25, 1.3}) {
        for (double b : {-0.6, 0.8}) {
            double ref = std::cos(2.0 * a) * std::cos(2.0 * b) +
                         0.6 * std::sin(2.0 * a) * std::sin(2.0 * b);
            CHECK(correlation(partial, a, b) == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("the canonical angles reach the algebraic maximum") {
    double s = chsh(bell_state(), 0.0, M_PI / 4.0, M_PI / 8.0, 3.0 * M_PI / 8.0);
    CHECK(std::abs(s - 2.0 * std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("product states never pass 2") {
    std::mt19937_64 rng(0x5eedULL);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto st = random_product(rng);
        double s = chsh(st, 0.0, M_PI / 4.0, M_PI / 8.0, 3.0 * M_PI / 8.0);
        worst = std::max(worst, std::abs(s));
        if (trial % 10 == 0) {
            double a = M_PI * uniform01(rng), ap = M_PI * uniform01(rng);
            double b = M_PI * uniform01(rng), bp = M_PI * uniform01(rng);
            worst = std::max(worst, std::abs(chsh(st, a, ap, b, bp)));
        }
    }
    CHECK(worst <= 2.0 + 1e-9);
}

TEST_CASE("scan maxima grow with refinement and approach the closed form") {
    auto bell = bell_state();
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
        auto r = chsh_max_scan(bell, n);
        CHECK(r.s_max >= prev - 1e-12);
        prev = r.s_max;
    }
    CHECK(std::abs(prev - chsh_max_closed_form(1.0)) < 0.05);

    auto partial = schmidt_state(0.5);
    auto r = chsh_max_scan(partial, 32);
    CHECK(std::abs(r.s_max - chsh_max_closed_form(0.5)) < 0.05);
    CHECK(r.s_max <= chsh_max_closed_form(0.5) + 1e-12);
    // the reported angles reproduce the reported value
    CHECK(chsh(partial, r.a, r.a_prime, r.b, r.b_prime) == doctest::Approx(r.s_max).epsilon(1e-12));
}

TEST_CASE("closed-form optimum endpoints") {
    CHECK(chsh_max_closed_form(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chsh_max_closed_form(1.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("schmidt decomposition recovers the built-in families") {
    auto bell = schmidt_decompose(bell_state());
    CHECK(std::abs(bell.lambda1 - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.lambda2 - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.concurrence - 1.0) < 1e-12);

    auto prod = schmidt_decompose(product_state(0.7, 1.2));
    CHECK(std::abs(prod.lambda1 - 1.0) < 1e-12);
    CHECK(std::abs(prod.concurrence) < 1e-12);

    for (double c : {0.3, 0.8}) {
        auto r = schmidt_decompose(schmidt_state(c));
        CHECK(std::abs(r.concurrence - c) < 1e-12);
        CHECK(std::abs(r.lambda1 * r.lambda1 + r.lambda2 * r.lambda2 - 1.0) < 1e-12);
    }
}

TEST_CASE("schmidt modes rebuild the state") {
    std::mt19937_64 rng(0xfeedULL);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<cplx, 4> amps;
        for (auto& a : amps) a = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
        auto st = make_beam_state(amps);
        auto r = schmidt_decompose(st);
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                cplx rebuilt = r.lambda1 * (i == 0 ? r.pol_mode1[0] : r.pol_mode1[1]) *
                                   (j == 0 ? r.path_mode1[0] : r.path_mode1[1]) +
                               r.lambda2 * (i == 0 ? r.pol_mode2[0] : r.pol_mode2[1]) *
                                   (j == 0 ? r.path_mode2[0] : r.path_mode2[1]);
                worst = std::max(worst, std::abs(rebuilt - st.at(i, j)));
            }
        }
        CHECK(worst < 1e-12);
        // scan never beats the closed form for the measured concurrence
        auto scan = chsh_max_scan(st, 16);
        CHECK(scan.s_max <= chsh_max_closed_form(r.concurrence) + 1e-9);
    }
}

TEST_CASE("parity witness values are state independent") {
    std::mt19937_64 rng(0xabcdULL);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<cplx, 4> amps;
        for (auto& a : amps) a = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
        auto st = trial == 0 ? bell_state() : make_beam_state(amps);
        auto r = mermin_peres_witness(st);
        for (int row = 0; row < 3; ++row) CHECK(std::abs(r.row_values[row] - 1.0) < 1e-12);
        CHECK(std::abs(r.col_values[0] - 1.0) < 1e-12);
        CHECK(std::abs(r.col_values[1] - 1.0) < 1e-12);
        CHECK(std::abs(r.col_values[2] + 1.0) < 1e-12);
        CHECK(std::abs(r.witness - 6.0) < 1e-12);
        CHECK(r.noncontextual_bound == 4.0);
    }
}

TEST_CASE("degenerate amplitudes are rejected") {
    CHECK_THROWS_AS((void)make_beam_state({cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)}),
                    DegenerateStateError);
}

TEST_CASE("unnormalized states are rejected at the correlator") {
    BeamState raw;
    raw.c = {cplx(0.5), cplx(0.0), cplx(0.0), cplx(0.0)};
    CHECK_THROWS_AS((void)correlation(raw, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS((void)chsh(raw, 0.0, 1.0, 2.0, 3.0), PreconditionError);
}

TEST_CASE("scan grid bounds are validated") {
    CHECK_THROWS_AS((void)chsh_max_scan(bell_state(), 1), ConfigError);
    CHECK_THROWS_AS((void)chsh_max_scan(bell_state(), 1000), ConfigError);
}
