#include "phasewave/beam.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave {

namespace {

using cplx = std::complex<double>;

constexpr double kTsirelson = 2.0 * 1.4142135623730951;

Eigen::Vector4cd as_vector(const BeamState& s) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = s.c[i];
    return v;
}

void check_normalized(const BeamState& s) {
    double n2 = 0.0;
    for (const auto& a : s.c) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw PreconditionError("beam state norm^2 = " + std::to_string(n2) +
                                ", expected 1 (use make_beam_state)");
    }
}

// Rotated single-mode basis vectors; column s of the analyzer at angle theta.
Eigen::Vector2cd analyzer_vector(double theta, int outcome) {
    Eigen::Vector2cd v;
    if (outcome == 0) {
        v << std::cos(theta), std::sin(theta);
    } else {
        v << -std::sin(theta), std::cos(theta);
    }
    return v;
}

}  // namespace

BeamState bell_state() {
    const double r = 1.0 / std::sqrt(2.0);
    BeamState s;
    s.c = {cplx(r, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(r, 0.0)};
    return s;
}

BeamState product_state(double theta_pol, double theta_path) {
    const double cp = std::cos(theta_pol), sp = std::sin(theta_pol);
    const double cq = std::cos(theta_path), sq = std::sin(theta_path);
    BeamState s;
    s.c = {cplx(cp * cq, 0.0), cplx(cp * sq, 0.0), cplx(sp * cq, 0.0), cplx(sp * sq, 0.0)};
    return s;
}

BeamState schmidt_state(double concurrence) {
    if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
        throw ConfigError("concurrence must lie in [0, 1], got " + std::to_string(concurrence));
    }
    // lambda1^2 + lambda2^2 = 1 and 2*lambda1*lambda2 = C.
    const double root = std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence));
    const double l1 = std::sqrt(0.5 * (1.0 + root));
    const double l2 = std::sqrt(0.5 * (1.0 - root));
    BeamState s;
    s.c = {cplx(l1, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(l2, 0.0)};
    return s;
}

BeamState make_beam_state(const std::array<std::complex<double>, 4>& amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NumericDomainError("beam amplitude is not finite");
        }
        n2 += std::norm(a);
    }
    if (n2 < 1e-300) throw DegenerateStateError("beam state has zero norm");
    const double inv = 1.0 / std::sqrt(n2);
    BeamState s;
    for (int i = 0; i < 4; ++i) s.c[i] = amplitudes[i] * inv;
    return s;
}

SchmidtResult schmidt_decompose(const BeamState& state) {
    check_normalized(state);
    Eigen::Matrix2cd m;
    m << state.at(0, 0), state.at(0, 1), state.at(1, 0), state.at(1, 1);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);

    SchmidtResult r;
    r.lambda1 = svd.singularValues()(0);
    r.lambda2 = svd.singularValues()(1);
    r.concurrence = 2.0 * r.lambda1 * r.lambda2;
    const auto& u = svd.matrixU();
    const auto& v = svd.matrixV();
    // |psi> = sum_k lambda_k |u_k>(x)|conj(v_k)>, since M = U S V^dagger.
    for (int i = 0; i < 2; ++i) {
        r.pol_mode1[i] = u(i, 0);
        r.pol_mode2[i] = u(i, 1);
        r.path_mode1[i] = std::conj(v(i, 0));
        r.path_mode2[i] = std::conj(v(i, 1));
    }
    return r;
}

double correlation(const BeamState& state, double theta_pol, double theta_path) {
    check_normalized(state);
    const Eigen::Vector4cd psi = as_vector(state);
    double e = 0.0;
    for (int s1 = 0; s1 < 2; ++s1) {
        const Eigen::Vector2cd ea = analyzer_vector(theta_pol, s1);
        for (int s2 = 0; s2 < 2; ++s2) {
            const Eigen::Vector2cd eb = analyzer_vector(theta_path, s2);
            cplx amp = 0.0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    amp += std::conj(ea(i)) * std::conj(eb(j)) * psi(2 * i + j);
                }
            }
            const double sign = ((s1 == s2) ? 1.0 : -1.0);
            e += sign * std::norm(amp);
        }
    }
    return e;
}

double chsh(const BeamState& state, double a, double a_prime, double b, double b_prime) {
    const double s = correlation(state, a, b) - correlation(state, a, b_prime) +
                     correlation(state, a_prime, b) + correlation(state, a_prime, b_prime);
    if (std::abs(s) > kTsirelson + 1e-9) {
        throw NumericDomainError("CHSH value " + std::to_string(s) +
                                 " exceeds 2*sqrt(2); correlation evaluation is inconsistent");
    }
    return s;
}

ChshScanResult chsh_max_scan(const BeamState& state, int grid_n) {
    if (grid_n < 2 || grid_n > 256) {
        throw ConfigError("chsh_max_scan grid_n must lie in [2, 256], got " +
                          std::to_string(grid_n));
    }
    check_normalized(state);
    const int n = grid_n;
    const double step = M_PI / n;

    // E(theta_A, theta_B) over the full angle grid; O(n^2) evaluations,
    // then the four-angle search is table lookups only.
    std::vector<double> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            table[static_cast<std::size_t>(i) * n + j] =
                correlation(state, i * step, j * step);
        }
    }

    ChshScanResult best;
    best.s_max = -1e300;
    for (int ia = 0; ia < n; ++ia) {
        for (int iap = 0; iap < n; ++iap) {
            for (int ib = 0; ib < n; ++ib) {
                const double e_ab = table[static_cast<std::size_t>(ia) * n + ib];
                const double e_apb = table[static_cast<std::size_t>(iap) * n + ib];
                for (int ibp = 0; ibp < n; ++ibp) {
                    const double s = e_ab - table[static_cast<std::size_t>(ia) * n + ibp] +
                                     e_apb + table[static_cast<std::size_t>(iap) * n + ibp];
                    if (s > best.s_max) {
                        best.s_max = s;
                        best.a = ia * step;
                        best.a_prime = iap * step;
                        best.b = ib * step;
                        best.b_prime = ibp * step;
                    }
                }
            }
        }
    }
    if (best.s_max > kTsirelson + 1e-9) {
        throw NumericDomainError("CHSH scan maximum " + std::to_string(best.s_max) +
                                 " exceeds 2*sqrt(2); correlation evaluation is inconsistent");
    }
    return best;
}

double chsh_max_closed_form(double concurrence) {
    if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
        throw ConfigError("concurrence must lie in [0, 1], got " + std::to_string(concurrence));
    }
    return 2.0 * std::sqrt(1.0 + concurrence * concurrence);
}

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

}  // namespace

MerminPeresResult mermin_peres_witness(const BeamState& state) {
    check_normalized(state);
    const cplx im(0.0, 1.0);
    Eigen::Matrix2cd id2, sx, sy, sz;
    id2 << 1, 0, 0, 1;
    sx << 0, 1, 1, 0;
    sy << 0, -im, im, 0;
    sz << 1, 0, 0, -1;

    // 3x3 square of pairwise commuting observables along every row/column.
    const Eigen::Matrix4cd square[3][3] = {
        {kron2(sz, id2), kron2(id2, sz), kron2(sz, sz)},
        {kron2(id2, sx), kron2(sx, id2), kron2(sx, sx)},
        {kron2(sz, sx), kron2(sx, sz), kron2(sy, sy)},
    };

    const Eigen::Vector4cd psi = as_vector(state);
    MerminPeresResult r;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix4cd row_prod = square[i][0] * square[i][1] * square[i][2];
        const Eigen::Matrix4cd col_prod = square[0][i] * square[1][i] * square[2][i];
        r.row_values[i] = (psi.adjoint() * (row_prod * psi))(0).real();
        r.col_values[i] = (psi.adjoint() * (col_prod * psi))(0).real();
    }
    r.witness = r.row_values[0] + r.row_values[1] + r.row_values[2] + r.col_values[0] +
                r.col_values[1] - r.col_values[2];

    // Best achievable by a single +/-1 table filled in advance: exhaustive
    // search over all 2^9 assignments.
    double bound = -1e300;
    for (int mask = 0; mask < 512; ++mask) {
        double a[3][3];
        for (int k = 0; k < 9; ++k) a[k / 3][k % 3] = (mask >> k & 1) ? 1.0 : -1.0;
        double total = 0.0;
        for (int i = 0; i < 3; ++i) total += a[i][0] * a[i][1] * a[i][2];
        total += a[0][0] * a[1][0] * a[2][0];
        total += a[0][1] * a[1][1] * a[2][1];
        total -= a[0][2] * a[1][2] * a[2][2];
        bound = std::max(bound, total);
    }
    r.noncontextual_bound = bound;
    return r;
}

}  // namespace phasewave
