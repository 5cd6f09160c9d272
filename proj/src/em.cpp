#include "phasewave/em.hpp"

#include "phasewave/errors.hpp"
#include "phasewave/fft.hpp"
#include "phasewave/reduce.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace phasewave {

namespace {

using cplx = std::complex<double>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6c = Eigen::Matrix<cplx, 6, 1>;

std::array<Mat6, 3> build_beta_raw() {
    Mat6 bx = Mat6::Zero(), by = Mat6::Zero(), bz = Mat6::Zero();
    // coupling of E rows to the stored -B block and vice versa
    bx(1, 5) = -1; bx(2, 4) = 1;
    bx(4, 2) = 1;  bx(5, 1) = -1;

    by(0, 5) = 1;  by(2, 3) = -1;
    by(3, 2) = -1; by(5, 0) = 1;

    bz(0, 4) = -1; bz(1, 3) = 1;
    bz(3, 1) = 1;  bz(4, 0) = -1;
    return {bx, by, bz};
}

void verify_beta(const std::array<Mat6, 3>& beta) {
    for (const Mat6& b : beta) {
        if ((b - b.transpose()).cwiseAbs().maxCoeff() != 0.0)
            throw Error("beta matrices must be symmetric");
    }
    // sample wave vectors: the symbol spectrum is {0, 0, +-|k|, +-|k|}
    const double samples[][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 2, 2}, {-3, 1, 2}};
    for (const auto& k : samples) {
        Mat6 sym = k[0] * beta[0] + k[1] * beta[1] + k[2] * beta[2];
        Eigen::SelfAdjointEigenSolver<Mat6> es(sym);
        double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        Eigen::Matrix<double, 6, 1> expected;
        expected << -kn, -kn, 0, 0, kn, kn;
        if ((es.eigenvalues() - expected).cwiseAbs().maxCoeff() > 1e-12 * kn)
            throw Error("beta symbol spectrum is not {0,0,+-|k|,+-|k|}");
    }
}

std::array<double, 3> axis_frequencies_at(const std::vector<double>& fx,
                                          const std::vector<double>& fy,
                                          const std::vector<double>& fz,
                                          int ix, int iy, int iz) {
    return {fx[ix], fy[iy], fz[iz]};
}

} // namespace

double EmFieldState::cell_volume() const {
    double v = 1.0;
    if (nx > 1) v *= dx;
    if (ny > 1) v *= dx;
    if (nz > 1) v *= dx;
    return v;
}

const std::array<Mat6, 3>& beta_matrices() {
    static const std::array<Mat6, 3> beta = [] {
        auto b = build_beta_raw();
        verify_beta(b);
        return b;
    }();
    return beta;
}

Mat6 beta_symbol(double kx, double ky, double kz) {
    const auto& b = beta_matrices();
    return kx * b[0] + ky * b[1] + kz * b[2];
}

EmFieldState make_em_state(int nx, int ny, int nz, double dx,
                           const std::function<std::array<cplx, 6>(double, double, double)>& sampler) {
    if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("grid extents must be at least 1");
    if (nx == 1 && ny == 1 && nz == 1) throw ConfigError("at least one axis must have extent > 1");
    if (!(dx > 0.0)) throw ConfigError("dx must be positive");

    EmFieldState s;
    s.nx = nx; s.ny = ny; s.nz = nz; s.dx = dx;
    for (auto& c : s.comp) c.resize(s.size());
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            for (int iz = 0; iz < nz; ++iz) {
                auto v = sampler(ix * dx, iy * dx, iz * dx);
                std::size_t idx = s.index(ix, iy, iz);
                for (int c = 0; c < 6; ++c) {
                    if (!std::isfinite(v[c].real()) || !std::isfinite(v[c].imag()))
                        throw NumericDomainError("field sampler returned a non-finite value");
                    s.comp[c][idx] = v[c];
                }
            }
        }
    }
    return s;
}

EmFieldState make_plane_wave(int nx, int ny, int nz, double dx,
                             int mx, int my, int mz, Polarization pol) {
    int nonzero = (mx != 0) + (my != 0) + (mz != 0);
    if (nonzero != 1)
        throw ConfigError("plane-wave factory needs exactly one nonzero mode number");

    // axis: propagation direction; (t1, t2) transverse axes in cyclic order
    int axis = mx != 0 ? 0 : (my != 0 ? 1 : 2);
    int t1 = (axis + 1) % 3, t2 = (axis + 2) % 3;
    int mode = mx + my + mz;
    int n_axis = axis == 0 ? nx : (axis == 1 ? ny : nz);
    double k = 2.0 * std::numbers::pi * mode / (n_axis * dx);

    return make_em_state(nx, ny, nz, dx, [=](double x, double y, double z) {
        double r[3] = {x, y, z};
        double phase = k * r[axis];
        std::array<cplx, 6> v{};
        if (pol == Polarization::Circular) {
            // E rotates in the transverse plane; B = axis_hat x E
            v[t1] = std::cos(phase);
            v[t2] = std::sin(phase);
            v[3 + t1] = -(-std::sin(phase)); // stored -B
            v[3 + t2] = -std::cos(phase);
        } else {
            v[t1] = std::cos(phase);
            v[3 + t2] = -std::cos(phase);
        }
        return v;
    });
}

EmFieldState propagate_em(const EmFieldState& state, double t) {
    EmFieldState out = state;
    if (t == 0.0) return out;

    for (int c = 0; c < 6; ++c)
        fft_3d(out.comp[c].data(), out.nx, out.ny, out.nz, fft_forward);

    std::vector<double> fx = fft_frequencies(out.nx, out.dx);
    std::vector<double> fy = fft_frequencies(out.ny, out.dx);
    std::vector<double> fz = fft_frequencies(out.nz, out.dx);

    for (int ix = 0; ix < out.nx; ++ix) {
        for (int iy = 0; iy < out.ny; ++iy) {
            for (int iz = 0; iz < out.nz; ++iz) {
                auto [kx, ky, kz] = axis_frequencies_at(fx, fy, fz, ix, iy, iz);
                if (kx == 0.0 && ky == 0.0 && kz == 0.0) continue;
                std::size_t idx = out.index(ix, iy, iz);
                Vec6c v;
                for (int c = 0; c < 6; ++c) v(c) = out.comp[c][idx];

                Eigen::SelfAdjointEigenSolver<Mat6> es(beta_symbol(kx, ky, kz));
                Eigen::Matrix<cplx, 6, 6> vecs = es.eigenvectors().cast<cplx>();
                Vec6c coeffs = vecs.transpose() * v;
                for (int c = 0; c < 6; ++c) {
                    double angle = -es.eigenvalues()(c) * t;
                    coeffs(c) *= cplx(std::cos(angle), std::sin(angle));
                }
                v = vecs * coeffs;
                for (int c = 0; c < 6; ++c) out.comp[c][idx] = v(c);
            }
        }
    }

    double inv_n = 1.0 / static_cast<double>(out.size());
    for (int c = 0; c < 6; ++c) {
        fft_3d(out.comp[c].data(), out.nx, out.ny, out.nz, fft_inverse);
        for (auto& z : out.comp[c]) z *= inv_n;
    }
    return out;
}

std::array<std::vector<double>, 3> poynting(const EmFieldState& state) {
    const auto& beta = beta_matrices();
    std::array<std::vector<double>, 3> s;
    for (auto& v : s) v.assign(state.size(), 0.0);
    for (std::size_t idx = 0; idx < state.size(); ++idx) {
        Vec6c psi;
        for (int c = 0; c < 6; ++c) psi(c) = state.comp[c][idx];
        for (int i = 0; i < 3; ++i) {
            cplx acc(0.0, 0.0);
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) {
                    double w = beta[i](a, b);
                    if (w != 0.0) acc += std::conj(psi(a)) * w * psi(b);
                }
            s[i][idx] = 0.5 * acc.real();
        }
    }
    return s;
}

std::vector<double> energy_density(const EmFieldState& state) {
    std::vector<double> rho(state.size(), 0.0);
    for (int c = 0; c < 6; ++c)
        for (std::size_t idx = 0; idx < state.size(); ++idx)
            rho[idx] += 0.5 * std::norm(state.comp[c][idx]);
    return rho;
}

double total_energy(const EmFieldState& state) {
    std::vector<double> rho = energy_density(state);
    KahanSum s;
    for (double r : rho) s.add(r);
    return s.value() * state.cell_volume();
}

namespace {

// Spectral divergence of a 3-vector field given as three real lattices.
std::vector<double> spectral_divergence(const EmFieldState& shape,
                                        const std::array<std::vector<double>, 3>& field) {
    std::vector<double> fx = fft_frequencies(shape.nx, shape.dx);
    std::vector<double> fy = fft_frequencies(shape.ny, shape.dx);
    std::vector<double> fz = fft_frequencies(shape.nz, shape.dx);

    std::vector<cplx> acc(shape.size(), cplx(0.0));
    std::vector<cplx> work(shape.size());
    for (int axis = 0; axis < 3; ++axis) {
        for (std::size_t i = 0; i < shape.size(); ++i) work[i] = field[axis][i];
        fft_3d(work.data(), shape.nx, shape.ny, shape.nz, fft_forward);
        for (int ix = 0; ix < shape.nx; ++ix)
            for (int iy = 0; iy < shape.ny; ++iy)
                for (int iz = 0; iz < shape.nz; ++iz) {
                    double k = axis == 0 ? fx[ix] : (axis == 1 ? fy[iy] : fz[iz]);
                    acc[shape.index(ix, iy, iz)] += cplx(0.0, k) * work[shape.index(ix, iy, iz)];
                }
    }
    fft_3d(acc.data(), shape.nx, shape.ny, shape.nz, fft_inverse);
    double inv_n = 1.0 / static_cast<double>(shape.size());
    std::vector<double> out(shape.size());
    for (std::size_t i = 0; i < shape.size(); ++i) out[i] = acc[i].real() * inv_n;
    return out;
}

} // namespace

double continuity_residual(const std::vector<EmFieldState>& trajectory, double dt) {
    if (trajectory.size() < 3)
        throw ConfigError("continuity_residual needs at least 3 snapshots");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");

    double worst = 0.0;
    for (std::size_t n = 1; n + 1 < trajectory.size(); ++n) {
        std::vector<double> rho_prev = energy_density(trajectory[n - 1]);
        std::vector<double> rho_next = energy_density(trajectory[n + 1]);
        std::vector<double> div_s = spectral_divergence(trajectory[n], poynting(trajectory[n]));
        for (std::size_t i = 0; i < div_s.size(); ++i) {
            double resid = (rho_next[i] - rho_prev[i]) / (2.0 * dt) + div_s[i];
            worst = std::max(worst, std::abs(resid));
        }
    }
    return worst;
}

EmFieldState project_divergence_free(const EmFieldState& state) {
    EmFieldState out = state;
    for (int c = 0; c < 6; ++c)
        fft_3d(out.comp[c].data(), out.nx, out.ny, out.nz, fft_forward);

    std::vector<double> fx = fft_frequencies(out.nx, out.dx);
    std::vector<double> fy = fft_frequencies(out.ny, out.dx);
    std::vector<double> fz = fft_frequencies(out.nz, out.dx);

    for (int ix = 0; ix < out.nx; ++ix)
        for (int iy = 0; iy < out.ny; ++iy)
            for (int iz = 0; iz < out.nz; ++iz) {
                double kv[3] = {fx[ix], fy[iy], fz[iz]};
                double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
                if (k2 == 0.0) continue;
                std::size_t idx = out.index(ix, iy, iz);
                for (int block = 0; block < 6; block += 3) {
                    cplx dot(0.0, 0.0);
                    for (int a = 0; a < 3; ++a) dot += kv[a] * out.comp[block + a][idx];
                    dot /= k2;
                    for (int a = 0; a < 3; ++a) out.comp[block + a][idx] -= kv[a] * dot;
                }
            }

    double inv_n = 1.0 / static_cast<double>(out.size());
    for (int c = 0; c < 6; ++c) {
        fft_3d(out.comp[c].data(), out.nx, out.ny, out.nz, fft_inverse);
        for (auto& z : out.comp[c]) z *= inv_n;
    }
    return out;
}

double max_divergence(const EmFieldState& state) {
    std::array<std::vector<double>, 3> e, b;
    for (int a = 0; a < 3; ++a) {
        e[a].resize(state.size());
        b[a].resize(state.size());
        for (std::size_t i = 0; i < state.size(); ++i) {
            e[a][i] = state.comp[a][i].real();
            b[a][i] = -state.comp[3 + a][i].real();
        }
    }
    std::vector<double> de = spectral_divergence(state, e);
    std::vector<double> db = spectral_divergence(state, b);
    double worst_e = 0.0, worst_b = 0.0;
    for (double v : de) worst_e = std::max(worst_e, std::abs(v));
    for (double v : db) worst_b = std::max(worst_b, std::abs(v));
    return worst_e + worst_b;
}

} // namespace phasewave
