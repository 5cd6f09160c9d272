#include "phasewave/wigner.hpp"

#include "phasewave/errors.hpp"
#include "phasewave/fft.hpp"
#include "phasewave/propagator.hpp"
#include "phasewave/reduce.hpp"
#include "phasewave/wavefunction.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace phasewave {

namespace {

using cplx = std::complex<double>;

void normalize_qstate(QuantumState1D& psi) {
    KahanSum s;
    for (const auto& v : psi.values) s.add(std::norm(v));
    double n2 = s.value() * psi.dq();
    if (n2 <= 0.0) throw DegenerateStateError("quantum state has zero norm");
    double inv = 1.0 / std::sqrt(n2);
    for (auto& v : psi.values) v *= inv;
}

} // namespace

QuantumState1D harmonic_eigenstate(int level, double q_min, double q_max, int n,
                                   double hbar, double mass, double omega) {
    if (level != 0 && level != 1)
        throw ConfigError("harmonic_eigenstate supports levels 0 and 1");
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
    if (!(mass > 0.0)) throw ConfigError("mass must be positive");
    if (!(omega > 0.0)) throw ConfigError("omega must be positive");
    if (q_max <= q_min) throw ConfigError("q bounds inverted");
    if (n < 4) throw ConfigError("n must be at least 4");

    QuantumState1D psi;
    psi.q_min = q_min;
    psi.q_max = q_max;
    psi.n = n;
    psi.hbar = hbar;
    psi.values.resize(static_cast<std::size_t>(n));

    double alpha = mass * omega / hbar;
    for (int i = 0; i < n; ++i) {
        double q = psi.q_at(i);
        double g = std::exp(-0.5 * alpha * q * q);
        psi.values[i] = level == 0 ? g : std::sqrt(2.0 * alpha) * q * g;
    }
    normalize_qstate(psi);
    return psi;
}

WignerFunction gaussian_wigner(const PhaseSpaceGrid& grid, double q0, double p0,
                               double sigma_q, double sigma_p, double hbar) {
    if (!(sigma_q > 0.0)) throw ConfigError("sigma_q must be positive");
    if (!(sigma_p > 0.0)) throw ConfigError("sigma_p must be positive");
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
    WignerFunction w;
    w.grid = grid;
    w.hbar = hbar;
    w.values.resize(grid.size());
    double amp = 1.0 / (2.0 * std::numbers::pi * sigma_q * sigma_p);
    for (int i = 0; i < grid.n_q; ++i) {
        double aq = (grid.q_at(i) - q0) / sigma_q;
        for (int j = 0; j < grid.n_p; ++j) {
            double ap = (grid.p_at(j) - p0) / sigma_p;
            w.at(i, j) = amp * std::exp(-0.5 * (aq * aq + ap * ap));
        }
    }
    return w;
}

WignerFunction wigner_from_psi(const QuantumState1D& psi) {
    int n = psi.n;
    if (n % 2 != 0) throw ShapeError("wigner_from_psi: n must be even");
    if (psi.values.size() != static_cast<std::size_t>(n))
        throw ShapeError("wigner_from_psi: value count does not match n");
    if (!(psi.hbar > 0.0)) throw ConfigError("hbar must be positive");

    // Compactness precondition: the construction zero-pads outside the
    // grid, which is only faithful if the state lives in the inner half.
    KahanSum total, inner;
    for (int i = 0; i < n; ++i) {
        double m = std::norm(psi.values[i]);
        total.add(m);
        if (i >= n / 4 && i < 3 * n / 4) inner.add(m);
    }
    if (total.value() <= 0.0) throw DegenerateStateError("wigner_from_psi: zero state");
    double inner_fraction = inner.value() / total.value();
    if (inner_fraction < 1.0 - 1e-12) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3e", 1.0 - inner_fraction);
        throw PreconditionError(
            "wigner_from_psi: state is not compact on the grid (mass outside the inner half " +
            std::string(buf) + ", allowed 1e-12)");
    }

    double dq = psi.dq();
    double dp = std::numbers::pi * psi.hbar / (n * dq);

    WignerFunction w;
    w.hbar = psi.hbar;
    w.grid = make_grid(psi.q_min, psi.q_max, n, -0.5 * n * dp, 0.5 * n * dp, n, false, false);
    w.values.resize(w.grid.size());

    std::vector<cplx> corr(static_cast<std::size_t>(n));
    double scale = dq / (std::numbers::pi * psi.hbar);
    for (int i = 0; i < n; ++i) {
        // corr[j mod n] = psi(q_i + j dq) conj(psi(q_i - j dq)), zero-padded
        for (int m = 0; m < n; ++m) {
            int j = m < n / 2 ? m : m - n;
            int a = i + j, b = i - j;
            corr[m] = (a >= 0 && a < n && b >= 0 && b < n)
                          ? psi.values[a] * std::conj(psi.values[b])
                          : cplx(0.0, 0.0);
        }
        fft_1d(corr.data(), n, fft_forward);
        for (int m = 0; m < n; ++m)
            w.at(i, m) = scale * corr[(m + n / 2) % n].real();
    }
    return w;
}

std::vector<double> moyal_rhs(const WignerFunction& w, const HamiltonianSpec& h) {
    if (h.potential_degree() > 4)
        throw UnsupportedError("moyal_rhs supports potentials of degree <= 4");
    int nq = w.grid.n_q, np = w.grid.n_p;
    if (w.values.size() != w.grid.size())
        throw ShapeError("moyal_rhs: value count does not match grid");

    std::vector<double> kq = fft_frequencies(nq, w.grid.dq());
    std::vector<double> kp = fft_frequencies(np, w.grid.dp());

    std::vector<cplx> dq_w(w.values.size());
    for (std::size_t k = 0; k < w.values.size(); ++k) dq_w[k] = w.values[k];
    fft_axis(dq_w.data(), nq, np, 0, fft_forward);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < np; ++j) dq_w[w.grid.index(i, j)] *= cplx(0.0, kq[i]);
    fft_axis(dq_w.data(), nq, np, 0, fft_inverse);

    std::vector<cplx> hat_p(w.values.size());
    for (std::size_t k = 0; k < w.values.size(); ++k) hat_p[k] = w.values[k];
    fft_axis(hat_p.data(), nq, np, 1, fft_forward);
    std::vector<cplx> dp_w = hat_p;
    std::vector<cplx> dp3_w = std::move(hat_p);
    for (int i = 0; i < nq; ++i) {
        for (int j = 0; j < np; ++j) {
            std::size_t k = w.grid.index(i, j);
            dp_w[k] *= cplx(0.0, kp[j]);
            dp3_w[k] *= cplx(0.0, -kp[j] * kp[j] * kp[j]); // (i k)^3 = -i k^3
        }
    }
    fft_axis(dp_w.data(), nq, np, 1, fft_inverse);
    fft_axis(dp3_w.data(), nq, np, 1, fft_inverse);

    double inv_nq = 1.0 / nq, inv_np = 1.0 / np;
    double m = h.mass();
    double c3 = w.hbar * w.hbar / 24.0;
    std::vector<double> rhs(w.values.size());
    for (int i = 0; i < nq; ++i) {
        double vp = h.v_prime(w.grid.q_at(i));
        double vppp = h.v_third(w.grid.q_at(i));
        for (int j = 0; j < np; ++j) {
            std::size_t k = w.grid.index(i, j);
            double p = w.grid.p_at(j);
            rhs[k] = -(p / m) * dq_w[k].real() * inv_nq +
                     vp * dp_w[k].real() * inv_np -
                     c3 * vppp * dp3_w[k].real() * inv_np;
        }
    }
    return rhs;
}

WignerFunction propagate_moyal(const WignerFunction& w, const HamiltonianSpec& h,
                               double t, double dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    double bound = 0.25 * w.grid.dq() * w.grid.dp();
    if (dt > bound)
        throw PreconditionError("propagate_moyal: dt = " + std::to_string(dt) +
                                " exceeds 0.25*dq*dp = " + std::to_string(bound));
    WignerFunction cur = w;
    if (t == 0.0) return cur;
    if (t < 0.0) throw ConfigError("t must be non-negative");

    int n_steps = static_cast<int>(std::ceil(t / dt));
    double step = t / n_steps;

    std::size_t sz = cur.values.size();
    for (int s = 0; s < n_steps; ++s) {
        std::vector<double> k1 = moyal_rhs(cur, h);
        WignerFunction tmp = cur;
        for (std::size_t k = 0; k < sz; ++k) tmp.values[k] = cur.values[k] + 0.5 * step * k1[k];
        std::vector<double> k2 = moyal_rhs(tmp, h);
        for (std::size_t k = 0; k < sz; ++k) tmp.values[k] = cur.values[k] + 0.5 * step * k2[k];
        std::vector<double> k3 = moyal_rhs(tmp, h);
        for (std::size_t k = 0; k < sz; ++k) tmp.values[k] = cur.values[k] + step * k3[k];
        std::vector<double> k4 = moyal_rhs(tmp, h);
        for (std::size_t k = 0; k < sz; ++k)
            cur.values[k] += step / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    return cur;
}

std::vector<GapPoint> classical_limit_gap(const WignerFunction& w0,
                                          const HamiltonianSpec& h,
                                          double t, double dt,
                                          const std::vector<double>& hbars,
                                          int advect_steps) {
    if (hbars.empty()) throw ConfigError("hbars must not be empty");

    // hbar-independent reference: Liouville advection of W0 as an amplitude
    KvnWaveFunction classical;
    classical.grid = w0.grid;
    classical.rep = Representation::QP;
    classical.values.assign(w0.values.begin(), w0.values.end());
    KvnWaveFunction advected = propagate_qp(classical, h, t, advect_steps);

    double cell = w0.grid.cell_area();
    std::vector<GapPoint> out;
    out.reserve(hbars.size());
    for (double hbar : hbars) {
        if (!(hbar > 0.0)) throw ConfigError("hbars entries must be positive");
        WignerFunction wq = w0;
        wq.hbar = hbar;
        WignerFunction evolved = propagate_moyal(wq, h, t, dt);
        KahanSum s;
        for (std::size_t k = 0; k < evolved.values.size(); ++k) {
            double d = evolved.values[k] - advected.values[k].real();
            s.add(d * d);
        }
        out.push_back({hbar, std::sqrt(s.value() * cell)});
    }
    return out;
}

} // namespace phasewave
