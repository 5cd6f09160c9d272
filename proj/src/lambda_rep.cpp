#include "phasewave/lambda_rep.hpp"

#include "phasewave/errors.hpp"
#include "phasewave/fft.hpp"

#include <cmath>
#include <numbers>

namespace phasewave {

namespace {

using cplx = std::complex<double>;

cplx polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

} // namespace

KvnWaveFunction to_lambda_rep(const KvnWaveFunction& psi) {
    if (psi.rep != Representation::QP)
        throw ShapeError("to_lambda_rep expects the (q,p) representation");
    int nq = psi.grid.n_q, np = psi.grid.n_p;
    if (np % 2 != 0) throw ShapeError("to_lambda_rep: n_p must be even");

    double dp = psi.grid.dp();
    double dlam = 2.0 * std::numbers::pi / (np * dp);
    double lam_edge = std::numbers::pi / dp;

    KvnWaveFunction out;
    out.grid = psi.grid;
    out.grid.p_min = -lam_edge;
    out.grid.p_max = lam_edge;
    out.grid.periodic_p = true;
    out.rep = Representation::QLambdaP;
    out.values.resize(psi.values.size());

    std::vector<cplx> row(static_cast<std::size_t>(np));
    double scale = dp / std::sqrt(2.0 * std::numbers::pi);
    for (int i = 0; i < nq; ++i) {
        for (int j = 0; j < np; ++j) row[j] = psi.at(i, j);
        fft_1d(row.data(), np, fft_inverse);
        for (int m = 0; m < np; ++m) {
            double lam = (m - np / 2) * dlam;
            out.at(i, m) = scale * polar_unit(psi.grid.p_min * lam) * row[(m + np / 2) % np];
        }
    }
    return out;
}

KvnWaveFunction from_lambda_rep(const KvnWaveFunction& psi_lambda,
                                double p_min, double p_max, bool periodic_p) {
    if (psi_lambda.rep != Representation::QLambdaP)
        throw ShapeError("from_lambda_rep expects the lambda representation");
    int nq = psi_lambda.grid.n_q, np = psi_lambda.grid.n_p;
    double dlam = psi_lambda.grid.dp();
    double dp_expected = 2.0 * std::numbers::pi / (np * dlam);
    double dp_given = (p_max - p_min) / np;
    if (!(p_max > p_min) || std::abs(dp_given - dp_expected) > 1e-12 * dp_expected)
        throw ShapeError("from_lambda_rep: momentum window is not dual to the lambda grid");

    KvnWaveFunction out;
    out.grid = psi_lambda.grid;
    out.grid.p_min = p_min;
    out.grid.p_max = p_max;
    out.grid.periodic_p = periodic_p;
    out.rep = Representation::QP;
    out.values.resize(psi_lambda.values.size());

    std::vector<cplx> buf(static_cast<std::size_t>(np));
    double scale = dlam / std::sqrt(2.0 * std::numbers::pi);
    for (int i = 0; i < nq; ++i) {
        for (int m = 0; m < np; ++m) {
            double lam = (m - np / 2) * dlam;
            buf[(m + np / 2) % np] = psi_lambda.at(i, m) * polar_unit(-p_min * lam);
        }
        fft_1d(buf.data(), np, fft_forward);
        for (int j = 0; j < np; ++j) out.at(i, j) = scale * buf[j];
    }
    return out;
}

KvnWaveFunction propagate_lambda(const KvnWaveFunction& psi_lambda,
                                 const HamiltonianSpec& h, double t, double dt) {
    if (psi_lambda.rep != Representation::QLambdaP)
        throw ShapeError("propagate_lambda expects the lambda representation");
    if (h.mass() != 1.0)
        throw UnsupportedError("propagate_lambda is restricted to mass = 1");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");

    KvnWaveFunction cur = psi_lambda;
    if (t == 0.0) return cur;

    int nq = cur.grid.n_q, nl = cur.grid.n_p;
    int n_steps = std::max(1, static_cast<int>(std::llround(std::abs(t) / dt)));
    double step = t / n_steps;

    std::vector<double> kq = fft_frequencies(nq, cur.grid.dq());
    std::vector<double> kl = fft_frequencies(nl, cur.grid.dp());

    // Per-node multipliers reused across steps.
    std::vector<cplx> half_kick(cur.values.size());
    for (int i = 0; i < nq; ++i) {
        double vp = h.v_prime(cur.grid.q_at(i));
        for (int m = 0; m < nl; ++m)
            half_kick[cur.grid.index(i, m)] = polar_unit(-vp * cur.grid.p_at(m) * step * 0.5);
    }
    std::vector<cplx> kinetic(cur.values.size());
    for (int i = 0; i < nq; ++i)
        for (int m = 0; m < nl; ++m)
            kinetic[cur.grid.index(i, m)] = polar_unit(-kq[i] * kl[m] * step);

    double inv_n = 1.0 / (static_cast<double>(nq) * nl);
    for (int s = 0; s < n_steps; ++s) {
        for (std::size_t k = 0; k < cur.values.size(); ++k) cur.values[k] *= half_kick[k];
        fft_axis(cur.values.data(), nq, nl, 1, fft_forward);
        fft_axis(cur.values.data(), nq, nl, 0, fft_forward);
        for (std::size_t k = 0; k < cur.values.size(); ++k) cur.values[k] *= kinetic[k];
        fft_axis(cur.values.data(), nq, nl, 1, fft_inverse);
        fft_axis(cur.values.data(), nq, nl, 0, fft_inverse);
        for (std::size_t k = 0; k < cur.values.size(); ++k) cur.values[k] *= inv_n;
        for (std::size_t k = 0; k < cur.values.size(); ++k) cur.values[k] *= half_kick[k];
    }
    return cur;
}

std::vector<double> probability_current(const KvnWaveFunction& psi_lambda) {
    if (psi_lambda.rep != Representation::QLambdaP)
        throw ShapeError("probability_current expects the lambda representation");
    int nq = psi_lambda.grid.n_q, nl = psi_lambda.grid.n_p;

    std::vector<double> kq = fft_frequencies(nq, psi_lambda.grid.dq());
    std::vector<double> kl = fft_frequencies(nl, psi_lambda.grid.dp());

    std::vector<cplx> work = psi_lambda.values;
    fft_axis(work.data(), nq, nl, 1, fft_forward);
    fft_axis(work.data(), nq, nl, 0, fft_forward);
    for (int i = 0; i < nq; ++i)
        for (int m = 0; m < nl; ++m)
            work[psi_lambda.grid.index(i, m)] *= -kq[i] * kl[m];
    fft_axis(work.data(), nq, nl, 1, fft_inverse);
    fft_axis(work.data(), nq, nl, 0, fft_inverse);

    double inv_n = 1.0 / (static_cast<double>(nq) * nl);
    std::vector<double> j_field(work.size());
    for (std::size_t k = 0; k < work.size(); ++k)
        j_field[k] = 2.0 * std::imag(std::conj(psi_lambda.values[k]) * work[k] * inv_n);
    return j_field;
}

} // namespace phasewave
