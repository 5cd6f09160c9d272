#pragma once

#include <complex>
#include <vector>

namespace phasewave {

// Thin FFTW front end. All transforms are unnormalized (forward kernel
// e^{-2 pi i jk/n}); callers apply their own scale factors. Plans are
// created with FFTW_ESTIMATE only, so planning is deterministic, and are
// cached behind a mutex keyed by shape; execution is lock-free.
inline constexpr int fft_forward = -1;
inline constexpr int fft_inverse = +1;

// In-place batched 1-D transform over one axis of a row-major n0 x n1
// complex array. axis 0 transforms columns (length n0), axis 1 rows
// (length n1).
void fft_axis(std::complex<double>* data, int n0, int n1, int axis, int sign);

// In-place 3-D transform of a row-major nx x ny x nz array (z fastest).
void fft_3d(std::complex<double>* data, int nx, int ny, int nz, int sign);

// In-place 1-D transform of a contiguous array.
void fft_1d(std::complex<double>* data, int n, int sign);

// Frequency k_j = 2 pi j / (n * step) with the usual wrap: j for
// j < (n+1)/2, j - n above. Index j matches the unshifted FFT layout.
std::vector<double> fft_frequencies(int n, double step);

} // namespace phasewave
