#include "phasewave/fft.hpp"

#include "phasewave/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace phasewave {

namespace {

std::mutex plan_mutex;

// Plans are made FFTW_UNALIGNED so a cached plan can execute on any buffer
// of the right shape through fftw_execute_dft.
fftw_plan get_many_plan(int n, int howmany, int stride, int dist, int sign) {
    using Key = std::tuple<int, int, int, int, int>;
    static std::map<Key, fftw_plan> cache;
    Key key{n, howmany, stride, dist, sign};
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * howmany +
                                              static_cast<std::size_t>(stride) * n);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int nn[1] = {n};
    fftw_plan plan = fftw_plan_many_dft(1, nn, howmany, buf, nullptr, stride, dist,
                                        buf, nullptr, stride, dist, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("fftw_plan_many_dft failed");
    cache.emplace(key, plan);
    return plan;
}

fftw_plan get_3d_plan(int nx, int ny, int nz, int sign) {
    using Key = std::tuple<int, int, int, int>;
    static std::map<Key, fftw_plan> cache;
    Key key{nx, ny, nz, sign};
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(nx) * ny * nz);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_3d(nx, ny, nz, buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("fftw_plan_dft_3d failed");
    cache.emplace(key, plan);
    return plan;
}

} // namespace

void fft_axis(std::complex<double>* data, int n0, int n1, int axis, int sign) {
    if (axis != 0 && axis != 1) throw ConfigError("fft_axis: axis must be 0 or 1");
    fftw_plan plan = axis == 1 ? get_many_plan(n1, n0, 1, n1, sign)
                               : get_many_plan(n0, n1, n1, 1, sign);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, buf, buf);
}

void fft_3d(std::complex<double>* data, int nx, int ny, int nz, int sign) {
    fftw_plan plan = get_3d_plan(nx, ny, nz, sign);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, buf, buf);
}

void fft_1d(std::complex<double>* data, int n, int sign) {
    fftw_plan plan = get_many_plan(n, 1, 1, n, sign);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, buf, buf);
}

std::vector<double> fft_frequencies(int n, double step) {
    std::vector<double> k(static_cast<std::size_t>(n));
    double base = 2.0 * std::numbers::pi / (n * step);
    for (int j = 0; j < n; ++j) {
        int wrapped = j < (n + 1) / 2 ? j : j - n;
        k[j] = base * wrapped;
    }
    return k;
}

} // namespace phasewave
