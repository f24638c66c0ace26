#include "series.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace pinlab::series {

namespace {

std::mutex planner_mutex;  // FFTW planning is not thread-safe

struct FftBuffers {
    std::size_t size = 0;
    double* real = nullptr;
    fftw_complex* freq = nullptr;
    fftw_plan fwd{};
    fftw_plan bwd{};

    explicit FftBuffers(std::size_t n) : size(n) {
        real = fftw_alloc_real(n);
        freq = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(planner_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, freq, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, real, FFTW_ESTIMATE);
    }
    ~FftBuffers() {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(freq);
    }
    FftBuffers(const FftBuffers&) = delete;
    FftBuffers& operator=(const FftBuffers&) = delete;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> forward(FftBuffers& fft, const double* a,
                                          std::size_t len) {
    std::copy(a, a + len, fft.real);
    std::fill(fft.real + len, fft.real + fft.size, 0.0);
    fftw_execute(fft.fwd);
    const std::size_t m = fft.size / 2 + 1;
    std::vector<std::complex<double>> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = {fft.freq[i][0], fft.freq[i][1]};
    return out;
}

std::vector<double> backward(FftBuffers& fft,
                             const std::vector<std::complex<double>>& spec,
                             std::size_t keep) {
    const std::size_t m = fft.size / 2 + 1;
    for (std::size_t i = 0; i < m; ++i) {
        fft.freq[i][0] = spec[i].real();
        fft.freq[i][1] = spec[i].imag();
    }
    fftw_execute(fft.bwd);
    const double scale = 1.0 / static_cast<double>(fft.size);
    std::vector<double> out(keep);
    for (std::size_t i = 0; i < keep; ++i) out[i] = fft.real[i] * scale;
    return out;
}

}  // namespace

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b, std::size_t N) {
    const std::size_t la = std::min(a.size(), N + 1);
    const std::size_t lb = std::min(b.size(), N + 1);
    if (la == 0 || lb == 0) return std::vector<double>(N + 1, 0.0);
    // small products: direct is faster and exact-order
    if (la * lb <= 1u << 16) {
        std::vector<double> out(N + 1, 0.0);
        for (std::size_t i = 0; i < la; ++i) {
            const std::size_t jmax = std::min(lb, N + 1 - i);
            for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
        }
        return out;
    }
    FftBuffers fft(next_pow2(la + lb));
    auto fa = forward(fft, a.data(), la);
    auto fb = forward(fft, b.data(), lb);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    auto full = backward(fft, fa, std::min(la + lb - 1, N + 1));
    full.resize(N + 1, 0.0);
    return full;
}

std::vector<double> inverse(const std::vector<double>& a, std::size_t N) {
    if (a.empty() || a[0] == 0.0)
        throw std::invalid_argument("series::inverse: a[0] must be nonzero");
    std::vector<double> b{1.0 / a[0]};
    std::size_t n = 1;
    while (n <= N) {
        const std::size_t n2 = std::min(2 * n, N + 1);
        // b2 = b * (2 - a*b) mod x^{n2}
        const std::size_t la = std::min(a.size(), n2);
        FftBuffers fft(next_pow2(2 * n2));
        auto fa = forward(fft, a.data(), la);
        auto fb = forward(fft, b.data(), b.size());
        auto fab = fa;
        for (std::size_t i = 0; i < fab.size(); ++i) fab[i] *= fb[i];
        auto t = backward(fft, fab, n2);
        for (auto& x : t) x = -x;
        t[0] += 2.0;
        auto ft = forward(fft, t.data(), t.size());
        for (std::size_t i = 0; i < ft.size(); ++i) ft[i] *= fb[i];
        b = backward(fft, ft, n2);
        n = n2;
    }
    b.resize(N + 1);
    return b;
}

}  // namespace pinlab::series
