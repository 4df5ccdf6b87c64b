#include "circinv/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace circinv {

namespace {
std::mutex plan_mutex;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

static void run_dft(std::vector<cplx>& x, int sign) {
    const int n = static_cast<int>(x.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(x.data()),
                                reinterpret_cast<fftw_complex*>(x.data()), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

void fft_forward(std::vector<cplx>& x) { run_dft(x, FFTW_FORWARD); }
void fft_inverse(std::vector<cplx>& x) { run_dft(x, FFTW_BACKWARD); }

std::vector<cplx> fft_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(out_len);
    std::vector<cplx> fa(n), fb(n);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft_forward(fa);
    fft_forward(fb);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_inverse(fa);
    std::vector<cplx> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i] / static_cast<double>(n);
    return out;
}

}  // namespace circinv
