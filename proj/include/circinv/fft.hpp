// Thin FFTW wrapper: forward/inverse complex transforms with an internal
// plan-creation lock (FFTW planning is not thread safe, execution is).
#ifndef CIRCINV_FFT_HPP
#define CIRCINV_FFT_HPP

#include <complex>
#include <vector>

namespace circinv {

using cplx = std::complex<double>;

// In-place forward DFT, x[k] = sum_j x[j] e^{-2pi i jk/n}. n need not be a
// power of two but powers of two are fastest.
void fft_forward(std::vector<cplx>& x);
void fft_inverse(std::vector<cplx>& x);  // unnormalized inverse; caller divides by n

// Linear convolution of a and b via zero-padded FFT.
std::vector<cplx> fft_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

std::size_t next_pow2(std::size_t n);

}  // namespace circinv

#endif
