#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zenolab {

// Iterative radix-2 FFT for power-of-two sizes (the grid invariant).
// Forward: X_k = sum_j x_j e^{-2*pi*i*j*k/n} (unnormalized);
// inverse carries the 1/n. Serial and OpenMP paths perform the exact same
// butterflies, so outputs are bit-identical at any thread count.
struct FftPlan {
  std::size_t n = 0;
  std::vector<std::size_t> bitrev;
  std::vector<std::complex<double>> tw_fwd;  // stage-packed twiddles, n-1 total
  std::vector<std::complex<double>> tw_inv;

  static FftPlan make(std::size_t n);
};

void fft(const FftPlan& p, std::complex<double>* x);
void ifft(const FftPlan& p, std::complex<double>* x);

namespace fft_detail {
void transform_serial(const FftPlan& p, std::complex<double>* x, bool inverse);
void transform_par(const FftPlan& p, std::complex<double>* x, bool inverse);
}  // namespace fft_detail

}  // namespace zenolab
