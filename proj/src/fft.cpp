#include "zenolab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zenolab/grid.hpp"
#include "zenolab/kernels.hpp"

namespace zenolab {

using cplx = std::complex<double>;

FftPlan FftPlan::make(std::size_t n) {
  if (!is_power_of_two(n))
    throw std::invalid_argument("fft: size must be a power of two");
  FftPlan p;
  p.n = n;
  p.bitrev.resize(n);
  std::size_t bits = 0;
  while ((std::size_t(1) << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (bits - 1 - b);
    p.bitrev[i] = r;
  }
  // stage s has half = 2^s butterflies per group; tables packed back to back
  p.tw_fwd.reserve(n - 1);
  p.tw_inv.reserve(n - 1);
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t j = 0; j < half; ++j) {
      const double ang = -std::numbers::pi * double(j) / double(half);
      const cplx w{std::cos(ang), std::sin(ang)};
      p.tw_fwd.push_back(w);
      p.tw_inv.push_back(std::conj(w));
    }
  }
  return p;
}

namespace fft_detail {

namespace {
inline void butterfly(cplx* x, const cplx* tw, std::size_t half, std::size_t q) {
  const std::size_t g = q / half, j = q % half;
  const std::size_t i = g * 2 * half + j;
  const cplx t = tw[j] * x[i + half];
  const cplx u = x[i];
  x[i] = u + t;
  x[i + half] = u - t;
}
}  // namespace

void transform_serial(const FftPlan& p, cplx* x, bool inverse) {
  const std::size_t n = p.n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = p.bitrev[i];
    if (i < r) std::swap(x[i], x[r]);
  }
  const cplx* table = inverse ? p.tw_inv.data() : p.tw_fwd.data();
  std::size_t off = 0;
  for (std::size_t half = 1; half < n; half <<= 1) {
    const cplx* tw = table + off;
    for (std::size_t q = 0; q < n / 2; ++q) butterfly(x, tw, half, q);
    off += half;
  }
  if (inverse) kernels::serial::scale(x, 1.0 / double(n), n);
}

void transform_par(const FftPlan& p, cplx* x, bool inverse) {
  const std::size_t n = p.n;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = p.bitrev[i];
    if (i < r) std::swap(x[i], x[r]);
  }
  const cplx* table = inverse ? p.tw_inv.data() : p.tw_fwd.data();
  std::size_t off = 0;
  for (std::size_t half = 1; half < n; half <<= 1) {
    const cplx* tw = table + off;
#pragma omp parallel for schedule(static)
    for (std::size_t q = 0; q < n / 2; ++q) butterfly(x, tw, half, q);
    off += half;
  }
  if (inverse) kernels::par::scale(x, 1.0 / double(n), n);
}

}  // namespace fft_detail

namespace {
inline bool go_par(std::size_t n) {
  return n >= kernels::kParMin && kernels::max_threads() > 1;
}
}  // namespace

void fft(const FftPlan& p, cplx* x) {
  go_par(p.n) ? fft_detail::transform_par(p, x, false)
              : fft_detail::transform_serial(p, x, false);
}

void ifft(const FftPlan& p, cplx* x) {
  go_par(p.n) ? fft_detail::transform_par(p, x, true)
              : fft_detail::transform_serial(p, x, true);
}

}  // namespace zenolab
