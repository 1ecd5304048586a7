#include "zenolab/kernels.hpp"

#include <omp.h>

#include <vector>

namespace zenolab::kernels {

int max_threads() { return omp_get_max_threads(); }
void set_threads(int n) { omp_set_num_threads(n < 1 ? 1 : n); }

namespace {

// Per-block partial sum: identical accumulation order in both variants.
inline double block_abs2(const cplx* v, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i)
    s += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
  return s;
}

inline cplx block_dot(const cplx* a, const cplx* b, std::size_t lo, std::size_t hi) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const cplx t = std::conj(a[i]) * b[i];
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

inline std::size_t n_blocks(std::size_t n) { return (n + kBlock - 1) / kBlock; }

}  // namespace

// ---------------- serial ----------------
namespace serial {

void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = w[i] * src[i];
}

void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f[i] * src[i];
}

void scale(cplx* v, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v[i] *= c;
}

double sum_abs2(const cplx* v, std::size_t n) {
  const std::size_t nb = n_blocks(n);
  double s = 0.0;
  for (std::size_t b = 0; b < nb; ++b)
    s += block_abs2(v, b * kBlock, std::min(n, (b + 1) * kBlock));
  return s;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  const std::size_t nb = n_blocks(n);
  double re = 0.0, im = 0.0;
  for (std::size_t bi = 0; bi < nb; ++bi) {
    const cplx t = block_dot(a, b, bi * kBlock, std::min(n, (bi + 1) * kBlock));
    re += t.real();
    im += t.imag();
  }
  return {re, im};
}

void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    double re = 0.0, im = 0.0;
    const cplx* row = m + r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx t = row[c] * x[c];
      re += t.real();
      im += t.imag();
    }
    y[r] = {re, im};
  }
}

void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols) {
  for (std::size_t k = 0; k < cols; ++k) c[k] = dot_conj(v + k * rows, x, rows);
}

void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols) {
  for (std::size_t j = 0; j < rows; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      const cplx t = v[j + k * rows] * w[k];
      re += t.real();
      im += t.imag();
    }
    y[j] = {re, im};
  }
}

}  // namespace serial

// ---------------- OpenMP ----------------
namespace par {

void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) dst[i] = w[i] * src[i];
}

void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) dst[i] = f[i] * src[i];
}

void scale(cplx* v, double c, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) v[i] *= c;
}

double sum_abs2(const cplx* v, std::size_t n) {
  const std::size_t nb = n_blocks(n);
  std::vector<double> part(nb);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b)
    part[b] = block_abs2(v, b * kBlock, std::min(n, (b + 1) * kBlock));
  double s = 0.0;
  for (double p : part) s += p;  // fixed combine order
  return s;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  const std::size_t nb = n_blocks(n);
  std::vector<cplx> part(nb);
#pragma omp parallel for schedule(static)
  for (std::size_t bi = 0; bi < nb; ++bi)
    part[bi] = block_dot(a, b, bi * kBlock, std::min(n, (bi + 1) * kBlock));
  double re = 0.0, im = 0.0;
  for (const cplx& p : part) {
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < rows; ++r) {
    double re = 0.0, im = 0.0;
    const cplx* row = m + r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      const cplx t = row[c] * x[c];
      re += t.real();
      im += t.imag();
    }
    y[r] = {re, im};
  }
}

void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < cols; ++k) c[k] = serial::dot_conj(v + k * rows, x, rows);
}

void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < rows; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      const cplx t = v[j + k * rows] * w[k];
      re += t.real();
      im += t.imag();
    }
    y[j] = {re, im};
  }
}

}  // namespace par

// ---------------- dispatch ----------------
namespace {
inline bool go_par(std::size_t work) { return work >= kParMin && max_threads() > 1; }
}  // namespace

void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n) {
  go_par(n) ? par::mul_real(dst, src, w, n) : serial::mul_real(dst, src, w, n);
}
void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n) {
  go_par(n) ? par::mul_cplx(dst, src, f, n) : serial::mul_cplx(dst, src, f, n);
}
void scale(cplx* v, double c, std::size_t n) {
  go_par(n) ? par::scale(v, c, n) : serial::scale(v, c, n);
}
double sum_abs2(const cplx* v, std::size_t n) {
  return go_par(n) ? par::sum_abs2(v, n) : serial::sum_abs2(v, n);
}
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  return go_par(n) ? par::dot_conj(a, b, n) : serial::dot_conj(a, b, n);
}
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  go_par(rows * cols) ? par::matvec(m, x, y, rows, cols)
                      : serial::matvec(m, x, y, rows, cols);
}
void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols) {
  go_par(rows * cols) ? par::proj_coeffs(v, x, c, rows, cols)
                      : serial::proj_coeffs(v, x, c, rows, cols);
}
void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols) {
  go_par(rows * cols) ? par::expand(v, w, y, rows, cols)
                      : serial::expand(v, w, y, rows, cols);
}

}  // namespace zenolab::kernels
