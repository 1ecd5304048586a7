#pragma once

#include <complex>
#include <cstddef>

// Hot loops, each in a serial and an OpenMP variant with identical
// floating-point structure: reductions use fixed 1024-element blocks combined
// in index order, so results are bit-identical at any thread count. The
// unqualified wrappers dispatch on size and available threads.
namespace zenolab::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kBlock = 1024;       // reduction block, fixed
inline constexpr std::size_t kParMin = 1u << 13;  // below this, stay serial

int max_threads();
void set_threads(int n);

namespace serial {
void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n);
void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n);
void scale(cplx* v, double c, std::size_t n);
double sum_abs2(const cplx* v, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);  // sum conj(a)*b
// y = M x, M row-major rows x cols
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
// c_k = sum_j conj(V[j + k*rows]) * x[j]  (V column-major, k = 0..cols-1)
void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols);
// y_j = sum_k V[j + k*rows] * w_k
void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols);
}  // namespace serial

namespace par {
void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n);
void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n);
void scale(cplx* v, double c, std::size_t n);
double sum_abs2(const cplx* v, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols);
void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols);
}  // namespace par

void mul_real(cplx* dst, const cplx* src, const double* w, std::size_t n);
void mul_cplx(cplx* dst, const cplx* src, const cplx* f, std::size_t n);
void scale(cplx* v, double c, std::size_t n);
double sum_abs2(const cplx* v, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
void proj_coeffs(const cplx* v, const cplx* x, cplx* c, std::size_t rows, std::size_t cols);
void expand(const cplx* v, const cplx* w, cplx* y, std::size_t rows, std::size_t cols);

}  // namespace zenolab::kernels
