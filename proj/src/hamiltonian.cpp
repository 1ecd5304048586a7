#include "zenolab/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zenolab/fft.hpp"
#include "zenolab/state.hpp"

namespace zenolab {

HamiltonianRep make_free(const GridSpec& g) {
  if (g.kind != GridKind::PeriodicBox)
    throw std::invalid_argument("free hamiltonian needs a periodic-box grid");
  HamiltonianRep h;
  h.kind = HamiltonianKind::FreePeriodicSpectral;
  h.grid = g;
  return h;
}

HamiltonianRep make_dirichlet_sine(const GridSpec& g, EigenvalueMode mode) {
  if (g.kind != GridKind::InteriorDirichlet)
    throw std::invalid_argument("dirichlet-sine hamiltonian needs an interior-dirichlet grid");
  HamiltonianRep h;
  h.kind = HamiltonianKind::DirichletSine;
  h.grid = g;
  h.mode = mode;
  return h;
}

HamiltonianRep make_dense(const GridSpec& g, Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || (std::size_t)m.rows() != g.n_points)
    throw std::invalid_argument("dense hamiltonian: matrix must be n_points x n_points");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    throw std::invalid_argument("dense hamiltonian: not Hermitian, max |M - M^dag| = " +
                                std::to_string(herm));
  HamiltonianRep h;
  h.kind = HamiltonianKind::DenseHermitian;
  h.grid = g;
  h.dense = std::move(m);
  return h;
}

std::vector<double> free_multiplier(const GridSpec& g) {
  const std::size_t n = g.n_points;
  std::vector<double> mult(n);
  const double base = 2.0 * std::numbers::pi / g.length();
  for (std::size_t j = 0; j < n; ++j) {
    const double m = (j < n / 2) ? double(j) : double(j) - double(n);
    const double kap = base * m;
    mult[j] = kap * kap;
  }
  return mult;
}

double dirichlet_eigenvalue(double width, double dx, int k, EigenvalueMode mode) {
  const double arg = double(k) * std::numbers::pi;
  if (mode == EigenvalueMode::Continuum) return (arg / width) * (arg / width);
  const double s = std::sin(arg * dx / (2.0 * width));
  return 4.0 / (dx * dx) * s * s;
}

Eigen::MatrixXcd materialize_dense(const HamiltonianRep& h, std::size_t max_dim) {
  const std::size_t n = h.grid.n_points;
  if (n > max_dim)
    throw std::invalid_argument("materialize: dimension " + std::to_string(n) +
                                " exceeds cap " + std::to_string(max_dim));
  switch (h.kind) {
    case HamiltonianKind::DenseHermitian:
      return h.dense;
    case HamiltonianKind::FreePeriodicSpectral: {
      // circulant: first column is ifft of the multiplier; forcing the even
      // symmetry c_r = c_{n-r} makes the matrix Hermitian bitwise
      const std::vector<double> mult = free_multiplier(h.grid);
      std::vector<cplx> c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = mult[j];
      const FftPlan plan = FftPlan::make(n);
      ifft(plan, c.data());
      std::vector<double> col(n);
      col[0] = c[0].real();
      for (std::size_t r = 1; r < n; ++r)
        col[r] = 0.5 * (c[r].real() + c[n - r].real());
      Eigen::MatrixXcd m(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = col[(j + n - k) % n];
      return m;
    }
    case HamiltonianKind::DirichletSine: {
      const double w = h.grid.length(), dxs = h.grid.dx();
      Eigen::MatrixXd s(n, n);
      Eigen::VectorXd lam(n);
      for (std::size_t k = 0; k < n; ++k) {
        lam(k) = dirichlet_eigenvalue(w, dxs, int(k) + 1, h.mode);
        for (std::size_t j = 0; j < n; ++j)
          s(j, k) = std::sqrt(2.0 / w) *
                    std::sin(double(k + 1) * std::numbers::pi * (h.grid.node(j) - h.grid.x_lo) / w);
      }
      Eigen::MatrixXd t = s * lam.asDiagonal() * s.transpose() * dxs;
      Eigen::MatrixXd sym = 0.5 * (t + t.transpose());
      return sym.cast<cplx>();
    }
  }
  throw std::logic_error("materialize: unknown kind");
}

}  // namespace zenolab
