#pragma once

#include <Eigen/Dense>
#include <vector>

#include "zenolab/grid.hpp"

namespace zenolab {

enum class HamiltonianKind { FreePeriodicSpectral, DirichletSine, DenseHermitian };
enum class EigenvalueMode { Continuum, Discrete };

// H0 = -d^2/dx^2 in one of three representations:
//  free-periodic-spectral: multiplier kappa_m^2, kappa_m = 2 pi m / L,
//    m = -n/2 .. n/2-1, applied in the Fourier basis;
//  dirichlet-sine: sine basis on an interior-dirichlet grid, eigenvalues
//    either continuum (k pi/(b-a))^2 or discrete (4/dx^2) sin^2(k pi dx/(2(b-a)));
//  dense-hermitian: explicit matrix (compressed generators live here).
struct HamiltonianRep {
  HamiltonianKind kind = HamiltonianKind::FreePeriodicSpectral;
  GridSpec grid;
  EigenvalueMode mode = EigenvalueMode::Continuum;
  Eigen::MatrixXcd dense;
};

HamiltonianRep make_free(const GridSpec& g);
HamiltonianRep make_dirichlet_sine(const GridSpec& g, EigenvalueMode mode);
// rejects matrices with max |M - M^dag| > 1e-12
HamiltonianRep make_dense(const GridSpec& g, Eigen::MatrixXcd h);

// kappa_m^2 in FFT output order (m = 0..n/2-1, then -n/2..-1)
std::vector<double> free_multiplier(const GridSpec& g);

double dirichlet_eigenvalue(double width, double dx, int k, EigenvalueMode mode);

inline constexpr std::size_t kMaxDenseDim = 4096;

// Position-basis dense matrix of h; exactly Hermitian by construction.
// Dimension above max_dim is rejected before any allocation.
Eigen::MatrixXcd materialize_dense(const HamiltonianRep& h, std::size_t max_dim = kMaxDenseDim);

}  // namespace zenolab
