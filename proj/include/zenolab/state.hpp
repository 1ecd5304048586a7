#pragma once

#include <complex>
#include <string>
#include <vector>

#include "zenolab/grid.hpp"

namespace zenolab {

using cplx = std::complex<double>;

// Wavefunction sampled on a grid. norm^2 = dx * sum |psi_j|^2.
struct StateVector {
  GridSpec grid;
  std::vector<cplx> amp;
};

double norm2(const StateVector& s);
double norm(const StateVector& s);
// conjugate-linear in the first argument; throws on grid mismatch
cplx inner(const StateVector& a, const StateVector& b);
// L2 distance ||a - b||
double dist(const StateVector& a, const StateVector& b);

struct PreparedState {
  StateVector state;
  std::vector<std::string> warnings;
};

// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma^2) + i k0 (x-x0)).
// Rejects k0 beyond the Nyquist wavenumber pi/dx and x0 outside the grid;
// sigma < 2 dx produces a warning, not an error.
PreparedState prepare_gaussian(const GridSpec& g, double x0, double k0, double sigma);

// sqrt(2/(b-a)) sin(k pi (x-a)/(b-a)) inside [a,b], zero outside, then
// normalized. On periodic grids the support is snapped to nodes first.
PreparedState prepare_sine_mode(const GridSpec& g, int k, const CounterRegion& support);
// support defaults to the full grid span
PreparedState prepare_sine_mode(const GridSpec& g, int k);

PreparedState prepare_point_mass(const GridSpec& g, std::size_t index);

// taken as given: not normalized
PreparedState prepare_custom(const GridSpec& g, std::vector<cplx> amplitudes);

}  // namespace zenolab
