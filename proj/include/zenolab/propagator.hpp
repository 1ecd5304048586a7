#pragma once

#include <Eigen/Dense>
#include <vector>

#include "zenolab/fft.hpp"
#include "zenolab/hamiltonian.hpp"
#include "zenolab/measuror.hpp"
#include "zenolab/state.hpp"

namespace zenolab {

// U(t) = exp(-iHt), with the kind-specific spectral data cached so a plan
// can be reapplied cheaply (the Zeno loop reuses one plan n times).
// Immutable after construction; safe to share across threads.
class PropagatorPlan {
 public:
  static PropagatorPlan make(const HamiltonianRep& h, double t);

  void apply_in_place(StateVector& s) const;
  StateVector apply(const StateVector& s) const;

  double t() const { return t_; }
  const HamiltonianRep& hamiltonian() const { return ham_; }
  // dense kind: indices of the spectrally active block (rows/cols not
  // identically zero); evolution is identity on the complement
  const std::vector<std::size_t>& support() const { return support_; }

 private:
  HamiltonianRep ham_;
  double t_ = 0.0;
  // free
  FftPlan fft_;
  std::vector<cplx> phase_;  // free: fft order; dirichlet/dense: eigen order
  // dirichlet: basis columns phi_k(x_j), column-major n x n
  std::vector<cplx> sine_basis_;
  // dense: eigenvectors of the support block, column-major
  std::vector<cplx> evecs_;
  std::vector<std::size_t> support_;
};

StateVector evolve(const HamiltonianRep& h, double t, const StateVector& s);

// W H W with W = diag(m.w); Hermitian bitwise by symmetrized construction.
HamiltonianRep compress_hamiltonian(const HamiltonianRep& h, const MeasurorSpec& m,
                                    std::size_t max_dim = kMaxDenseDim);

// exp(-i hc t) psi for a dense-Hermitian hc (full eigendecomposition)
StateVector evolve_compressed(const HamiltonianRep& hc, const StateVector& psi, double t);

// Ascending eigenvalues of the sharp-compressed free Hamiltonian restricted
// to the counter's strict interior.
std::vector<double> dirichlet_spectrum(const GridSpec& g, const CounterRegion& region,
                                       int count);

struct InvarianceRow {
  double t = 0.0;
  double energy = 0.0;
  double boundary_left = 0.0;   // |psi_t(x_1)| / dx
  double boundary_right = 0.0;  // |psi_t(x_n)| / dx
  double norm = 0.0;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;  // first row is t = 0
  double energy_drift = 0.0;        // max |E(t) - E(0)|
  bool energy_ok = false;           // drift <= 1e-9
  bool boundary_ok = false;         // left ratio to t=0 value <= 1 + 1e-6
  bool norm_ok = false;             // |norm - 1| <= 1e-10
};

// Dirichlet evolution of an equal mix of sine modes 1 and 2: checks that
// the counter's Zeno dynamics leaves energy and boundary-adjacent amplitude
// t-invariant. region must coincide with the grid span.
InvarianceReport domain_invariance_check(const GridSpec& g, const CounterRegion& region,
                                         const std::vector<double>& t_list);

}  // namespace zenolab
