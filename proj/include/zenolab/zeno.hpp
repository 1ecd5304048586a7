#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zenolab/hamiltonian.hpp"
#include "zenolab/measuror.hpp"
#include "zenolab/propagator.hpp"
#include "zenolab/state.hpp"

namespace zenolab {

// called after each complete M U M factor
using StepObserver = std::function<void(long step, const StateVector&)>;

// (M U(t/n) M)^n psi0, literal: the measuror multiplies before and after
// every slice, no idempotence shortcuts. If max_edge_mass is non-null and h
// is the periodic free kind, tracks the largest mass within distance 1 of
// the box edge seen right after any evolution slice (wrap-around guard).
StateVector zeno_product(const StateVector& psi0, const HamiltonianRep& h,
                         const MeasurorSpec& m, double t, long n,
                         const StepObserver& observer = {},
                         double* max_edge_mass = nullptr);

// norm^2: probability that every check found the particle in the counter
double survival_probability(const StateVector& psi_n);

// || zeno_product(n) - exp(-i (MHM) t) M psi0 ||_L2
double zeno_limit_error(const StateVector& psi0, const HamiltonianRep& h,
                        const MeasurorSpec& m, double t, long n);

// |psi| at the first interior node adjacent to each counter endpoint;
// region must already be node-aligned
std::pair<double, double> boundary_trace(const StateVector& psi, const CounterRegion& region);

struct ProbeTable {
  std::vector<std::string> probe_names;  // sine-1..3, gaussian
  std::vector<double> t;                 // descending
  // d[i][p] = || zeno_product(probe_p, t_i, n_fixed) - M probe_p ||
  std::vector<std::vector<double>> d;
};

// Misra-Sudarshan small-t probe of s-lim T(t) = M; reports distances only,
// asserts nothing -- that limit is an assumption of the setup, not a theorem.
ProbeTable semigroup_probe(const HamiltonianRep& h, const MeasurorSpec& m,
                           const std::vector<double>& t_list, long n_fixed);

struct SoftCompareResult {
  StateVector product_state;    // (A U(t/n) A)^n psi0
  StateVector generator_state;  // exp(-i (AHA) t) psi0
  double discrepancy = 0.0;     // L2 distance between them
};

// For non-projection measurors the product limit is conjectural; this
// measures both candidates without asserting convergence.
SoftCompareResult soft_zeno_compare(const StateVector& psi0, const HamiltonianRep& h,
                                    const MeasurorSpec& m, double t, long n);

enum class ReferenceKind { None, CompressedGenerator, DirichletContinuum };

struct ZenoRunConfig {
  HamiltonianRep hamiltonian;
  MeasurorSpec measuror;
  StateVector initial;
  double t_total = 0.5;
  std::vector<long> n_list;  // strictly ascending, positive
  ReferenceKind reference = ReferenceKind::None;
  bool keep_final_states = false;
};

struct ZenoRecord {
  long n = 0;
  double survival_probability = 0.0;
  double limit_error = 0.0;  // NaN when reference == None
  double boundary_amp_left = 0.0;
  double boundary_amp_right = 0.0;
  double max_edge_mass = 0.0;
};

struct ZenoResult {
  std::vector<ZenoRecord> records;  // ascending n
  std::vector<StateVector> final_states;
};

// Sweep over n_list; distinct n run independently (OpenMP) and merge by
// index, so output is identical at any thread count.
ZenoResult run_zeno(const ZenoRunConfig& cfg);

}  // namespace zenolab
