#include "zenolab/zeno.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "zenolab/kernels.hpp"

namespace zenolab {

namespace {

struct EdgeZones {
  std::size_t left_end = 0;     // nodes [0, left_end) are within 1 of x_lo
  std::size_t right_begin = 0;  // nodes [right_begin, n) within 1 of x_hi
};

EdgeZones edge_zones(const GridSpec& g) {
  EdgeZones z;
  z.right_begin = g.n_points;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    if (g.node(j) < g.x_lo + 1.0) z.left_end = j + 1;
    if (g.node(j) > g.x_hi - 1.0) {
      z.right_begin = j;
      break;
    }
  }
  for (std::size_t j = z.right_begin; j < g.n_points; ++j)
    if (!(g.node(j) > g.x_hi - 1.0)) z.right_begin = j + 1;
  return z;
}

double edge_mass(const StateVector& s, const EdgeZones& z) {
  double sum = kernels::serial::sum_abs2(s.amp.data(), std::min(z.left_end, s.amp.size()));
  if (z.right_begin < s.amp.size())
    sum += kernels::serial::sum_abs2(s.amp.data() + z.right_begin,
                                     s.amp.size() - z.right_begin);
  return s.grid.dx() * sum;
}

SnappedRegion aligned_region(const GridSpec& g, const CounterRegion& region) {
  const SnappedRegion s = snap_region(g, region);
  if (s.snap_dist_a > 1e-9 || s.snap_dist_b > 1e-9)
    throw std::invalid_argument("boundary_trace: region endpoints are not grid nodes");
  return s;
}

// reference used by convergence studies against the continuum square well:
// evolve M psi0 by the continuum sine eigenexpansion on the counter interior
StateVector continuum_reference(const HamiltonianRep& h, const MeasurorSpec& m,
                                const StateVector& psi0, double t) {
  if (!m.region)
    throw std::invalid_argument(
        "dirichlet-continuum reference needs a sharp or mollified measuror");
  const GridSpec& g = h.grid;
  const SnappedRegion& r = *m.region;
  const std::size_t dim = r.jb - r.ja - 1;
  const double w = r.width(), dxs = g.dx();
  StateVector masked = apply_measuror(m, psi0);
  StateVector out{g, std::vector<cplx>(g.n_points)};
  for (std::size_t k = 1; k <= dim; ++k) {
    cplx c = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = g.node(r.ja + 1 + j);
      const double phi =
          std::sqrt(2.0 / w) * std::sin(double(k) * std::numbers::pi * (x - r.a) / w);
      c += phi * masked.amp[r.ja + 1 + j];
    }
    c *= dxs;
    const double lam = std::pow(double(k) * std::numbers::pi / w, 2);
    const cplx ph{std::cos(-lam * t), std::sin(-lam * t)};
    for (std::size_t j = 0; j < dim; ++j) {
      const double x = g.node(r.ja + 1 + j);
      const double phi =
          std::sqrt(2.0 / w) * std::sin(double(k) * std::numbers::pi * (x - r.a) / w);
      out.amp[r.ja + 1 + j] += c * ph * phi;
    }
  }
  return out;
}

}  // namespace

StateVector zeno_product(const StateVector& psi0, const HamiltonianRep& h,
                         const MeasurorSpec& m, double t, long n,
                         const StepObserver& observer, double* max_edge_mass) {
  if (n < 1) throw std::invalid_argument("zeno_product: n must be >= 1");
  if (!(psi0.grid == h.grid) || !(psi0.grid == m.grid))
    throw std::invalid_argument("zeno_product: grid mismatch");
  const PropagatorPlan plan = PropagatorPlan::make(h, t / double(n));
  const bool track = max_edge_mass != nullptr &&
                     h.kind == HamiltonianKind::FreePeriodicSpectral;
  const EdgeZones zones = track ? edge_zones(h.grid) : EdgeZones{};
  if (max_edge_mass) *max_edge_mass = 0.0;

  StateVector psi = psi0;
  for (long step = 0; step < n; ++step) {
    apply_measuror_in_place(m, psi);
    plan.apply_in_place(psi);
    if (track) *max_edge_mass = std::max(*max_edge_mass, edge_mass(psi, zones));
    apply_measuror_in_place(m, psi);
    if (observer) observer(step + 1, psi);
  }
  return psi;
}

double survival_probability(const StateVector& psi_n) { return norm2(psi_n); }

double zeno_limit_error(const StateVector& psi0, const HamiltonianRep& h,
                        const MeasurorSpec& m, double t, long n) {
  const StateVector prod = zeno_product(psi0, h, m, t, n);
  const HamiltonianRep hc = compress_hamiltonian(h, m);
  const StateVector ref = evolve_compressed(hc, apply_measuror(m, psi0), t);
  return dist(prod, ref);
}

std::pair<double, double> boundary_trace(const StateVector& psi, const CounterRegion& region) {
  const GridSpec& g = psi.grid;
  if (g.kind == GridKind::InteriorDirichlet) {
    if (std::abs(region.a - g.x_lo) > 1e-9 || std::abs(region.b - g.x_hi) > 1e-9)
      throw std::invalid_argument("boundary_trace: region must span the dirichlet grid");
    return {std::abs(psi.amp.front()), std::abs(psi.amp.back())};
  }
  const SnappedRegion r = aligned_region(g, region);
  return {std::abs(psi.amp[r.ja + 1]), std::abs(psi.amp[r.jb - 1])};
}

ProbeTable semigroup_probe(const HamiltonianRep& h, const MeasurorSpec& m,
                           const std::vector<double>& t_list, long n_fixed) {
  if (t_list.empty()) throw std::invalid_argument("semigroup_probe: empty t list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (t_list[i] < 0.0)
      throw std::invalid_argument("semigroup_probe: t values must be >= 0");
    if (i > 0 && !(t_list[i] < t_list[i - 1]))
      throw std::invalid_argument("semigroup_probe: t list must be strictly descending");
  }
  if (n_fixed < 1) throw std::invalid_argument("semigroup_probe: n_fixed must be >= 1");

  const CounterRegion sup = measuror_support(m);
  const GridSpec& g = h.grid;
  std::vector<StateVector> probes;
  ProbeTable table;
  for (int k = 1; k <= 3; ++k) {
    probes.push_back(prepare_sine_mode(g, k, sup).state);
    table.probe_names.push_back("sine-" + std::to_string(k));
  }
  probes.push_back(
      prepare_gaussian(g, 0.5 * (sup.a + sup.b), 0.0, 0.1 * (sup.b - sup.a)).state);
  table.probe_names.push_back("gaussian");

  table.t = t_list;
  table.d.assign(t_list.size(), std::vector<double>(probes.size()));
  for (std::size_t i = 0; i < t_list.size(); ++i)
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const StateVector prod = zeno_product(probes[p], h, m, t_list[i], n_fixed);
      table.d[i][p] = dist(prod, apply_measuror(m, probes[p]));
    }
  return table;
}

SoftCompareResult soft_zeno_compare(const StateVector& psi0, const HamiltonianRep& h,
                                    const MeasurorSpec& m, double t, long n) {
  if (m.kind == MeasurorKind::Sharp)
    throw std::invalid_argument("soft_zeno_compare: measuror must not be sharp");
  SoftCompareResult r;
  r.product_state = zeno_product(psi0, h, m, t, n);
  r.generator_state = evolve_compressed(compress_hamiltonian(h, m), psi0, t);
  r.discrepancy = dist(r.product_state, r.generator_state);
  return r;
}

ZenoResult run_zeno(const ZenoRunConfig& cfg) {
  if (!(cfg.t_total > 0.0)) throw std::invalid_argument("zeno run: t_total must be > 0");
  if (cfg.n_list.empty()) throw std::invalid_argument("zeno run: n_list must be nonempty");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1)
      throw std::invalid_argument("zeno run: n values must be positive");
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
      throw std::invalid_argument("zeno run: n_list must be strictly ascending");
  }
  if (!(cfg.initial.grid == cfg.hamiltonian.grid) || !(cfg.initial.grid == cfg.measuror.grid))
    throw std::invalid_argument("zeno run: grid mismatch");

  // reference is the n -> infinity limit candidate; fixed across the sweep
  StateVector ref;
  bool have_ref = false;
  switch (cfg.reference) {
    case ReferenceKind::None:
      break;
    case ReferenceKind::CompressedGenerator: {
      const HamiltonianRep hc = compress_hamiltonian(cfg.hamiltonian, cfg.measuror);
      ref = evolve_compressed(hc, apply_measuror(cfg.measuror, cfg.initial), cfg.t_total);
      have_ref = true;
      break;
    }
    case ReferenceKind::DirichletContinuum:
      ref = continuum_reference(cfg.hamiltonian, cfg.measuror, cfg.initial, cfg.t_total);
      have_ref = true;
      break;
  }

  // on an interior-dirichlet grid the box walls are the natural boundary; on a
  // periodic grid it is the measuror's support interval
  const GridSpec& g = cfg.hamiltonian.grid;
  const CounterRegion trace_region =
      g.kind == GridKind::InteriorDirichlet
          ? CounterRegion{g.x_lo, g.x_hi}
          : measuror_support(cfg.measuror);
  boundary_trace(cfg.initial, trace_region);  // validate once, outside the loop

  const std::size_t nn = cfg.n_list.size();
  ZenoResult out;
  out.records.resize(nn);
  if (cfg.keep_final_states)
    out.final_states.assign(nn, StateVector{});

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < nn; ++i) {
    ZenoRecord rec;
    rec.n = cfg.n_list[i];
    StateVector prod = zeno_product(cfg.initial, cfg.hamiltonian, cfg.measuror,
                                    cfg.t_total, rec.n, {}, &rec.max_edge_mass);
    rec.survival_probability = survival_probability(prod);
    rec.limit_error =
        have_ref ? dist(prod, ref) : std::numeric_limits<double>::quiet_NaN();
    const auto [bl, br] = boundary_trace(prod, trace_region);
    rec.boundary_amp_left = bl;
    rec.boundary_amp_right = br;
    out.records[i] = rec;
    if (cfg.keep_final_states) out.final_states[i] = std::move(prod);
  }
  return out;
}

}  // namespace zenolab
