#include "zenolab/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zenolab/kernels.hpp"

namespace zenolab {

namespace {

void require_same_grid(const StateVector& a, const StateVector& b, const char* who) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

void require_finite(const std::vector<cplx>& v, const char* who) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(std::string(who) + ": non-finite amplitude");
}

StateVector normalized(StateVector s) {
  const double nrm = norm(s);
  if (nrm == 0.0) throw std::invalid_argument("prepare_state: zero state cannot be normalized");
  kernels::scale(s.amp.data(), 1.0 / nrm, s.amp.size());
  return s;
}

}  // namespace

double norm2(const StateVector& s) {
  return s.grid.dx() * kernels::sum_abs2(s.amp.data(), s.amp.size());
}

double norm(const StateVector& s) { return std::sqrt(norm2(s)); }

cplx inner(const StateVector& a, const StateVector& b) {
  require_same_grid(a, b, "inner");
  return a.grid.dx() * kernels::dot_conj(a.amp.data(), b.amp.data(), a.amp.size());
}

double dist(const StateVector& a, const StateVector& b) {
  require_same_grid(a, b, "dist");
  std::vector<cplx> d(a.amp.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.amp[i] - b.amp[i];
  return std::sqrt(a.grid.dx() * kernels::sum_abs2(d.data(), d.size()));
}

PreparedState prepare_gaussian(const GridSpec& g, double x0, double k0, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  if (x0 < g.x_lo || x0 > g.x_hi)
    throw std::invalid_argument("gaussian: x0 outside grid bounds");
  const double kny = std::numbers::pi / g.dx();
  if (std::abs(k0) > kny)
    throw std::invalid_argument("gaussian: |k0| exceeds Nyquist wavenumber " +
                                std::to_string(kny));
  PreparedState out;
  if (sigma < 2.0 * g.dx())
    out.warnings.push_back("sigma below 2*dx: packet under-resolved on this grid");
  StateVector s{g, std::vector<cplx>(g.n_points)};
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double u = g.node(j) - x0;
    const double env = std::exp(-u * u / (4.0 * sigma * sigma));
    s.amp[j] = env * cplx{std::cos(k0 * u), std::sin(k0 * u)};
  }
  out.state = normalized(std::move(s));
  return out;
}

PreparedState prepare_sine_mode(const GridSpec& g, int k, const CounterRegion& support) {
  if (k < 1) throw std::invalid_argument("sine_mode: k must be >= 1");
  double a = support.a, b = support.b;
  if (g.kind == GridKind::PeriodicBox) {
    const SnappedRegion s = snap_region(g, support);
    a = s.a;
    b = s.b;
    if ((std::size_t)k >= s.jb - s.ja)
      throw std::invalid_argument("sine_mode: k exceeds counter resolution");
  } else {
    if (a < g.x_lo || b > g.x_hi || !(a < b))
      throw std::invalid_argument("sine_mode: support outside grid bounds");
    if ((std::size_t)k > g.n_points)
      throw std::invalid_argument("sine_mode: k exceeds grid resolution");
  }
  const double w = b - a;
  StateVector s{g, std::vector<cplx>(g.n_points)};
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double x = g.node(j);
    if (x > a && x < b)
      s.amp[j] = std::sqrt(2.0 / w) * std::sin(double(k) * std::numbers::pi * (x - a) / w);
  }
  return {normalized(std::move(s)), {}};
}

PreparedState prepare_sine_mode(const GridSpec& g, int k) {
  // full span; periodic grids must name their support explicitly
  if (g.kind == GridKind::PeriodicBox)
    throw std::invalid_argument("sine_mode: periodic grid needs an explicit support region");
  return prepare_sine_mode(g, k, CounterRegion{g.x_lo, g.x_hi});
}

PreparedState prepare_point_mass(const GridSpec& g, std::size_t index) {
  if (index >= g.n_points) throw std::invalid_argument("point_mass: index out of range");
  StateVector s{g, std::vector<cplx>(g.n_points)};
  s.amp[index] = 1.0 / std::sqrt(g.dx());
  return {std::move(s), {}};
}

PreparedState prepare_custom(const GridSpec& g, std::vector<cplx> amplitudes) {
  if (amplitudes.size() != g.n_points)
    throw std::invalid_argument("custom state: amplitude count != n_points");
  require_finite(amplitudes, "custom state");
  return {StateVector{g, std::move(amplitudes)}, {}};
}

}  // namespace zenolab
