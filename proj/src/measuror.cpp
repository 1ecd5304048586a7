#include "zenolab/measuror.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zenolab/kernels.hpp"

namespace zenolab {

MeasurorSpec make_sharp(const GridSpec& g, const CounterRegion& r) {
  MeasurorSpec m;
  m.grid = g;
  m.kind = MeasurorKind::Sharp;
  m.region = snap_region(g, r);
  m.w.assign(g.n_points, 0.0);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double x = g.node(j);
    if (x > m.region->a && x < m.region->b) m.w[j] = 1.0;
  }
  return m;
}

MeasurorSpec make_mollified(const GridSpec& g, const CounterRegion& r, double eps,
                            MollifierProfile profile) {
  MeasurorSpec m;
  m.grid = g;
  m.kind = MeasurorKind::Mollified;
  m.region = snap_region(g, r);
  if (!(eps > 0.0) || !(eps < 0.5 * m.region->width()))
    throw std::invalid_argument("mollified: need 0 < eps < (b-a)/2");
  m.eps = eps;
  m.profile = profile;
  const double a = m.region->a, b = m.region->b;
  auto ramp = [&](double u) {  // u in (0,1): monotone 0 -> 1
    return profile == MollifierProfile::RaisedCosine
               ? 0.5 * (1.0 - std::cos(std::numbers::pi * u))
               : u * u * (3.0 - 2.0 * u);
  };
  m.w.assign(g.n_points, 0.0);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double x = g.node(j);
    if (x <= a || x >= b) continue;
    if (x < a + eps)
      m.w[j] = ramp((x - a) / eps);
    else if (x > b - eps)
      m.w[j] = ramp((b - x) / eps);
    else
      m.w[j] = 1.0;
  }
  return m;
}

MeasurorSpec make_custom(const GridSpec& g, std::vector<double> weights) {
  if (weights.size() != g.n_points)
    throw std::invalid_argument("custom measuror: weight count != n_points");
  for (double w : weights)
    if (!(w >= 0.0) || !(w <= 1.0))
      throw std::invalid_argument("custom measuror: weights must lie in [0,1]");
  MeasurorSpec m;
  m.grid = g;
  m.kind = MeasurorKind::Custom;
  m.w = std::move(weights);
  return m;
}

MeasurorSpec make_identity(const GridSpec& g) {
  MeasurorSpec m;
  m.grid = g;
  m.kind = MeasurorKind::Identity;
  m.w.assign(g.n_points, 1.0);
  return m;
}

void apply_measuror_in_place(const MeasurorSpec& m, StateVector& s) {
  if (!(m.grid == s.grid))
    throw std::invalid_argument("apply_measuror: weights defined on a different grid");
  kernels::mul_real(s.amp.data(), s.amp.data(), m.w.data(), s.amp.size());
}

StateVector apply_measuror(const MeasurorSpec& m, const StateVector& s) {
  StateVector out = s;
  apply_measuror_in_place(m, out);
  return out;
}

bool is_projection(const MeasurorSpec& m) {
  for (double w : m.w)
    if (w != 0.0 && w != 1.0) return false;
  return true;
}

CounterRegion measuror_support(const MeasurorSpec& m) {
  if (m.region) return {m.region->a, m.region->b};
  std::size_t lo = m.w.size(), hi = 0;
  for (std::size_t j = 0; j < m.w.size(); ++j)
    if (m.w[j] != 0.0) {
      if (j < lo) lo = j;
      hi = j;
    }
  if (lo > hi) throw std::invalid_argument("measuror_support: all weights zero");
  return {m.grid.node(lo), m.grid.node(hi)};
}

}  // namespace zenolab
