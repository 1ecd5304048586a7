#include "zenolab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zenolab {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double GridSpec::dx() const {
  return kind == GridKind::PeriodicBox ? length() / double(n_points)
                                       : length() / double(n_points + 1);
}

double GridSpec::node(std::size_t j) const {
  return kind == GridKind::PeriodicBox ? x_lo + double(j) * dx()
                                       : x_lo + double(j + 1) * dx();
}

GridSpec make_grid(double x_lo, double x_hi, std::size_t n_points, GridKind kind) {
  if (!(x_lo < x_hi))
    throw std::invalid_argument("grid: x_lo must be < x_hi (got " +
                                std::to_string(x_lo) + ", " + std::to_string(x_hi) + ")");
  if (n_points < 8)
    throw std::invalid_argument("grid: n_points must be >= 8 (got " +
                                std::to_string(n_points) + ")");
  if (kind == GridKind::PeriodicBox && !is_power_of_two(n_points))
    throw std::invalid_argument("grid: periodic-box n_points must be a power of two (got " +
                                std::to_string(n_points) + ")");
  return GridSpec{x_lo, x_hi, n_points, kind};
}

SnappedRegion snap_region(const GridSpec& g, const CounterRegion& r) {
  if (g.kind != GridKind::PeriodicBox)
    throw std::invalid_argument("snap_region: only periodic-box grids have snappable counters");
  if (!(r.a < r.b))
    throw std::invalid_argument("counter: need a < b (got [" + std::to_string(r.a) + ", " +
                                std::to_string(r.b) + "])");
  if (r.a < g.x_lo || r.b > g.x_hi)
    throw std::invalid_argument("counter: [" + std::to_string(r.a) + ", " + std::to_string(r.b) +
                                "] not inside grid [" + std::to_string(g.x_lo) + ", " +
                                std::to_string(g.x_hi) + "]");
  const double h = g.dx();
  auto snap = [&](double x) {
    long long j = std::llround((x - g.x_lo) / h);
    if (j < 0) j = 0;
    if (j > (long long)g.n_points) j = (long long)g.n_points;
    return (std::size_t)j;
  };
  SnappedRegion s;
  s.ja = snap(r.a);
  s.jb = snap(r.b);
  s.a = g.x_lo + double(s.ja) * h;
  s.b = g.x_lo + double(s.jb) * h;
  s.snap_dist_a = std::abs(s.a - r.a);
  s.snap_dist_b = std::abs(s.b - r.b);
  if (s.jb <= s.ja + 1)
    throw std::invalid_argument("counter: no strictly interior grid node after snapping");
  return s;
}

}  // namespace zenolab
