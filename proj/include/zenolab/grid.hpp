#pragma once

#include <cstddef>

namespace zenolab {

enum class GridKind { PeriodicBox, InteriorDirichlet };

// Uniform 1D grid, units hbar=1, 2m=1.
// periodic-box: nodes x_j = x_lo + j*dx, dx = (x_hi-x_lo)/n, j = 0..n-1.
// interior-dirichlet: nodes x_j = x_lo + (j+1)*dx, dx = (x_hi-x_lo)/(n+1),
// j = 0..n-1 (boundary values implicitly zero).
struct GridSpec {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t n_points = 0;
  GridKind kind = GridKind::PeriodicBox;

  double length() const { return x_hi - x_lo; }
  double dx() const;
  double node(std::size_t j) const;
  bool operator==(const GridSpec&) const = default;
};

// Validating constructor: x_lo < x_hi, n_points >= 8, periodic needs n
// a power of two. Throws std::invalid_argument.
GridSpec make_grid(double x_lo, double x_hi, std::size_t n_points, GridKind kind);

// The counter interval [a,b] as requested by the user.
struct CounterRegion {
  double a = 0.0;
  double b = 1.0;
};

// Counter snapped to grid nodes; snap distances kept as metadata.
// On a periodic grid jb may equal n_points (b at the right box edge).
struct SnappedRegion {
  double a = 0.0, b = 0.0;
  std::size_t ja = 0, jb = 0;
  double snap_dist_a = 0.0, snap_dist_b = 0.0;
  double width() const { return b - a; }
};

// Snaps endpoints to the nearest periodic-grid nodes. Requires
// x_lo <= a < b <= x_hi and at least one strictly interior node after
// snapping. Interior-dirichlet grids are not snapped (their span *is* the
// counter); passing one throws.
SnappedRegion snap_region(const GridSpec& g, const CounterRegion& r);

bool is_power_of_two(std::size_t n);

}  // namespace zenolab
