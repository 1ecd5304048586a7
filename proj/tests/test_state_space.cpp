#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "zenolab/grid.hpp"
#include "zenolab/measuror.hpp"
#include "zenolab/state.hpp"

using namespace zenolab;

namespace {

StateVector rand_state(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVector s{g, std::vector<cplx>(g.n_points)};
  for (cplx& z : s.amp) z = {u(rng), u(rng)};
  return s;
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 64, GridKind::PeriodicBox), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 64, GridKind::PeriodicBox), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 7, GridKind::PeriodicBox), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 100, GridKind::PeriodicBox), std::invalid_argument);
  // non-power-of-two is fine for dirichlet grids
  CHECK_NOTHROW(make_grid(0.0, 1.0, 100, GridKind::InteriorDirichlet));
}

TEST_CASE("node placement: periodic includes x_lo, dirichlet is strictly interior") {
  const GridSpec p = make_grid(-2.0, 2.0, 8, GridKind::PeriodicBox);
  CHECK(p.dx() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.node(0) == doctest::Approx(-2.0));
  CHECK(p.node(7) == doctest::Approx(1.5));  // x_hi itself is the wrap node

  const GridSpec d = make_grid(0.0, 1.0, 9, GridKind::InteriorDirichlet);
  CHECK(d.dx() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(d.node(0) == doctest::Approx(0.1));
  CHECK(d.node(8) == doctest::Approx(0.9));
}

TEST_CASE("counter snapping on the production grid") {
  const GridSpec g = make_grid(-8.0, 9.0, 2048, GridKind::PeriodicBox);
  const SnappedRegion s = snap_region(g, {0.0, 1.0});
  CHECK(s.ja == 964);
  CHECK(s.jb == 1084);
  CHECK(s.a == doctest::Approx(0.001953125).epsilon(1e-14));
  CHECK(s.snap_dist_a == doctest::Approx(0.001953125).epsilon(1e-12));
  CHECK(s.snap_dist_b == doctest::Approx(0.001953125).epsilon(1e-12));
  CHECK(s.jb - s.ja - 1 == 119);  // strictly interior nodes
}

TEST_CASE("counter snapping rejects degenerate requests") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  CHECK_THROWS_AS(snap_region(g, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(snap_region(g, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(snap_region(g, {-5.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(snap_region(g, {0.0, 4.5}), std::invalid_argument);
  // narrower than one grid cell: no interior node survives
  CHECK_THROWS_AS(snap_region(g, {0.0, 0.01}), std::invalid_argument);
  const GridSpec d = make_grid(0.0, 1.0, 64, GridKind::InteriorDirichlet);
  CHECK_THROWS_AS(snap_region(d, {0.2, 0.8}), std::invalid_argument);
}

TEST_CASE("dirichlet sine modes are exactly orthonormal in the weighted inner product") {
  const GridSpec g = make_grid(0.0, 1.0, 16, GridKind::InteriorDirichlet);
  std::vector<StateVector> modes;
  for (int k = 1; k <= 16; ++k) modes.push_back(prepare_sine_mode(g, k).state);
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(inner(modes[i], modes[j]) - expect) <= 1e-12);
    }
}

TEST_CASE("inner product is sesquilinear and conjugate-symmetric") {
  const GridSpec g = make_grid(-1.0, 1.0, 64, GridKind::PeriodicBox);
  const auto a = rand_state(g, 21), b = rand_state(g, 22);
  const cplx al{0.3, -0.7}, be{-1.1, 0.2};

  StateVector a2 = a, b2 = b;
  for (std::size_t j = 0; j < g.n_points; ++j) {
    a2.amp[j] *= al;
    b2.amp[j] *= be;
  }
  CHECK(std::abs(inner(a2, b) - std::conj(al) * inner(a, b)) <= 1e-12);
  CHECK(std::abs(inner(a, b2) - be * inner(a, b)) <= 1e-12);
  CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) <= 1e-15);

  const GridSpec other = make_grid(-1.0, 1.0, 128, GridKind::PeriodicBox);
  CHECK_THROWS_AS(inner(a, rand_state(other, 23)), std::invalid_argument);
}

TEST_CASE("gaussian packet mass in the counter matches the erf oracle") {
  const GridSpec g = make_grid(-8.0, 9.0, 2048, GridKind::PeriodicBox);
  const auto ps = prepare_gaussian(g, 0.5, 0.0, 0.1);
  CHECK(ps.warnings.empty());
  CHECK(norm2(ps.state) == doctest::Approx(1.0).epsilon(1e-13));

  const MeasurorSpec m = make_sharp(g, {0.0, 1.0});
  const double mass = norm2(apply_measuror(m, ps.state));
  // integral of the N(0.5, 0.1^2) density over [0,1]
  const double oracle = std::erf(0.5 / (0.1 * std::sqrt(2.0)));
  CHECK(mass >= 0.999);
  CHECK(mass == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("gaussian preparation rejects bad parameters and warns on thin packets") {
  const GridSpec g = make_grid(-8.0, 9.0, 2048, GridKind::PeriodicBox);
  CHECK_THROWS_AS(prepare_gaussian(g, 12.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(prepare_gaussian(g, 0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(prepare_gaussian(g, 0.5, 400.0, 0.1), std::invalid_argument);  // Nyquist ~378
  const auto thin = prepare_gaussian(g, 0.5, 0.0, g.dx());
  CHECK(thin.warnings.size() == 1);
}

TEST_CASE("sine mode on a periodic grid needs a support and enough resolution") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  CHECK_THROWS_AS(prepare_sine_mode(g, 1), std::invalid_argument);
  CHECK_THROWS_AS(prepare_sine_mode(g, 0, CounterRegion{0.0, 1.0}), std::invalid_argument);
  const auto ps = prepare_sine_mode(g, 1, CounterRegion{0.0, 1.0});
  CHECK(norm2(ps.state) == doctest::Approx(1.0).epsilon(1e-13));
  const SnappedRegion s = snap_region(g, {0.0, 1.0});
  for (std::size_t j = 0; j < g.n_points; ++j)
    if (j <= s.ja || j >= s.jb) CHECK(ps.state.amp[j] == cplx{0.0, 0.0});
}

TEST_CASE("point mass and custom states") {
  const GridSpec g = make_grid(0.0, 1.0, 16, GridKind::PeriodicBox);
  const auto pm = prepare_point_mass(g, 5);
  CHECK(norm2(pm.state) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pm.state.amp[5].real() == doctest::Approx(1.0 / std::sqrt(g.dx())));
  CHECK_THROWS_AS(prepare_point_mass(g, 16), std::invalid_argument);

  std::vector<cplx> amps(16, cplx{2.0, 0.0});
  const auto cs = prepare_custom(g, amps);
  CHECK(norm2(cs.state) == doctest::Approx(4.0).epsilon(1e-13));  // left unnormalized
  CHECK_THROWS_AS(prepare_custom(g, std::vector<cplx>(15)), std::invalid_argument);
  amps[3] = cplx{std::nan(""), 0.0};
  CHECK_THROWS_AS(prepare_custom(g, amps), std::invalid_argument);
}

TEST_CASE("sharp measuror excludes the snapped boundary nodes") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  const MeasurorSpec m = make_sharp(g, {0.0, 1.0});
  REQUIRE(m.region.has_value());
  CHECK(m.w[m.region->ja] == 0.0);
  CHECK(m.w[m.region->jb] == 0.0);
  for (std::size_t j = m.region->ja + 1; j < m.region->jb; ++j) CHECK(m.w[j] == 1.0);
  CHECK(is_projection(m));

  // projections are idempotent exactly, not just approximately
  const auto s = rand_state(g, 31);
  const auto once = apply_measuror(m, s);
  const auto twice = apply_measuror(m, once);
  for (std::size_t j = 0; j < g.n_points; ++j) CHECK(once.amp[j] == twice.amp[j]);
}

TEST_CASE("masked norm equals the hand-summed interior mass") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  const MeasurorSpec m = make_sharp(g, {0.0, 1.0});
  const auto s = rand_state(g, 32);
  double ref = 0.0;
  for (std::size_t j = m.region->ja + 1; j < m.region->jb; ++j) ref += std::norm(s.amp[j]);
  ref *= g.dx();
  CHECK(norm2(apply_measuror(m, s)) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("mollified weights: plateau, monotone ramps, zero tails") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  for (auto profile : {MollifierProfile::RaisedCosine, MollifierProfile::PolyBump}) {
    const MeasurorSpec m = make_mollified(g, {0.0, 1.0}, 0.1, profile);
    const double a = m.region->a, b = m.region->b;
    double prev = 0.0;
    for (std::size_t j = 0; j < g.n_points; ++j) {
      const double x = g.node(j), w = m.w[j];
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
      if (x <= a || x >= b) CHECK(w == 0.0);
      if (x >= a + 0.1 && x <= b - 0.1) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
      if (x > a && x < a + 0.1) {
        CHECK(w >= prev);  // left ramp rises
        prev = w;
      }
    }
    CHECK_FALSE(is_projection(m));
  }
  CHECK_THROWS_AS(make_mollified(g, {0.0, 1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_mollified(g, {0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("custom measuror validation and identity behavior") {
  const GridSpec g = make_grid(0.0, 1.0, 16, GridKind::PeriodicBox);
  CHECK_THROWS_AS(make_custom(g, std::vector<double>(15, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(g, std::vector<double>(16, 1.5)), std::invalid_argument);
  CHECK_THROWS_AS(make_custom(g, std::vector<double>(16, -0.1)), std::invalid_argument);

  const auto s = rand_state(g, 41);
  const MeasurorSpec id = make_identity(g);
  const auto t = apply_measuror(id, s);
  for (std::size_t j = 0; j < g.n_points; ++j) CHECK(t.amp[j] == s.amp[j]);
  CHECK(is_projection(id));
  CHECK_THROWS_AS(apply_measuror(id, rand_state(make_grid(0.0, 2.0, 16, GridKind::PeriodicBox), 42)),
                  std::invalid_argument);
}

TEST_CASE("measuror_support reports the nonzero span") {
  const GridSpec g = make_grid(0.0, 1.0, 16, GridKind::PeriodicBox);
  std::vector<double> w(16, 0.0);
  w[4] = 0.5;
  w[9] = 1.0;
  const auto sup = measuror_support(make_custom(g, w));
  CHECK(sup.a == doctest::Approx(g.node(4)));
  CHECK(sup.b == doctest::Approx(g.node(9)));
  CHECK_THROWS_AS(measuror_support(make_custom(g, std::vector<double>(16, 0.0))),
                  std::invalid_argument);
}

TEST_CASE("every measuror is a contraction; Cauchy-Schwarz holds") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  const std::vector<MeasurorSpec> ms = {
      make_sharp(g, {0.0, 1.0}),
      make_mollified(g, {0.0, 1.0}, 0.2, MollifierProfile::PolyBump),
      make_identity(g),
  };
  for (unsigned seed = 50; seed < 58; ++seed) {
    const auto s = rand_state(g, seed);
    const auto t = rand_state(g, seed + 100);
    CHECK(std::abs(inner(s, t)) <= norm(s) * norm(t) * (1.0 + 1e-12));
    for (const auto& m : ms) CHECK(norm(apply_measuror(m, s)) <= norm(s) * (1.0 + 1e-12));
  }
}

TEST_CASE("measuror application is linear") {
  const GridSpec g = make_grid(-4.0, 4.0, 256, GridKind::PeriodicBox);
  const MeasurorSpec m = make_mollified(g, {0.0, 1.0}, 0.1);
  const auto a = rand_state(g, 61), b = rand_state(g, 62);
  const cplx al{0.4, 0.9}, be{-0.3, 0.1};
  StateVector combo{g, std::vector<cplx>(g.n_points)};
  for (std::size_t j = 0; j < g.n_points; ++j) combo.amp[j] = al * a.amp[j] + be * b.amp[j];
  const auto lhs = apply_measuror(m, combo);
  const auto ma = apply_measuror(m, a), mb = apply_measuror(m, b);
  for (std::size_t j = 0; j < g.n_points; ++j)
    CHECK(std::abs(lhs.amp[j] - (al * ma.amp[j] + be * mb.amp[j])) <= 1e-14);
}

TEST_CASE("dist agrees with the norm of the difference") {
  const GridSpec g = make_grid(0.0, 1.0, 64, GridKind::PeriodicBox);
  const auto a = rand_state(g, 71), b = rand_state(g, 72);
  CHECK(dist(a, a) == 0.0);
  StateVector d{g, std::vector<cplx>(g.n_points)};
  for (std::size_t j = 0; j < g.n_points; ++j) d.amp[j] = a.amp[j] - b.amp[j];
  CHECK(dist(a, b) == doctest::Approx(norm(d)).epsilon(1e-14));
}
