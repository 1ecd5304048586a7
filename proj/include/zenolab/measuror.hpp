#pragma once

#include <optional>
#include <vector>

#include "zenolab/grid.hpp"
#include "zenolab/state.hpp"

namespace zenolab {

enum class MeasurorKind { Sharp, Mollified, Custom, Identity };
enum class MollifierProfile { RaisedCosine, PolyBump };

// Measurement operator as a diagonal weight field, 0 <= w_j <= 1.
// Sharp: characteristic function of the open counter (boundary nodes
// excluded, the Dirichlet convention). Mollified: 1 on [a+eps, b-eps],
// 0 outside [a,b], monotone profile in between.
struct MeasurorSpec {
  GridSpec grid;
  MeasurorKind kind = MeasurorKind::Custom;
  std::vector<double> w;
  std::optional<SnappedRegion> region;  // sharp / mollified only
  double eps = 0.0;
  MollifierProfile profile = MollifierProfile::RaisedCosine;
};

MeasurorSpec make_sharp(const GridSpec& g, const CounterRegion& r);
MeasurorSpec make_mollified(const GridSpec& g, const CounterRegion& r, double eps = 0.05,
                            MollifierProfile profile = MollifierProfile::RaisedCosine);
MeasurorSpec make_custom(const GridSpec& g, std::vector<double> weights);
MeasurorSpec make_identity(const GridSpec& g);

void apply_measuror_in_place(const MeasurorSpec& m, StateVector& s);
StateVector apply_measuror(const MeasurorSpec& m, const StateVector& s);

bool is_projection(const MeasurorSpec& m);  // every weight exactly 0 or 1

// [a, b] spanned by nonzero weights: the snapped region when present,
// otherwise the support interval of a custom weight field.
CounterRegion measuror_support(const MeasurorSpec& m);

}  // namespace zenolab
