#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zenolab/grid.hpp"
#include "zenolab/hamiltonian.hpp"
#include "zenolab/measuror.hpp"
#include "zenolab/rational.hpp"
#include "zenolab/state.hpp"
#include "zenolab/zeno.hpp"

namespace zenolab {

enum class ExperimentKind {
  ZenoRun,
  Convergence,
  Spectrum,
  SemigroupProbe,
  SoftCompare,
  DomainCheck,
};

const std::vector<std::string>& known_experiments();
const std::string& experiment_name(ExperimentKind k);

struct InitialSpec {
  enum class Kind { Gaussian, SineMode, PointMass, Custom } kind = Kind::Gaussian;
  double x0 = 0.0, k0 = 0.0, sigma = 1.0;  // gaussian
  long k = 1;                              // sine-mode
  long index = 0;                          // point-mass
  std::vector<cplx> amplitudes;            // custom
};

struct MeasurorCfg {
  MeasurorKind kind = MeasurorKind::Sharp;
  double eps = 0.05;
  MollifierProfile profile = MollifierProfile::RaisedCosine;
  std::vector<double> weights;  // custom
};

struct HamiltonianCfg {
  HamiltonianKind kind = HamiltonianKind::FreePeriodicSpectral;
  EigenvalueMode mode = EigenvalueMode::Continuum;
};

struct DomainCfg {
  std::string rule;
  bool sweep = false;
  std::map<std::string, Rational> exponents;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::ZenoRun;
  GridSpec grid;
  CounterRegion counter{0.0, 1.0};
  MeasurorCfg measuror;
  HamiltonianCfg hamiltonian;
  InitialSpec initial;
  double t_total = 0.5;
  std::vector<long> n_list;
  ReferenceKind reference = ReferenceKind::None;
  long count = 3;               // spectrum
  std::vector<double> t_list;   // semigroup-probe
  long n_fixed = 64;            // semigroup-probe
  DomainCfg domain;             // domain-check
  std::string output_dir;       // empty = unset
  bool emit_plot_data = true;
  std::string canonical;        // sorted-key dump of the parsed config
};

// parse + structural checks + module-precondition validation; throws
// std::invalid_argument with a /path/to/key diagnostic on any problem
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// builds every referenced module object without running anything; returns
// preparation warnings (e.g. under-resolved gaussian)
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// precedence: --out flag, then ZENO_LAB_OUT, then config output_dir, then "."
std::string resolve_out_dir(const ExperimentConfig& cfg, const char* env_value,
                            const std::string& flag_value);

struct RunOutputs {
  std::vector<std::string> files;  // relative to the output dir, manifest last
};

// runs the experiment and writes results.csv / report.json / *.dat /
// manifest.json into out_dir; throws GuardTrip when a numerical guard fires
RunOutputs run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

std::string schema_text(const std::string& experiment);

std::uint64_t fnv1a64(std::string_view s);
std::string config_hash(const ExperimentConfig& cfg);  // "fnv1a64:<16 hex>"

}  // namespace zenolab
