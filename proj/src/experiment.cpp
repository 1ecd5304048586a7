#include "zenolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "zenolab/domain_calculus.hpp"
#include "zenolab/errors.hpp"
#include "zenolab/propagator.hpp"
#include "zenolab/version.hpp"

namespace zenolab {

namespace {

using nlohmann::json;

// a run whose wrapped-around mass ever exceeds this is physically meaningless
// (the box edge is talking to the counter); legitimate coarse-n sweeps stay
// around 5e-4, a parked wave packet measures ~0.2
constexpr double kEdgeMassGuard = 1e-2;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config " + (path.empty() ? "/" : path) + ": " + what);
}

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) bad(path + "/" + key, "missing required key");
  return j.at(key);
}

void check_keys(const json& j, const std::string& path,
                const std::vector<const char*>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= (it.key() == k);
    if (!ok) bad(path + "/" + it.key(), "unknown key");
  }
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected a boolean");
  return j.get<bool>();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%ld", v);
  return buf;
}

// ---- section parsers -------------------------------------------------------

GridSpec parse_grid(const json& j) {
  if (!j.is_object()) bad("/grid", "expected an object");
  check_keys(j, "/grid", {"x_lo", "x_hi", "n_points", "kind"});
  const double x_lo = get_num(need(j, "/grid", "x_lo"), "/grid/x_lo");
  const double x_hi = get_num(need(j, "/grid", "x_hi"), "/grid/x_hi");
  const long n = get_int(need(j, "/grid", "n_points"), "/grid/n_points");
  if (n < 1) bad("/grid/n_points", "must be positive");
  const std::string kind = get_str(need(j, "/grid", "kind"), "/grid/kind");
  GridKind gk;
  if (kind == "periodic-box") gk = GridKind::PeriodicBox;
  else if (kind == "interior-dirichlet") gk = GridKind::InteriorDirichlet;
  else bad("/grid/kind", "expected \"periodic-box\" or \"interior-dirichlet\"");
  try {
    return make_grid(x_lo, x_hi, std::size_t(n), gk);
  } catch (const std::invalid_argument& e) {
    bad("/grid", e.what());
  }
}

CounterRegion parse_counter(const json& j, const GridSpec& g) {
  if (!j.is_object()) bad("/counter", "expected an object");
  check_keys(j, "/counter", {"a", "b"});
  CounterRegion r;
  r.a = get_num(need(j, "/counter", "a"), "/counter/a");
  r.b = get_num(need(j, "/counter", "b"), "/counter/b");
  if (!(r.a < r.b)) bad("/counter", "needs a < b");
  if (r.a < g.x_lo || r.b > g.x_hi) bad("/counter", "region outside the grid box");
  return r;
}

MeasurorCfg parse_measuror(const json& j) {
  if (!j.is_object()) bad("/measuror", "expected an object");
  const std::string kind = get_str(need(j, "/measuror", "kind"), "/measuror/kind");
  MeasurorCfg m;
  if (kind == "sharp") {
    m.kind = MeasurorKind::Sharp;
    check_keys(j, "/measuror", {"kind"});
  } else if (kind == "mollified") {
    m.kind = MeasurorKind::Mollified;
    check_keys(j, "/measuror", {"kind", "eps", "profile"});
    if (j.contains("eps")) {
      m.eps = get_num(j.at("eps"), "/measuror/eps");
      if (!(m.eps > 0.0)) bad("/measuror/eps", "must be > 0");
    }
    if (j.contains("profile")) {
      const std::string p = get_str(j.at("profile"), "/measuror/profile");
      if (p == "raised-cosine") m.profile = MollifierProfile::RaisedCosine;
      else if (p == "poly-bump") m.profile = MollifierProfile::PolyBump;
      else bad("/measuror/profile", "expected \"raised-cosine\" or \"poly-bump\"");
    }
  } else if (kind == "custom") {
    m.kind = MeasurorKind::Custom;
    check_keys(j, "/measuror", {"kind", "weights"});
    const json& w = need(j, "/measuror", "weights");
    if (!w.is_array()) bad("/measuror/weights", "expected an array of numbers");
    for (std::size_t i = 0; i < w.size(); ++i)
      m.weights.push_back(get_num(w[i], "/measuror/weights"));
  } else if (kind == "identity") {
    m.kind = MeasurorKind::Identity;
    check_keys(j, "/measuror", {"kind"});
  } else {
    bad("/measuror/kind", "expected sharp, mollified, custom or identity");
  }
  return m;
}

HamiltonianCfg parse_hamiltonian(const json& j) {
  if (!j.is_object()) bad("/hamiltonian", "expected an object");
  const std::string kind = get_str(need(j, "/hamiltonian", "kind"), "/hamiltonian/kind");
  HamiltonianCfg h;
  if (kind == "free-periodic-spectral") {
    h.kind = HamiltonianKind::FreePeriodicSpectral;
    check_keys(j, "/hamiltonian", {"kind"});
  } else if (kind == "dirichlet-sine") {
    h.kind = HamiltonianKind::DirichletSine;
    check_keys(j, "/hamiltonian", {"kind", "eigenvalues"});
    if (j.contains("eigenvalues")) {
      const std::string m = get_str(j.at("eigenvalues"), "/hamiltonian/eigenvalues");
      if (m == "continuum") h.mode = EigenvalueMode::Continuum;
      else if (m == "discrete") h.mode = EigenvalueMode::Discrete;
      else bad("/hamiltonian/eigenvalues", "expected \"continuum\" or \"discrete\"");
    }
  } else if (kind == "dense-hermitian") {
    bad("/hamiltonian/kind", "dense-hermitian is not constructible from a config file");
  } else {
    bad("/hamiltonian/kind", "expected free-periodic-spectral or dirichlet-sine");
  }
  return h;
}

InitialSpec parse_initial(const json& j, const GridSpec& g) {
  if (!j.is_object()) bad("/initial", "expected an object");
  const std::string kind = get_str(need(j, "/initial", "kind"), "/initial/kind");
  InitialSpec s;
  if (kind == "gaussian") {
    s.kind = InitialSpec::Kind::Gaussian;
    check_keys(j, "/initial", {"kind", "x0", "k0", "sigma"});
    s.x0 = get_num(need(j, "/initial", "x0"), "/initial/x0");
    s.k0 = get_num(need(j, "/initial", "k0"), "/initial/k0");
    s.sigma = get_num(need(j, "/initial", "sigma"), "/initial/sigma");
  } else if (kind == "sine-mode") {
    s.kind = InitialSpec::Kind::SineMode;
    check_keys(j, "/initial", {"kind", "k"});
    s.k = get_int(need(j, "/initial", "k"), "/initial/k");
    if (s.k < 1) bad("/initial/k", "must be >= 1");
  } else if (kind == "point-mass") {
    s.kind = InitialSpec::Kind::PointMass;
    check_keys(j, "/initial", {"kind", "index"});
    s.index = get_int(need(j, "/initial", "index"), "/initial/index");
    if (s.index < 0 || std::size_t(s.index) >= g.n_points)
      bad("/initial/index", "out of range");
  } else if (kind == "custom") {
    s.kind = InitialSpec::Kind::Custom;
    check_keys(j, "/initial", {"kind", "amplitudes"});
    const json& a = need(j, "/initial", "amplitudes");
    if (!a.is_array()) bad("/initial/amplitudes", "expected an array of [re, im] pairs");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const json& e = a[i];
      if (!e.is_array() || e.size() != 2)
        bad("/initial/amplitudes", "expected [re, im] pairs");
      s.amplitudes.emplace_back(get_num(e[0], "/initial/amplitudes"),
                                get_num(e[1], "/initial/amplitudes"));
    }
    if (s.amplitudes.size() != g.n_points)
      bad("/initial/amplitudes", "length must equal grid n_points");
  } else {
    bad("/initial/kind", "expected gaussian, sine-mode, point-mass or custom");
  }
  return s;
}

std::vector<long> parse_n_list(const json& j) {
  if (!j.is_array()) bad("/n_list", "expected an array of integers");
  if (j.empty()) bad("/n_list", "must be nonempty");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const long n = get_int(j[i], "/n_list");
    if (n < 1) bad("/n_list", "entries must be >= 1");
    if (!out.empty() && n <= out.back()) bad("/n_list", "must be strictly ascending");
    out.push_back(n);
  }
  return out;
}

DomainCfg parse_domain(const json& j) {
  if (!j.is_object()) bad("/domain", "expected an object");
  check_keys(j, "/domain", {"rule", "sweep", "exponents"});
  DomainCfg d;
  d.rule = get_str(need(j, "/domain", "rule"), "/domain/rule");
  try {
    rule_roles(d.rule);
  } catch (const std::invalid_argument& e) {
    bad("/domain/rule", e.what());
  }
  if (j.contains("sweep")) d.sweep = get_bool(j.at("sweep"), "/domain/sweep");
  const bool have_exp = j.contains("exponents");
  if (d.sweep && have_exp)
    bad("/domain", "give either sweep: true or exponents, not both");
  if (!d.sweep && !have_exp)
    bad("/domain", "needs sweep: true or an exponents object");
  if (have_exp) {
    const json& ex = j.at("exponents");
    if (!ex.is_object()) bad("/domain/exponents", "expected an object of rationals");
    for (auto it = ex.begin(); it != ex.end(); ++it) {
      const std::string path = "/domain/exponents/" + it.key();
      if (it->is_number_integer()) {
        d.exponents[it.key()] = Rational(it->get<long long>());
      } else if (it->is_string()) {
        try {
          d.exponents[it.key()] = parse_rational(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
          bad(path, e.what());
        }
      } else {
        bad(path, "expected an integer or a rational string like \"1/2\"");
      }
    }
    try {
      check_rule(d.rule, d.exponents);
    } catch (const std::invalid_argument& e) {
      bad("/domain/exponents", e.what());
    }
  }
  return d;
}

// ---- shared builders (config already structurally valid) -------------------

MeasurorSpec build_measuror(const ExperimentConfig& cfg) {
  try {
    switch (cfg.measuror.kind) {
      case MeasurorKind::Sharp: return make_sharp(cfg.grid, cfg.counter);
      case MeasurorKind::Mollified:
        return make_mollified(cfg.grid, cfg.counter, cfg.measuror.eps,
                              cfg.measuror.profile);
      case MeasurorKind::Custom: return make_custom(cfg.grid, cfg.measuror.weights);
      case MeasurorKind::Identity: return make_identity(cfg.grid);
    }
    throw std::logic_error("unreachable");
  } catch (const std::invalid_argument& e) {
    bad("/measuror", e.what());
  }
}

HamiltonianRep build_hamiltonian(const ExperimentConfig& cfg) {
  try {
    if (cfg.hamiltonian.kind == HamiltonianKind::FreePeriodicSpectral)
      return make_free(cfg.grid);
    return make_dirichlet_sine(cfg.grid, cfg.hamiltonian.mode);
  } catch (const std::invalid_argument& e) {
    bad("/hamiltonian", e.what());
  }
}

PreparedState build_initial(const ExperimentConfig& cfg) {
  try {
    switch (cfg.initial.kind) {
      case InitialSpec::Kind::Gaussian:
        return prepare_gaussian(cfg.grid, cfg.initial.x0, cfg.initial.k0,
                                cfg.initial.sigma);
      case InitialSpec::Kind::SineMode:
        return prepare_sine_mode(cfg.grid, int(cfg.initial.k), cfg.counter);
      case InitialSpec::Kind::PointMass:
        return prepare_point_mass(cfg.grid, std::size_t(cfg.initial.index));
      case InitialSpec::Kind::Custom:
        return prepare_custom(cfg.grid, cfg.initial.amplitudes);
    }
    throw std::logic_error("unreachable");
  } catch (const std::invalid_argument& e) {
    bad("/initial", e.what());
  }
}

bool needs_dynamics(ExperimentKind k) {
  return k == ExperimentKind::ZenoRun || k == ExperimentKind::Convergence ||
         k == ExperimentKind::SoftCompare;
}

// ---- result files ----------------------------------------------------------

struct OutFile {
  std::string name;
  std::string content;
};

std::string csv_header(const std::string& schema, const std::string& columns) {
  return "# schema: " + schema + ".v1\n" + columns + "\n";
}

json op_json(const ComposedOp& op, const std::string& desc) {
  json j;
  j["symbol"] = to_string(op.symbol_exponent);
  j["domain_weight"] = to_string(op.domain.weight);
  j["maximal"] = op.is_maximal();
  j["desc"] = desc;
  return j;
}

json report_json(const HypothesisReport& r) {
  json j;
  j["rule_id"] = r.rule_id;
  json ex = json::object();
  for (const auto& [role, v] : r.exponents) ex[role] = to_string(v);
  j["exponents"] = ex;
  json hyps = json::array();
  for (const Hypothesis& h : r.hypotheses)
    hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  j["hypotheses"] = hyps;
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["lhs"] = op_json(r.lhs, r.lhs_desc);
  j["rhs"] = op_json(r.rhs, r.rhs_desc);
  j["verdict"] = to_string(r.verdict);
  if (r.witness) {
    const WitnessSequence& w = *r.witness;
    j["witness"] = {{"recipe", "psi_k = k^-(" + to_string(w.decay) + ")"},
                    {"decay", to_string(w.decay)},
                    {"member_weight", to_string(w.member_weight)},
                    {"excluded_weight", to_string(w.excluded_weight)},
                    {"convergent_exponent", to_string(w.convergent_exponent)},
                    {"divergent_exponent", to_string(w.divergent_exponent)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

void run_zeno_family(const ExperimentConfig& cfg, std::vector<OutFile>& files) {
  const MeasurorSpec m = build_measuror(cfg);
  const HamiltonianRep h = build_hamiltonian(cfg);
  const StateVector psi0 = build_initial(cfg).state;

  if (cfg.experiment == ExperimentKind::SoftCompare) {
    std::string csv = csv_header(
        "soft-compare", "n,discrepancy,product_survival,generator_survival");
    std::string dat;
    for (long n : cfg.n_list) {
      const SoftCompareResult r = soft_zeno_compare(psi0, h, m, cfg.t_total, n);
      csv += fmt(n) + "," + fmt(r.discrepancy) + "," +
             fmt(survival_probability(r.product_state)) + "," +
             fmt(survival_probability(r.generator_state)) + "\n";
      dat += fmt(n) + " " + fmt(r.discrepancy) + "\n";
    }
    files.push_back({"results.csv", std::move(csv)});
    if (cfg.emit_plot_data) files.push_back({"soft.dat", std::move(dat)});
    return;
  }

  ZenoRunConfig rc;
  rc.hamiltonian = h;
  rc.measuror = m;
  rc.initial = psi0;
  rc.t_total = cfg.t_total;
  rc.n_list = cfg.n_list;
  rc.reference = cfg.reference;
  const ZenoResult res = run_zeno(rc);

  double worst_edge = 0.0;
  for (const ZenoRecord& r : res.records) worst_edge = std::max(worst_edge, r.max_edge_mass);
  if (worst_edge >= kEdgeMassGuard)
    throw GuardTrip("box-edge-mass",
                    "mass within 1 of the box edge reached " + fmt(worst_edge) +
                        " (limit " + fmt(kEdgeMassGuard) +
                        "); enlarge the box or refine the slicing");

  if (cfg.experiment == ExperimentKind::Convergence) {
    std::string csv = csv_header(
        "convergence",
        "n,survival_probability,limit_error,boundary_amp_left,boundary_amp_right");
    std::string dat;
    for (const ZenoRecord& r : res.records) {
      csv += fmt(r.n) + "," + fmt(r.survival_probability) + "," + fmt(r.limit_error) +
             "," + fmt(r.boundary_amp_left) + "," + fmt(r.boundary_amp_right) + "\n";
      dat += fmt(std::log10(double(r.n))) + " " + fmt(std::log10(r.limit_error)) + "\n";
    }
    files.push_back({"results.csv", std::move(csv)});
    if (cfg.emit_plot_data) files.push_back({"convergence.dat", std::move(dat)});
  } else {
    std::string csv = csv_header(
        "zeno-run", "n,survival_probability,boundary_amp_left,boundary_amp_right");
    std::string dat;
    for (const ZenoRecord& r : res.records) {
      csv += fmt(r.n) + "," + fmt(r.survival_probability) + "," +
             fmt(r.boundary_amp_left) + "," + fmt(r.boundary_amp_right) + "\n";
      dat += fmt(r.n) + " " + fmt(r.survival_probability) + "\n";
    }
    files.push_back({"results.csv", std::move(csv)});
    if (cfg.emit_plot_data) files.push_back({"survival.dat", std::move(dat)});
  }
}

void run_spectrum(const ExperimentConfig& cfg, std::vector<OutFile>& files) {
  const std::vector<double> vals = dirichlet_spectrum(cfg.grid, cfg.counter, cfg.count);
  const SnappedRegion r = snap_region(cfg.grid, cfg.counter);
  const double w = r.width();
  std::string csv = csv_header("spectrum", "k,eigenvalue,continuum_value,relative_error");
  std::string dat;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double cont = std::pow(double(i + 1) * std::numbers::pi / w, 2);
    const double rel = (vals[i] - cont) / cont;
    const std::string row = fmt(long(i + 1)) + "," + fmt(vals[i]) + "," + fmt(cont) +
                            "," + fmt(rel);
    csv += row + "\n";
    dat += fmt(long(i + 1)) + " " + fmt(vals[i]) + " " + fmt(cont) + " " + fmt(rel) + "\n";
  }
  files.push_back({"results.csv", std::move(csv)});
  if (cfg.emit_plot_data) files.push_back({"spectrum.dat", std::move(dat)});
}

void run_probe(const ExperimentConfig& cfg, std::vector<OutFile>& files) {
  const MeasurorSpec m = build_measuror(cfg);
  const HamiltonianRep h = build_hamiltonian(cfg);
  const ProbeTable t = semigroup_probe(h, m, cfg.t_list, cfg.n_fixed);
  std::string csv = csv_header("semigroup-probe", "t,d_sine_1,d_sine_2,d_sine_3,d_gaussian");
  std::string dat;
  for (std::size_t i = 0; i < t.t.size(); ++i) {
    std::string row = fmt(t.t[i]);
    for (double d : t.d[i]) row += "," + fmt(d);
    csv += row + "\n";
    dat += fmt(t.t[i]);
    for (double d : t.d[i]) dat += " " + fmt(d);
    dat += "\n";
  }
  files.push_back({"results.csv", std::move(csv)});
  if (cfg.emit_plot_data) files.push_back({"probe.dat", std::move(dat)});
}

void run_domain_check(const ExperimentConfig& cfg, std::vector<OutFile>& files) {
  std::vector<HypothesisReport> reports;
  if (cfg.domain.sweep)
    reports = sweep_rule(cfg.domain.rule, default_sweep_grid());
  else
    reports.push_back(check_rule(cfg.domain.rule, cfg.domain.exponents));

  std::string csv = csv_header("domain-check", "rule_id,a,b,c,h,verdict,witness_present");
  json arr = json::array();
  for (const HypothesisReport& r : reports) {
    std::string row = r.rule_id;
    for (const char* role : {"a", "b", "c", "h"}) {
      auto it = r.exponents.find(role);
      row += ",";
      if (it != r.exponents.end()) row += to_string(it->second);
    }
    row += std::string(",") + to_string(r.verdict) + "," + (r.witness ? "1" : "0");
    csv += row + "\n";
    arr.push_back(report_json(r));
  }
  files.push_back({"results.csv", std::move(csv)});
  files.push_back({"report.json", arr.dump(2) + "\n"});
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names = {"zeno-run",        "convergence",
                                                 "spectrum",        "semigroup-probe",
                                                 "soft-compare",    "domain-check"};
  return names;
}

const std::string& experiment_name(ExperimentKind k) {
  return known_experiments()[std::size_t(k)];
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("", "top level must be an object");

  ExperimentConfig cfg;
  const std::string exp = get_str(need(j, "", "experiment"), "/experiment");
  {
    bool found = false;
    const auto& names = known_experiments();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == exp) {
        cfg.experiment = ExperimentKind(i);
        found = true;
      }
    if (!found) {
      std::string msg = "unknown experiment \"" + exp + "\"; known:";
      for (const auto& n : names) msg += " " + n;
      bad("/experiment", msg);
    }
  }

  std::vector<const char*> allowed = {"experiment", "output_dir", "emit_plot_data"};
  switch (cfg.experiment) {
    case ExperimentKind::ZenoRun:
    case ExperimentKind::SoftCompare:
      for (const char* k : {"grid", "counter", "measuror", "hamiltonian", "initial",
                            "t_total", "n_list"})
        allowed.push_back(k);
      break;
    case ExperimentKind::Convergence:
      for (const char* k : {"grid", "counter", "measuror", "hamiltonian", "initial",
                            "t_total", "n_list", "reference"})
        allowed.push_back(k);
      break;
    case ExperimentKind::Spectrum:
      for (const char* k : {"grid", "counter", "count"}) allowed.push_back(k);
      break;
    case ExperimentKind::SemigroupProbe:
      for (const char* k : {"grid", "counter", "measuror", "hamiltonian", "t_list",
                            "n_fixed"})
        allowed.push_back(k);
      break;
    case ExperimentKind::DomainCheck:
      allowed.push_back("domain");
      break;
  }
  check_keys(j, "", allowed);

  if (j.contains("output_dir"))
    cfg.output_dir = get_str(j.at("output_dir"), "/output_dir");
  if (j.contains("emit_plot_data"))
    cfg.emit_plot_data = get_bool(j.at("emit_plot_data"), "/emit_plot_data");

  if (cfg.experiment == ExperimentKind::DomainCheck) {
    cfg.domain = parse_domain(need(j, "", "domain"));
  } else {
    cfg.grid = parse_grid(need(j, "", "grid"));
    cfg.counter = parse_counter(need(j, "", "counter"), cfg.grid);
    if (cfg.experiment == ExperimentKind::Spectrum) {
      cfg.count = get_int(need(j, "", "count"), "/count");
      if (cfg.count < 1) bad("/count", "must be >= 1");
    } else {
      cfg.measuror = parse_measuror(need(j, "", "measuror"));
      cfg.hamiltonian = parse_hamiltonian(need(j, "", "hamiltonian"));
      if (cfg.experiment == ExperimentKind::SemigroupProbe) {
        const json& tl = need(j, "", "t_list");
        if (!tl.is_array() || tl.empty()) bad("/t_list", "expected a nonempty array");
        for (std::size_t i = 0; i < tl.size(); ++i) {
          const double t = get_num(tl[i], "/t_list");
          if (t < 0.0) bad("/t_list", "entries must be >= 0");
          if (!cfg.t_list.empty() && !(t < cfg.t_list.back()))
            bad("/t_list", "must be strictly descending");
          cfg.t_list.push_back(t);
        }
        cfg.n_fixed = get_int(need(j, "", "n_fixed"), "/n_fixed");
        if (cfg.n_fixed < 1) bad("/n_fixed", "must be >= 1");
      } else {
        cfg.initial = parse_initial(need(j, "", "initial"), cfg.grid);
        cfg.t_total = get_num(need(j, "", "t_total"), "/t_total");
        if (!(cfg.t_total > 0.0)) bad("/t_total", "must be > 0");
        cfg.n_list = parse_n_list(need(j, "", "n_list"));
        if (cfg.experiment == ExperimentKind::Convergence) {
          cfg.reference = ReferenceKind::CompressedGenerator;
          if (j.contains("reference")) {
            const std::string r = get_str(j.at("reference"), "/reference");
            if (r == "compressed-generator")
              cfg.reference = ReferenceKind::CompressedGenerator;
            else if (r == "dirichlet-continuum")
              cfg.reference = ReferenceKind::DirichletContinuum;
            else if (r == "none")
              bad("/reference", "convergence needs a reference evolution");
            else
              bad("/reference", "expected compressed-generator or dirichlet-continuum");
          }
        }
        if (cfg.experiment == ExperimentKind::SoftCompare &&
            cfg.measuror.kind == MeasurorKind::Sharp)
          bad("/measuror/kind", "soft-compare needs a soft (non-sharp) measuror");
      }
    }
  }

  cfg.canonical = j.dump();
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> warnings;
  if (cfg.experiment == ExperimentKind::DomainCheck) {
    if (!cfg.domain.sweep) check_rule(cfg.domain.rule, cfg.domain.exponents);
    else rule_roles(cfg.domain.rule);
    return warnings;
  }

  if (cfg.experiment == ExperimentKind::Spectrum) {
    if (cfg.grid.kind != GridKind::PeriodicBox)
      bad("/grid/kind", "spectrum needs a periodic-box grid");
    SnappedRegion r{};
    try {
      r = snap_region(cfg.grid, cfg.counter);
    } catch (const std::invalid_argument& e) {
      bad("/counter", e.what());
    }
    const long dim = long(r.jb) - long(r.ja) - 1;
    if (cfg.count > dim)
      bad("/count", "asks for " + fmt(cfg.count) + " eigenvalues but the counter has " +
                        fmt(dim) + " interior nodes");
    return warnings;
  }

  const MeasurorSpec m = build_measuror(cfg);
  const HamiltonianRep h = build_hamiltonian(cfg);

  if (cfg.experiment == ExperimentKind::SemigroupProbe) {
    CounterRegion sup{};
    try {
      sup = measuror_support(m);
    } catch (const std::invalid_argument& e) {
      bad("/measuror", e.what());
    }
    try {
      for (int k = 1; k <= 3; ++k) prepare_sine_mode(cfg.grid, k, sup);
      const PreparedState ps = prepare_gaussian(cfg.grid, 0.5 * (sup.a + sup.b), 0.0,
                                                0.1 * (sup.b - sup.a));
      warnings = ps.warnings;
    } catch (const std::invalid_argument& e) {
      bad("/counter", std::string("probe construction failed: ") + e.what());
    }
    return warnings;
  }

  const PreparedState ps = build_initial(cfg);
  warnings = ps.warnings;

  if (cfg.experiment == ExperimentKind::Convergence &&
      cfg.reference == ReferenceKind::DirichletContinuum && !m.region)
    bad("/reference", "dirichlet-continuum needs a sharp or mollified measuror");

  if (needs_dynamics(cfg.experiment) && cfg.experiment != ExperimentKind::SoftCompare) {
    try {
      const CounterRegion trace =
          cfg.grid.kind == GridKind::InteriorDirichlet
              ? CounterRegion{cfg.grid.x_lo, cfg.grid.x_hi}
              : measuror_support(m);
      boundary_trace(ps.state, trace);
    } catch (const std::invalid_argument& e) {
      bad("/measuror", std::string("support unusable for boundary traces: ") + e.what());
    }
  }
  (void)h;
  return warnings;
}

std::string resolve_out_dir(const ExperimentConfig& cfg, const char* env_value,
                            const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (env_value && *env_value) return env_value;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  return ".";
}

RunOutputs run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);  // throws filesystem_error -> CLI exit 3

  std::vector<OutFile> files;
  switch (cfg.experiment) {
    case ExperimentKind::ZenoRun:
    case ExperimentKind::Convergence:
    case ExperimentKind::SoftCompare:
      run_zeno_family(cfg, files);
      break;
    case ExperimentKind::Spectrum:
      run_spectrum(cfg, files);
      break;
    case ExperimentKind::SemigroupProbe:
      run_probe(cfg, files);
      break;
    case ExperimentKind::DomainCheck:
      run_domain_check(cfg, files);
      break;
  }

  json manifest;
  manifest["config_hash"] = config_hash(cfg);
  manifest["tool_version"] = kVersion;
  manifest["generated_utc"] = utc_now();  // not part of the hashed content
  manifest["experiment"] = experiment_name(cfg.experiment);
  json outs = json::array();
  for (const OutFile& f : files) outs.push_back(f.name);
  manifest["outputs"] = outs;
  files.push_back({"manifest.json", manifest.dump(2) + "\n"});

  RunOutputs ro;
  for (const OutFile& f : files) {
    const fs::path p = fs::path(out_dir) / f.name;
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os << f.content;
    os.close();
    if (!os)
      throw fs::filesystem_error("cannot write output file", p,
                                 std::make_error_code(std::errc::io_error));
    ro.files.push_back(f.name);
  }
  return ro;
}

std::string schema_text(const std::string& experiment) {
  const std::string common =
      "  common keys: output_dir (string, optional), emit_plot_data (bool, default true)\n";
  const std::string dynamics =
      "  grid: {x_lo, x_hi, n_points, kind: periodic-box | interior-dirichlet}\n"
      "  counter: {a, b}  (snapped to grid nodes on periodic grids)\n"
      "  measuror: {kind: sharp | mollified | custom | identity,\n"
      "             eps + profile (mollified only; raised-cosine | poly-bump),\n"
      "             weights (custom only)}\n"
      "  hamiltonian: {kind: free-periodic-spectral | dirichlet-sine,\n"
      "                eigenvalues: continuum | discrete (dirichlet-sine only)}\n";
  const std::string initial =
      "  initial: {kind: gaussian (x0, k0, sigma) | sine-mode (k, on the counter) |\n"
      "            point-mass (index) | custom (amplitudes as [re, im] pairs)}\n";
  if (experiment == "zeno-run")
    return "zeno-run: repeated measure-evolve-measure products\n" + dynamics + initial +
           "  t_total (> 0), n_list (ascending positive integers)\n" + common +
           "results.csv (# schema: zeno-run.v1):\n"
           "  n,survival_probability,boundary_amp_left,boundary_amp_right\n"
           "plot data: survival.dat (n, survival_probability)\n";
  if (experiment == "convergence")
    return "convergence: distance from the Zeno product to the limit evolution\n" +
           dynamics + initial +
           "  t_total, n_list, reference: compressed-generator | dirichlet-continuum\n" +
           common +
           "results.csv (# schema: convergence.v1):\n"
           "  n,survival_probability,limit_error,boundary_amp_left,boundary_amp_right\n"
           "plot data: convergence.dat (log10 n, log10 limit_error)\n";
  if (experiment == "spectrum")
    return "spectrum: lowest Dirichlet eigenvalues of the counter-restricted H\n"
           "  grid (periodic-box), counter {a, b}, count (>= 1)\n" + common +
           "results.csv (# schema: spectrum.v1):\n"
           "  k,eigenvalue,continuum_value,relative_error\n"
           "plot data: spectrum.dat (same columns, space-separated)\n";
  if (experiment == "semigroup-probe")
    return "semigroup-probe: || (M U(t/n) M)^n psi - M psi || for shrinking t\n" +
           dynamics + "  t_list (strictly descending, >= 0), n_fixed (>= 1)\n" + common +
           "results.csv (# schema: semigroup-probe.v1):\n"
           "  t,d_sine_1,d_sine_2,d_sine_3,d_gaussian\n"
           "plot data: probe.dat (same columns, space-separated)\n";
  if (experiment == "soft-compare")
    return "soft-compare: soft-measuror Zeno product vs compressed-generator flow\n" +
           dynamics + initial + "  t_total, n_list; measuror must not be sharp\n" + common +
           "results.csv (# schema: soft-compare.v1):\n"
           "  n,discrepancy,product_survival,generator_survival\n"
           "plot data: soft.dat (n, discrepancy)\n";
  if (experiment == "domain-check")
    return "domain-check: exact adjoint-identity verdicts in the power-scale model\n"
           "  domain: {rule: lemma-3-1 | theorem-3-1 | theorem-4-1 | corollary-4-1 |\n"
           "           corollary-4-2, exponents: {role: int or \"p/q\"} or sweep: true}\n" +
           common +
           "results.csv (# schema: domain-check.v1):\n"
           "  rule_id,a,b,c,h,verdict,witness_present\n"
           "report.json: array of hypothesis reports (rule_id, exponents, hypotheses,\n"
           "  lhs/rhs descriptors, verdict, witness recipe with exact series exponents)\n";
  std::string msg = "unknown experiment \"" + experiment + "\"; known:";
  for (const auto& n : known_experiments()) msg += " " + n;
  throw std::invalid_argument(msg);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(cfg.canonical)));
  return buf;
}

}  // namespace zenolab
