#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "zenolab/errors.hpp"
#include "zenolab/experiment.hpp"
#include "zenolab/kernels.hpp"
#include "zenolab/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"zeno-lab: repeated-measurement dynamics on a 1d grid plus exact "
               "diagonal-operator domain checks"};
  app.set_version_flag("--version", zenolab::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_flag, experiment;
  int threads = 0;

  CLI::App* cmd_run = app.add_subcommand("run", "run an experiment config");
  cmd_run->add_option("config", config_path, "experiment config (JSON)")->required();
  cmd_run->add_option("--out", out_flag,
                      "output directory (wins over ZENO_LAB_OUT and the config)");
  cmd_run->add_option("--threads", threads, "worker thread count (results identical)");

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check a config without running anything");
  cmd_validate->add_option("config", config_path, "experiment config (JSON)")->required();

  CLI::App* cmd_schema =
      app.add_subcommand("schema", "print config keys and result-file schema");
  cmd_schema->add_option("experiment", experiment, "experiment name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_schema->parsed()) {
      std::cout << zenolab::schema_text(experiment);
      return 0;
    }
    if (threads > 0) zenolab::kernels::set_threads(threads);

    zenolab::ExperimentConfig cfg = zenolab::load_config(config_path);
    const std::vector<std::string> warnings = zenolab::validate_config(cfg);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

    if (cmd_validate->parsed()) {
      std::cout << "ok: valid " << zenolab::experiment_name(cfg.experiment)
                << " config\n";
      return 0;
    }

    const char* env = std::getenv("ZENO_LAB_OUT");
    const std::string out = zenolab::resolve_out_dir(cfg, env, out_flag);
    const zenolab::RunOutputs ro = zenolab::run_experiment(cfg, out);
    for (const std::string& f : ro.files) std::cout << out << "/" << f << "\n";
    return 0;
  } catch (const zenolab::GuardTrip& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
