#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwsearch/errors.hpp"
#include "qwsearch/experiments.hpp"

namespace {

using qwsearch::GraphFamily;
using qwsearch::QwError;
using namespace qwsearch::experiments;

struct CliOptions {
  std::string graph = "hypercube";
  std::vector<int> sizes;
  std::string marked;
  std::string out_path;
  int t_max = -1;
  int min_n_fit = 30;
};

ExperimentConfig to_config(const CliOptions& options, bool needs_instances) {
  ExperimentConfig config;
  if (options.graph == "lattice") {
    config.family = GraphFamily::lattice;
  } else if (options.graph == "hypercube") {
    config.family = GraphFamily::hypercube;
  } else {
    throw QwError(qwsearch::ErrorCode::ConfigError,
                  "--graph must be lattice or hypercube");
  }
  config.sizes = options.sizes;
  if (needs_instances) {
    if (config.sizes.empty()) {
      throw QwError(qwsearch::ErrorCode::ConfigError, "--sizes is required");
    }
    config.marked = parse_marked_spec(options.marked);
  }
  config.out_path = options.out_path;
  config.t_max = options.t_max;
  config.min_n_fit = options.min_n_fit;
  return config;
}

void add_common_options(CLI::App* cmd, CliOptions& options, bool needs_instances) {
  if (needs_instances) {
    cmd->add_option("--graph", options.graph, "graph family: lattice or hypercube")
        ->required();
    cmd->add_option("--sizes", options.sizes,
                    "comma-separated sizes (side length or dimension)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--marked", options.marked,
                    "marked vertices: v1,v2,... or random:K:seed")
        ->required();
  }
  cmd->add_option("--out", options.out_path, "output file path")->required();
  cmd->add_option("--tmax", options.t_max, "simulation horizon override");
  cmd->add_option("--min-n-fit", options.min_n_fit,
                  "smallest n included in log-log fits");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qwsearch: running time and success probability of discrete-time "
      "quantum-walk search with multiple marked vertices"};
  app.require_subcommand(1);

  CliOptions options;
  struct Mode {
    const char* name;
    const char* help;
    bool needs_instances;
    int (*run)(const ExperimentConfig&);
  };
  const std::vector<Mode> modes = {
      {"analyze", "spectral solver results as JSON", true, run_analyze},
      {"simulate", "brute-force probability curve as CSV", true, run_simulate},
      {"validate", "solver vs dense-oracle comparison table", true, run_validate},
      {"scaling", "(n, |M|) sweep of solver quantities as CSV", true, run_scaling},
      {"fit", "scaling sweep plus log-log fit of 0.5 − p_succ", true, run_fit},
      {"lemmas", "identity checks behind the asymptotic analysis", false, run_lemmas},
      {"constants", "lattice constant c table", false, run_constants},
  };
  for (const Mode& mode : modes) {
    add_common_options(app.add_subcommand(mode.name, mode.help), options,
                       mode.needs_instances);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    for (const Mode& mode : modes) {
      if (app.get_subcommand(mode.name)->parsed()) {
        return mode.run(to_config(options, mode.needs_instances));
      }
    }
    std::cerr << "no mode selected\n";
    return kExitConfigError;
  } catch (const QwError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
