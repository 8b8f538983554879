#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lmgsim/cli/commands.hpp"
#include "lmgsim/cli/config.hpp"
#include "lmgsim/error.hpp"

int main(int argc, char** argv) {
  using namespace lmgsim::cli;

  CLI::App app{"lmgsim: fully connected transverse-field qubit network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_prefix;
  int threads = default_threads();

  for (const char* name : {"ground-scan", "spectrum", "entanglement-scan", "evolve", "max-fidelity", "disorder"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_prefix, "output path prefix (overrides config 'output')");
    sub->add_option("--threads", threads, "worker threads (default: LMGSIM_THREADS or 1)")->check(CLI::Range(1, 1024));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const Command command = parse_command(app.get_subcommands().front()->get_name());
    const ExperimentConfig cfg = load_config(config_path, command);
    const std::vector<Artifact> files = render(cfg, threads);
    for (const auto& path : write_artifacts(files, out_prefix.value_or(cfg.output))) std::cout << path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "lmgsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
