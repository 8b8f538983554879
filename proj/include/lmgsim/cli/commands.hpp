#pragma once

#include <string>
#include <vector>

#include "lmgsim/cli/config.hpp"

namespace lmgsim::cli {

/// One output file: written to <prefix><suffix>.
struct Artifact {
  std::string suffix;
  std::string content;
};

/// Runs the configured command and returns its files without touching disk.
/// Output bytes do not depend on `threads`.
std::vector<Artifact> render(const ExperimentConfig& cfg, int threads = 1);

/// Writes every artifact; returns the paths written.
std::vector<std::string> write_artifacts(const std::vector<Artifact>& artifacts, const std::string& prefix);

/// LMGSIM_THREADS if set to a positive integer, otherwise 1.
int default_threads();

}  // namespace lmgsim::cli
