#pragma once

// JSON experiment configuration. Unknown keys are rejected and every
// validation error names the offending field.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmgsim/disorder.hpp"
#include "lmgsim/dynamics.hpp"
#include "lmgsim/entanglement.hpp"

namespace lmgsim::cli {

enum class Command { GroundScan, Spectrum, EntanglementScan, Evolve, MaxFidelity, Disorder };

std::string command_name(Command c);
Command parse_command(const std::string& name);

/// Either a single coupling or `steps` points from min to max inclusive.
struct CouplingGrid {
  bool is_range = false;
  double value = 0.0;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct DisorderBlock {
  DisorderFamily family = DisorderFamily::UniformInterval;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::optional<double> sk_std;
  int realizations = 1;
  bool per_realization = false;
};

struct ExperimentConfig {
  Command command = Command::GroundScan;
  std::vector<int> n;  // a list only for entanglement-scan
  double delta = 1.0;
  CouplingGrid j;
  std::optional<Perturbation> perturbation;
  std::optional<std::string> initial_state;
  std::vector<std::string> targets;
  std::optional<TimeGrid> time;
  std::vector<QubitPair> pairs;
  std::vector<std::vector<int>> blocks;
  std::optional<DisorderBlock> disorder;
  std::string output;
  std::uint64_t seed = 0;

  nlohmann::ordered_json raw;  // echoed into JSON outputs

  int qubits() const { return n.front(); }
};

/// Parses and validates; `command_override` (the CLI subcommand) must agree
/// with a "command" field when both are given.
ExperimentConfig parse_config(const nlohmann::ordered_json& doc, const std::optional<Command>& command_override = {});
ExperimentConfig load_config(const std::string& path, const std::optional<Command>& command_override = {});

}  // namespace lmgsim::cli
