#include "lmgsim/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "lmgsim/error.hpp"

namespace lmgsim::cli {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::ConfigError, "config field '" + field + "': " + message);
}

void reject_unknown(const ordered_json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      fail(where.empty() ? key : where + "." + key, where.empty() ? "unknown or unused field" : "unknown field");
    }
  }
}

double number(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::int64_t integer(const ordered_json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string string_of(const ordered_json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

const ordered_json& require(const ordered_json& obj, const std::string& key, const std::string& prefix = "") {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(prefix + key, "required");
  return *it;
}

ordered_json object_at(const ordered_json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object");
  return v;
}

std::vector<int> int_list(const ordered_json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<int>(integer(v[i], field + "[" + std::to_string(i) + "]")));
  return out;
}

const std::map<Command, std::set<std::string>>& allowed_fields() {
  static const std::set<std::string> common = {"command", "n", "delta", "j", "output", "seed"};
  static const std::map<Command, std::set<std::string>> extra = {
      {Command::GroundScan, {"perturbation", "targets"}},
      {Command::Spectrum, {"perturbation"}},
      {Command::EntanglementScan, {"perturbation"}},
      {Command::Evolve, {"perturbation", "initial_state", "targets", "time", "pairs", "blocks"}},
      {Command::MaxFidelity, {"initial_state", "targets", "time"}},
      {Command::Disorder, {"disorder"}},
  };
  static const std::map<Command, std::set<std::string>> table = [] {
    std::map<Command, std::set<std::string>> t;
    for (const auto& [cmd, keys] : extra) {
      t[cmd] = common;
      t[cmd].insert(keys.begin(), keys.end());
    }
    return t;
  }();
  return table;
}

CouplingGrid parse_j(const ordered_json& v) {
  CouplingGrid g;
  if (v.is_number()) {
    g.value = number(v, "j");
    return g;
  }
  if (!v.is_object()) fail("j", "expected a number or {min, max, steps}");
  reject_unknown(v, "j", {"min", "max", "steps"});
  g.is_range = true;
  g.min = number(require(v, "min", "j."), "j.min");
  g.max = number(require(v, "max", "j."), "j.max");
  g.steps = static_cast<int>(integer(require(v, "steps", "j."), "j.steps"));
  if (g.steps < 1) fail("j.steps", "must be at least 1");
  if (g.max < g.min) fail("j.max", "must not be below j.min");
  return g;
}

void check_reference(const std::string& name, int n, const std::string& field) {
  try {
    make_reference(parse_reference(name), n);
  } catch (const Error& e) {
    fail(field, e.what());
  }
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::GroundScan: return "ground-scan";
    case Command::Spectrum: return "spectrum";
    case Command::EntanglementScan: return "entanglement-scan";
    case Command::Evolve: return "evolve";
    case Command::MaxFidelity: return "max-fidelity";
    case Command::Disorder: return "disorder";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::GroundScan, Command::Spectrum, Command::EntanglementScan, Command::Evolve,
                    Command::MaxFidelity, Command::Disorder}) {
    if (command_name(c) == name) return c;
  }
  fail("command", "unknown command '" + name + "'");
}

std::vector<double> CouplingGrid::values() const { return is_range ? linspace(min, max, steps) : std::vector<double>{value}; }

ExperimentConfig parse_config(const ordered_json& doc, const std::optional<Command>& command_override) {
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  ExperimentConfig cfg;
  cfg.raw = doc;

  std::optional<Command> from_file;
  if (doc.contains("command")) from_file = parse_command(string_of(doc["command"], "command"));
  if (command_override && from_file && *command_override != *from_file) {
    fail("command", "file says '" + command_name(*from_file) + "' but '" + command_name(*command_override) + "' was requested");
  }
  if (!command_override && !from_file) fail("command", "required");
  cfg.command = command_override ? *command_override : *from_file;
  reject_unknown(doc, "", allowed_fields().at(cfg.command));

  const ordered_json& nv = require(doc, "n");
  if (nv.is_array()) {
    if (cfg.command != Command::EntanglementScan) fail("n", "a list of sizes is only accepted by entanglement-scan");
    cfg.n = int_list(nv, "n");
    if (cfg.n.empty()) fail("n", "must not be empty");
  } else {
    cfg.n = {static_cast<int>(integer(nv, "n"))};
  }
  const int min_n = (cfg.command == Command::EntanglementScan || cfg.command == Command::Disorder) ? 2 : 1;
  for (int n : cfg.n) {
    if (n < min_n || n > kMaxQubits) fail("n", "must lie in [" + std::to_string(min_n) + ", " + std::to_string(kMaxQubits) + "]");
  }
  const int n = cfg.n.front();

  if (doc.contains("delta")) {
    cfg.delta = number(doc["delta"], "delta");
    if (!(cfg.delta > 0)) fail("delta", "must be positive");
  }
  cfg.j = parse_j(require(doc, "j"));
  const bool wants_range = cfg.command == Command::GroundScan || cfg.command == Command::Spectrum ||
                           cfg.command == Command::EntanglementScan;
  const bool wants_scalar = cfg.command == Command::Evolve || cfg.command == Command::Disorder;
  if (wants_range && !cfg.j.is_range) fail("j", "command '" + command_name(cfg.command) + "' needs a range {min, max, steps}");
  if (wants_scalar && cfg.j.is_range) fail("j", "command '" + command_name(cfg.command) + "' needs a single coupling");

  cfg.output = doc.contains("output") ? string_of(doc["output"], "output") : command_name(cfg.command);
  if (cfg.output.empty()) fail("output", "must not be empty");
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) fail("seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  if (doc.contains("perturbation")) {
    const ordered_json p = object_at(doc["perturbation"], "perturbation");
    reject_unknown(p, "perturbation", {"qubit", "g"});
    Perturbation pert;
    pert.qubit = static_cast<int>(integer(require(p, "qubit", "perturbation."), "perturbation.qubit"));
    pert.g = number(require(p, "g", "perturbation."), "perturbation.g");
    for (int size : cfg.n) {
      if (pert.qubit < 1 || pert.qubit > size) fail("perturbation.qubit", "outside [1, " + std::to_string(size) + "]");
    }
    cfg.perturbation = pert;
  }

  if (doc.contains("initial_state")) {
    cfg.initial_state = string_of(doc["initial_state"], "initial_state");
    check_reference(*cfg.initial_state, n, "initial_state");
  }
  if (doc.contains("targets")) {
    const auto& t = doc["targets"];
    if (!t.is_array()) fail("targets", "expected an array of state names");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string field = "targets[" + std::to_string(i) + "]";
      cfg.targets.push_back(string_of(t[i], field));
      check_reference(cfg.targets.back(), n, field);
    }
  }
  if (doc.contains("time")) {
    const ordered_json t = object_at(doc["time"], "time");
    reject_unknown(t, "time", {"t_max", "steps"});
    TimeGrid grid;
    grid.t_max = number(require(t, "t_max", "time."), "time.t_max");
    grid.steps = static_cast<int>(integer(require(t, "steps", "time."), "time.steps"));
    if (!(grid.t_max > 0)) fail("time.t_max", "must be positive");
    if (grid.steps < 1) fail("time.steps", "must be at least 1");
    cfg.time = grid;
  }
  if (doc.contains("pairs")) {
    const auto& p = doc["pairs"];
    if (!p.is_array()) fail("pairs", "expected an array of [i, j] pairs");
    for (std::size_t k = 0; k < p.size(); ++k) {
      const std::string field = "pairs[" + std::to_string(k) + "]";
      const std::vector<int> q = int_list(p[k], field);
      if (q.size() != 2 || q[0] == q[1]) fail(field, "expected two distinct qubits");
      for (int x : q) {
        if (x < 1 || x > n) fail(field, "qubit outside [1, " + std::to_string(n) + "]");
      }
      cfg.pairs.push_back({q[0], q[1]});
    }
  }
  if (doc.contains("blocks")) {
    const auto& b = doc["blocks"];
    if (!b.is_array()) fail("blocks", "expected an array of qubit lists");
    for (std::size_t k = 0; k < b.size(); ++k) {
      const std::string field = "blocks[" + std::to_string(k) + "]";
      std::vector<int> q = int_list(b[k], field);
      std::vector<int> sorted = q;
      std::sort(sorted.begin(), sorted.end());
      if (q.empty() || static_cast<int>(q.size()) >= n) fail(field, "must be a non-empty strict subset of the qubits");
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(field, "repeated qubit");
      if (sorted.front() < 1 || sorted.back() > n) fail(field, "qubit outside [1, " + std::to_string(n) + "]");
      cfg.blocks.push_back(std::move(q));
    }
  }
  if (doc.contains("disorder")) {
    const ordered_json d = object_at(doc["disorder"], "disorder");
    reject_unknown(d, "disorder", {"family", "delta1", "delta2", "sk_std", "realizations", "per_realization"});
    DisorderBlock block;
    if (d.contains("family")) {
      const std::string fam = string_of(d["family"], "disorder.family");
      if (fam == "uniform") block.family = DisorderFamily::UniformInterval;
      else if (fam == "sk") block.family = DisorderFamily::GaussianSK;
      else fail("disorder.family", "expected \"uniform\" or \"sk\"");
    }
    if (d.contains("delta1")) block.delta1 = number(d["delta1"], "disorder.delta1");
    if (d.contains("delta2")) block.delta2 = number(d["delta2"], "disorder.delta2");
    if (block.delta1 < 0 || block.delta1 > 1) fail("disorder.delta1", "must lie in [0, 1]");
    if (block.delta2 < 0 || block.delta2 > 1) fail("disorder.delta2", "must lie in [0, 1]");
    if (d.contains("sk_std")) {
      block.sk_std = number(d["sk_std"], "disorder.sk_std");
      if (*block.sk_std < 0) fail("disorder.sk_std", "must be non-negative");
    }
    block.realizations = static_cast<int>(integer(require(d, "realizations", "disorder."), "disorder.realizations"));
    if (block.realizations < 1) fail("disorder.realizations", "must be at least 1");
    if (d.contains("per_realization")) {
      if (!d["per_realization"].is_boolean()) fail("disorder.per_realization", "expected a boolean");
      block.per_realization = d["per_realization"].get<bool>();
    }
    cfg.disorder = block;
  }

  switch (cfg.command) {
    case Command::GroundScan:
      if (cfg.targets.empty()) {
        cfg.targets = {"SEP", "GHZ"};
        if (n == 3) cfg.targets.push_back("ENT3");
      }
      break;
    case Command::Spectrum:
    case Command::EntanglementScan:
      break;
    case Command::Evolve:
      if (!cfg.initial_state) fail("initial_state", "required");
      if (!cfg.time) fail("time", "required");
      if (cfg.targets.empty() && cfg.pairs.empty() && cfg.blocks.empty()) {
        fail("targets", "evolve needs at least one target, pair or block");
      }
      break;
    case Command::MaxFidelity:
      if (!cfg.initial_state) fail("initial_state", "required");
      if (!cfg.time) fail("time", "required");
      if (cfg.targets.size() != 1) fail("targets", "max-fidelity needs exactly one target");
      break;
    case Command::Disorder:
      if (!cfg.disorder) fail("disorder", "required");
      break;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::optional<Command>& command_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, command_override);
}

}  // namespace lmgsim::cli
