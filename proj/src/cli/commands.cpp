#include "lmgsim/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lmgsim/cli/format.hpp"
#include "lmgsim/error.hpp"
#include "lmgsim/parallel.hpp"
#include "lmgsim/spectra.hpp"

namespace lmgsim::cli {

using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

HamiltonianSpec homogeneous_spec(const ExperimentConfig& cfg, int n, double j, bool with_perturbation) {
  HamiltonianSpec spec = HamiltonianSpec::homogeneous(n, cfg.delta, j);
  if (with_perturbation && cfg.perturbation) spec.set_perturbation(cfg.perturbation->qubit, cfg.perturbation->g);
  return spec;
}

std::vector<Artifact> ground_scan(const ExperimentConfig& cfg, int threads) {
  const int n = cfg.qubits();
  const std::vector<double> js = cfg.j.values();
  std::vector<StateVector> refs;
  for (const auto& name : cfg.targets) refs.push_back(make_reference(parse_reference(name), n));
  const bool perturbed = cfg.perturbation.has_value();

  std::vector<std::string> header{"J"};
  for (const auto& name : cfg.targets) header.push_back("fid_" + name);
  header.push_back("ground_multiplicity");
  if (perturbed) {
    for (const auto& name : cfg.targets) header.push_back("fid_" + name + "_pert");
  }

  struct Row {
    std::vector<double> ideal, pert;
    int multiplicity = 0;
  };
  std::vector<Row> rows(js.size());
  parallel_for(js.size(), threads, [&](std::size_t k) {
    Row& row = rows[k];
    // degenerate ideal ground level: project onto the whole manifold
    const SpectrumResult s = diagonalize(build_pairwise(homogeneous_spec(cfg, n, js[k], false)));
    const std::vector<StateVector> manifold = ground_manifold(s);
    row.multiplicity = static_cast<int>(manifold.size());
    for (const auto& phi : refs) row.ideal.push_back(subspace_fidelity(manifold, phi));
    if (perturbed) {
      // the perturbation picks one branch; use the single lowest state
      const SpectrumResult sp = diagonalize(build_pairwise(homogeneous_spec(cfg, n, js[k], true)));
      const StateVector g = sp.state(0);
      for (const auto& phi : refs) row.pert.push_back(fidelity(g, phi));
    }
  });

  CsvWriter csv(header);
  for (std::size_t k = 0; k < js.size(); ++k) {
    csv.row().cell(js[k]);
    for (double f : rows[k].ideal) csv.cell(f);
    csv.cell(rows[k].multiplicity);
    for (double f : rows[k].pert) csv.cell(f);
  }
  return {{".csv", csv.str()}};
}

std::vector<Artifact> spectrum(const ExperimentConfig& cfg, int threads) {
  const int n = cfg.qubits();
  const std::vector<double> js = cfg.j.values();
  const Eigen::Index shown = n <= 3 ? (Eigen::Index{1} << n) : (Eigen::Index{1} << (n - 1));
  std::vector<Eigen::VectorXd> energies(js.size());
  std::vector<DegeneracyReport> reports(js.size());
  parallel_for(js.size(), threads, [&](std::size_t k) {
    const SpectrumResult s = diagonalize(build_pairwise(homogeneous_spec(cfg, n, js[k], true)));
    energies[k] = s.energies;
    reports[k] = degeneracy_report(s.energies);
  });

  CsvWriter levels({"J", "level_index", "energy"});
  CsvWriter gaps({"J", "ground_multiplicity", "gap"});
  for (std::size_t k = 0; k < js.size(); ++k) {
    for (Eigen::Index l = 0; l < shown; ++l) levels.row().cell(js[k]).cell(static_cast<long long>(l)).cell(energies[k][l]);
    gaps.row().cell(js[k]).cell(reports[k].ground_multiplicity).cell(reports[k].gap);
  }
  return {{".csv", levels.str()}, {"_gaps.csv", gaps.str()}};
}

std::vector<Artifact> entanglement_scan(const ExperimentConfig& cfg, int threads) {
  const std::vector<double> js = cfg.j.values();
  CsvWriter csv({"J", "N", "E_N_pair", "S_single", "perturbed"});
  const auto emit = [&](const std::vector<EntanglementScanRow>& rows) {
    for (const auto& r : rows) {
      csv.row().cell(r.j).cell(r.n).cell(r.pair_negativity).cell(r.single_entropy).cell(std::string(r.perturbed ? "true" : "false"));
    }
  };
  for (int n : cfg.n) {
    emit(ground_entanglement_scan(n, cfg.delta, js, std::nullopt, threads));
    if (cfg.perturbation) emit(ground_entanglement_scan(n, cfg.delta, js, cfg.perturbation, threads));
  }
  return {{".csv", csv.str()}};
}

std::string block_label(const std::vector<int>& block) {
  std::string s = "S";
  for (int q : block) s += "_" + std::to_string(q);
  return s;
}

std::vector<Artifact> evolve_cmd(const ExperimentConfig& cfg, int threads) {
  const int n = cfg.qubits();
  const HamiltonianSpec spec = homogeneous_spec(cfg, n, cfg.j.value, true);
  const StateVector psi0 = make_reference(parse_reference(*cfg.initial_state), n);
  std::vector<NamedState> targets;
  for (const auto& name : cfg.targets) targets.push_back({name, make_reference(parse_reference(name), n)});

  const EvolutionTrace tr = full_trace(spec, psi0, targets, cfg.pairs, cfg.blocks, *cfg.time, threads);

  std::vector<std::string> header{"t"};
  for (std::size_t i = 0; i < targets.size(); ++i) header.push_back("fidelity_target_" + std::to_string(i + 1));
  for (const auto& [a, b] : cfg.pairs) header.push_back("E_N_" + std::to_string(a) + "_" + std::to_string(b));
  for (const auto& blk : cfg.blocks) header.push_back(block_label(blk));
  CsvWriter csv(header);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    csv.row().cell(tr.times[k]);
    for (const auto& f : tr.fidelities) csv.cell(f[k]);
    for (const auto& e : tr.negativities) csv.cell(e[k]);
    for (const auto& s : tr.entropies) csv.cell(s[k]);
  }

  ordered_json meta;
  meta["command"] = "evolve";
  meta["n"] = n;
  meta["delta"] = cfg.delta;
  meta["j"] = cfg.j.value;
  meta["initial_state"] = *cfg.initial_state;
  meta["targets"] = cfg.targets;
  meta["columns"] = header;
  meta["grid"] = {{"t_max", cfg.time->t_max}, {"steps", cfg.time->steps}};
  meta["max_norm_error"] = tr.max_norm_error;
  meta["max_energy_drift"] = tr.max_energy_drift;
  meta["config"] = cfg.raw;
  return {{".csv", csv.str()}, {".json", dump(meta)}};
}

std::vector<Artifact> max_fidelity_cmd(const ExperimentConfig& cfg, int threads) {
  const int n = cfg.qubits();
  MaxFidelityQuery q;
  q.n = n;
  q.delta = cfg.delta;
  q.j_min = cfg.j.is_range ? cfg.j.min : cfg.j.value;
  q.j_max = cfg.j.is_range ? cfg.j.max : cfg.j.value;
  q.j_steps = cfg.j.is_range ? cfg.j.steps : 1;
  q.grid = *cfg.time;
  q.initial = make_reference(parse_reference(*cfg.initial_state), n);
  q.target = make_reference(parse_reference(cfg.targets.front()), n);
  const MaxFidelityResult r = max_fidelity(q, threads);

  ordered_json out;
  out["best_J"] = r.best_j;
  out["best_t"] = r.best_t;
  out["max_fidelity"] = r.max_fidelity;
  out["initial_state"] = *cfg.initial_state;
  out["target"] = cfg.targets.front();
  out["config"] = cfg.raw;
  return {{".json", dump(out)}};
}

std::vector<Artifact> disorder_cmd(const ExperimentConfig& cfg, int threads) {
  DisorderConfig dc;
  dc.family = cfg.disorder->family;
  dc.n = cfg.qubits();
  dc.base_j = cfg.j.value;
  dc.base_delta = cfg.delta;
  dc.delta1 = cfg.disorder->delta1;
  dc.delta2 = cfg.disorder->delta2;
  dc.sk_std = cfg.disorder->sk_std;
  dc.realizations = cfg.disorder->realizations;
  dc.master_seed = cfg.seed;

  const GroundObservables obs = ground_observables(dc);
  const EnsembleResult res = run_ensemble(dc, obs.names, obs.extract, threads);

  ordered_json out;
  out["config"] = cfg.raw;
  out["family"] = dc.family == DisorderFamily::UniformInterval ? "uniform" : "sk";
  if (dc.family == DisorderFamily::GaussianSK) out["sk_std_effective"] = dc.effective_sk_std();
  ordered_json observables = ordered_json::object();
  for (std::size_t o = 0; o < res.names.size(); ++o) {
    const EnsembleStats& s = res.stats[o];
    observables[res.names[o]] = {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}, {"n", s.count}};
  }
  out["observables"] = observables;

  std::vector<Artifact> files{{".json", dump(out)}};
  if (cfg.disorder->per_realization) {
    std::vector<std::string> header{"realization_index"};
    header.insert(header.end(), res.names.begin(), res.names.end());
    CsvWriter csv(header);
    for (std::size_t r = 0; r < res.samples.size(); ++r) {
      csv.row().cell(static_cast<long long>(r));
      for (double v : res.samples[r]) csv.cell(v);
    }
    files.push_back({"_realizations.csv", csv.str()});
  }
  return files;
}

}  // namespace

std::vector<Artifact> render(const ExperimentConfig& cfg, int threads) {
  switch (cfg.command) {
    case Command::GroundScan: return ground_scan(cfg, threads);
    case Command::Spectrum: return spectrum(cfg, threads);
    case Command::EntanglementScan: return entanglement_scan(cfg, threads);
    case Command::Evolve: return evolve_cmd(cfg, threads);
    case Command::MaxFidelity: return max_fidelity_cmd(cfg, threads);
    case Command::Disorder: return disorder_cmd(cfg, threads);
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled command");
}

std::vector<std::string> write_artifacts(const std::vector<Artifact>& artifacts, const std::string& prefix) {
  std::vector<std::string> paths;
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  for (const auto& a : artifacts) {
    const std::string path = prefix + a.suffix;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << a.content;
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "failed to write '" + path + "'");
    paths.push_back(path);
  }
  return paths;
}

int default_threads() {
  if (const char* env = std::getenv("LMGSIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace lmgsim::cli
