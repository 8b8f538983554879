#pragma once

// Quenched-disorder ensembles.
//
// Every realization draws from its own generator seeded with
// realization_seed(master_seed, index), so a realization's Hamiltonian depends
// only on (master_seed, index) and ensembles reduce identically regardless of
// execution order or thread count.
//
// The stream is std::mt19937_64 (fully specified by the standard). Uniform
// variates take the top 53 bits; normals use Box-Muller. Neither goes through
// the implementation-defined <random> distributions.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lmgsim/hamiltonian.hpp"

namespace lmgsim {

enum class DisorderFamily { UniformInterval, GaussianSK };

struct DisorderConfig {
  DisorderFamily family = DisorderFamily::UniformInterval;
  int n = 0;
  double base_j = 0.0;
  double base_delta = 1.0;
  double delta1 = 0.0;  // couplings drawn from [1-delta1, 1+delta1] * J
  double delta2 = 0.0;  // splittings drawn from [1-delta2, 1+delta2] * Delta
  std::optional<double> sk_std;  // Gaussian std of J_ij; defaults to |J|/sqrt(n)
  int realizations = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
  double effective_sk_std() const;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

HamiltonianSpec sample_spec(const DisorderConfig& cfg, int realization_index);

struct EnsembleStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single realization
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

struct EnsembleResult {
  std::vector<std::string> names;
  std::vector<EnsembleStats> stats;           // [observable]
  std::vector<std::vector<double>> samples;   // [realization][observable]
};

using Extractor = std::function<std::vector<double>(const HamiltonianSpec&)>;

/// Evaluates `extract` on every realization and reduces in index order.
/// A failing realization is rethrown as RealizationFailed naming its index.
EnsembleResult run_ensemble(const DisorderConfig& cfg, const std::vector<std::string>& names, const Extractor& extract,
                            int threads = 1);

EnsembleStats summarize(std::span<const double> values);

/// Ground-state observables and their relative deviations from the clean
/// (homogeneous) network with the same n, J and Delta:
///   E_N_mean, S_mean, E_N_12, S_1, ground_energy, fidelity_clean,
///   rel_dev_E_N_mean, rel_dev_S_mean, rel_dev_E_N_12, rel_dev_S_1
struct GroundObservables {
  std::vector<std::string> names;
  Extractor extract;
};
GroundObservables ground_observables(const DisorderConfig& cfg);

}  // namespace lmgsim
