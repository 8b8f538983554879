#include "lmgsim/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lmgsim/entanglement.hpp"
#include "lmgsim/error.hpp"
#include "lmgsim/parallel.hpp"
#include "lmgsim/spectra.hpp"

namespace lmgsim {

void DisorderConfig::validate() const {
  if (n < 2 || n > kMaxQubits) throw Error(ErrorCode::InvalidArgument, "disorder needs 2 <= n <= " + std::to_string(kMaxQubits));
  if (!(delta1 >= 0.0 && delta1 <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta1 must lie in [0, 1]");
  if (!(delta2 >= 0.0 && delta2 <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta2 must lie in [0, 1]");
  if (!(base_delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "base delta must be positive");
  if (realizations < 1) throw Error(ErrorCode::InvalidArgument, "realizations must be at least 1");
  if (sk_std && !(*sk_std >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sk_std must be non-negative");
}

double DisorderConfig::effective_sk_std() const {
  return sk_std ? *sk_std : std::abs(base_j) / std::sqrt(static_cast<double>(n));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0x5851f42d4c957f2dULL));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = 0.0;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

HamiltonianSpec sample_spec(const DisorderConfig& cfg, int realization_index) {
  cfg.validate();
  if (realization_index < 0 || realization_index >= cfg.realizations) {
    throw Error(ErrorCode::InvalidArgument, "realization index " + std::to_string(realization_index) + " outside [0, " +
                                                std::to_string(cfg.realizations) + ")");
  }
  Rng rng(realization_seed(cfg.master_seed, static_cast<std::uint64_t>(realization_index)));
  HamiltonianSpec spec = HamiltonianSpec::homogeneous(cfg.n, cfg.base_delta, cfg.base_j);
  // draw order: couplings row by row over i < j, then splittings
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = i + 1; j < cfg.n; ++j) {
      double jij = 0.0;
      if (cfg.family == DisorderFamily::UniformInterval) {
        jij = rng.uniform(1.0 - cfg.delta1, 1.0 + cfg.delta1) * cfg.base_j;
      } else {
        jij = cfg.effective_sk_std() * rng.normal();
      }
      spec.couplings(i, j) = spec.couplings(j, i) = jij;
    }
  }
  if (cfg.family == DisorderFamily::UniformInterval) {
    for (int i = 0; i < cfg.n; ++i) spec.deltas[static_cast<std::size_t>(i)] = rng.uniform(1.0 - cfg.delta2, 1.0 + cfg.delta2) * cfg.base_delta;
  }
  return spec;
}

EnsembleStats summarize(std::span<const double> values) {
  EnsembleStats s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (s.count - 1));
  }
  return s;
}

EnsembleResult run_ensemble(const DisorderConfig& cfg, const std::vector<std::string>& names, const Extractor& extract,
                            int threads) {
  cfg.validate();
  EnsembleResult out;
  out.names = names;
  out.samples.resize(static_cast<std::size_t>(cfg.realizations));
  parallel_for(out.samples.size(), threads, [&](std::size_t r) {
    try {
      std::vector<double> values = extract(sample_spec(cfg, static_cast<int>(r)));
      if (values.size() != names.size()) {
        throw Error(ErrorCode::InvalidArgument, "extractor returned " + std::to_string(values.size()) + " values for " +
                                                    std::to_string(names.size()) + " observables");
      }
      out.samples[r] = std::move(values);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::RealizationFailed, "realization " + std::to_string(r) + ": " + e.what());
    }
  });
  for (std::size_t o = 0; o < names.size(); ++o) {
    std::vector<double> column(out.samples.size());
    for (std::size_t r = 0; r < out.samples.size(); ++r) column[r] = out.samples[r][o];
    out.stats.push_back(summarize(column));
  }
  return out;
}

GroundObservables ground_observables(const DisorderConfig& cfg) {
  cfg.validate();
  struct Values {
    double en_mean, s_mean, en_12, s_1, energy;
  };
  const auto measure = [](const StateVector& psi) {
    const NetworkEntanglement net = network_entanglement(psi);
    const int first[] = {1};
    return Values{net.mean_pair_negativity, net.mean_single_entropy, log_negativity(psi, 1, 2),
                  block_entropy(psi, first), 0.0};
  };
  const SpectrumResult clean_spectrum = diagonalize(build_pairwise(HamiltonianSpec::homogeneous(cfg.n, cfg.base_delta, cfg.base_j)));
  const StateVector clean_state = even_parity_ground_state(clean_spectrum);
  const Values clean = measure(clean_state);

  const auto rel = [](double v, double ref) { return ref != 0.0 ? std::abs(v - ref) / std::abs(ref) : std::abs(v - ref); };

  GroundObservables g;
  g.names = {"E_N_mean", "S_mean", "E_N_12", "S_1", "ground_energy", "fidelity_clean",
             "rel_dev_E_N_mean", "rel_dev_S_mean", "rel_dev_E_N_12", "rel_dev_S_1"};
  g.extract = [=](const HamiltonianSpec& spec) {
    const SpectrumResult s = diagonalize(build_pairwise(spec));
    const StateVector psi = even_parity_ground_state(s);
    const Values v = measure(psi);
    return std::vector<double>{v.en_mean, v.s_mean, v.en_12, v.s_1, s.energies[0], fidelity(clean_state, psi),
                               rel(v.en_mean, clean.en_mean), rel(v.s_mean, clean.s_mean), rel(v.en_12, clean.en_12),
                               rel(v.s_1, clean.s_1)};
  };
  return g;
}

}  // namespace lmgsim
