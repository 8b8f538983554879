#pragma once

// Unitary evolution |psi(t)> = exp(-i H t)|psi(0)> through the spectral
// decomposition of H (hbar = 1, times in units of 1/Delta).

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmgsim/entanglement.hpp"
#include "lmgsim/hamiltonian.hpp"
#include "lmgsim/hilbert.hpp"
#include "lmgsim/spectra.hpp"

namespace lmgsim {

class Propagator {
 public:
  explicit Propagator(const HamiltonianSpec& spec);
  explicit Propagator(SpectrumResult spectrum);

  const SpectrumResult& spectrum() const { return spectrum_; }
  int qubits() const { return spectrum_.n; }

  /// Components of psi in the eigenbasis.
  Eigen::VectorXcd coefficients(const StateVector& psi) const;

  StateVector evolve(const StateVector& psi0, double t) const;
  /// Same as evolve() for precomputed eigenbasis coefficients.
  StateVector state_at(const Eigen::VectorXcd& coeffs, double t) const;

  /// <target|psi(t)> from eigenbasis coefficients of both states, O(dim).
  cplx overlap_at(const Eigen::VectorXcd& target_coeffs, const Eigen::VectorXcd& coeffs, double t) const;

  /// sum_n E_n |<n|psi>|^2
  double energy(const StateVector& psi) const;

 private:
  SpectrumResult spectrum_;
};

StateVector evolve(const HamiltonianSpec& spec, const StateVector& psi0, double t);

/// Closed-form weak-coupling evolution of |1 0...0>:
///   |1 0...0> + (exp(i N J t) - 1)/sqrt(N) |W_N>
/// valid up to a global phase for J << Delta/N. Its norm is exactly one.
StateVector analytic_one_excitation(int n, double j, double t);

/// Distinct eigenvalues carrying weight above `weight_tol` in psi.
std::vector<double> occupied_energies(const Propagator& propagator, const StateVector& psi, double weight_tol = 1e-12);

struct TimeGrid {
  double t_max = 40.0;
  int steps = 2000;

  /// steps + 1 uniformly spaced samples from 0 to t_max inclusive.
  std::vector<double> times() const;
};

struct EvolutionTrace {
  std::vector<double> times;

  std::vector<std::string> target_names;
  std::vector<std::vector<double>> fidelities;  // [target][sample]

  std::vector<QubitPair> pairs;
  std::vector<std::vector<double>> negativities;  // [pair][sample]

  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<double>> entropies;  // [block][sample]

  double max_norm_error = 0.0;    // max_t | ||psi(t)|| - 1 |
  double max_energy_drift = 0.0;  // max_t |<H>(t) - <H>(0)|
};

struct NamedState {
  std::string name;
  StateVector state;
};

EvolutionTrace fidelity_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const NamedState> targets,
                              const TimeGrid& grid, int threads = 1);

EvolutionTrace entanglement_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const QubitPair> pairs,
                                  std::span<const std::vector<int>> blocks, const TimeGrid& grid, int threads = 1);

/// Both kinds of columns from a single pass over the grid.
EvolutionTrace full_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const NamedState> targets,
                          std::span<const QubitPair> pairs, std::span<const std::vector<int>> blocks,
                          const TimeGrid& grid, int threads = 1);

struct MaxFidelityQuery {
  int n = 0;
  double delta = 1.0;
  double j_min = 0.0;
  double j_max = 0.0;
  int j_steps = 1;  // j_steps points from j_min to j_max inclusive
  TimeGrid grid;
  StateVector initial = StateVector::basis(1, 0);
  StateVector target = StateVector::basis(1, 0);
};

struct MaxFidelityResult {
  double best_j = 0.0;
  double best_t = 0.0;
  double max_fidelity = 0.0;
};

/// Dense scan over the (J, t) grid, then golden-section refinement in t around
/// the best sample and in J between the neighbouring grid points.
MaxFidelityResult max_fidelity(const MaxFidelityQuery& query, int threads = 1);

/// Uniform grid helper: `steps` points from lo to hi inclusive (lo only if steps == 1).
std::vector<double> linspace(double lo, double hi, int steps);

}  // namespace lmgsim
