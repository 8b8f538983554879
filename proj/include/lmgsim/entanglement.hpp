#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lmgsim/hamiltonian.hpp"
#include "lmgsim/hilbert.hpp"

namespace lmgsim {

/// log2 of the trace norm of the partial transpose of a two-qubit state.
double log_negativity(const DensityMatrix& rho_pair);
/// Logarithmic negativity of the reduced state of qubits i and j.
double log_negativity(const StateVector& psi, int i, int j);

/// -tr(rho log2 rho). Eigenvalues in [-1e-10, 0) are clipped to zero; anything
/// more negative raises BrokenDensityMatrix.
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of a non-empty strict subset of the qubits.
double block_entropy(const StateVector& psi, std::span<const int> block);

/// h(p) = -p log2 p - (1-p) log2 (1-p)
double binary_entropy(double p);

using QubitPair = std::array<int, 2>;

struct EntanglementReport {
  std::vector<double> pair_negativity;  // one per requested pair
  std::vector<double> block_entropy;    // one per requested block
};

EntanglementReport entanglement_report(const StateVector& psi, std::span<const QubitPair> pairs,
                                       std::span<const std::vector<int>> blocks);

/// Mean of E_N over all pairs and mean of S(rho_i) over all qubits. Used when
/// disorder makes pairs inequivalent.
struct NetworkEntanglement {
  double mean_pair_negativity = 0.0;
  double mean_single_entropy = 0.0;
};
NetworkEntanglement network_entanglement(const StateVector& psi);

struct Perturbation {
  int qubit = 1;
  double g = 0.0;
};

struct EntanglementScanRow {
  double j = 0.0;
  int n = 0;
  double pair_negativity = 0.0;  // E_N(rho_12)
  double single_entropy = 0.0;   // S(rho_1)
  bool perturbed = false;
};

/// Ground-state E_N of qubits (1,2) and S of qubit 1 across a J grid. Without
/// a perturbation the ground state is the even-parity member of the ground
/// manifold; with one, it is the lowest eigenvector.
std::vector<EntanglementScanRow> ground_entanglement_scan(int n, double delta, std::span<const double> js,
                                                          const std::optional<Perturbation>& perturbation = {},
                                                          int threads = 1);

}  // namespace lmgsim
