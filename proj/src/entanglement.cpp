#include "lmgsim/entanglement.hpp"

#include <cmath>
#include <string>

#include "lmgsim/error.hpp"
#include "lmgsim/parallel.hpp"
#include "lmgsim/spectra.hpp"

namespace lmgsim {

double log_negativity(const DensityMatrix& rho_pair) {
  if (rho_pair.size() != 2) throw Error(ErrorCode::InvalidArgument, "log negativity needs a two-qubit state");
  const int first[] = {rho_pair.qubits[0]};
  const Eigen::MatrixXcd pt = partial_transpose(rho_pair, first);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::log2(trace_norm);
}

double log_negativity(const StateVector& psi, int i, int j) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "log negativity needs two distinct qubits");
  const int pair[] = {i, j};
  DensityMatrix rho = partial_trace(psi, pair);
  // transpose the factor of qubit i, whichever position it lands in
  const int ti[] = {i};
  const Eigen::MatrixXcd pt = partial_transpose(rho, ti);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  return std::log2(es.eigenvalues().cwiseAbs().sum());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double p : es.eigenvalues()) {
    if (p < -1e-10) throw Error(ErrorCode::BrokenDensityMatrix, "density matrix eigenvalue " + std::to_string(p) + " below -1e-10");
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

double block_entropy(const StateVector& psi, std::span<const int> block) {
  if (block.empty() || static_cast<int>(block.size()) >= psi.qubits()) {
    throw Error(ErrorCode::InvalidArgument, "block must be a non-empty strict subset of the qubits");
  }
  return von_neumann_entropy(partial_trace(psi, block));
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw Error(ErrorCode::InvalidArgument, "binary entropy argument outside [0, 1]");
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

EntanglementReport entanglement_report(const StateVector& psi, std::span<const QubitPair> pairs,
                                       std::span<const std::vector<int>> blocks) {
  EntanglementReport r;
  for (const auto& [i, j] : pairs) r.pair_negativity.push_back(log_negativity(psi, i, j));
  for (const auto& b : blocks) r.block_entropy.push_back(block_entropy(psi, b));
  return r;
}

NetworkEntanglement network_entanglement(const StateVector& psi) {
  const int n = psi.qubits();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "network entanglement needs at least two qubits");
  NetworkEntanglement out;
  int pairs = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++pairs) out.mean_pair_negativity += log_negativity(psi, i, j);
    const int single[] = {i};
    out.mean_single_entropy += block_entropy(psi, single);
  }
  out.mean_pair_negativity /= pairs;
  out.mean_single_entropy /= n;
  return out;
}

std::vector<EntanglementScanRow> ground_entanglement_scan(int n, double delta, std::span<const double> js,
                                                          const std::optional<Perturbation>& perturbation,
                                                          int threads) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "entanglement scan needs at least two qubits");
  const bool perturbed = perturbation && perturbation->g != 0.0;
  std::vector<EntanglementScanRow> rows(js.size());
  parallel_for(js.size(), threads, [&](std::size_t k) {
    HamiltonianSpec spec = HamiltonianSpec::homogeneous(n, delta, js[k]);
    if (perturbed) spec.set_perturbation(perturbation->qubit, perturbation->g);
    const SpectrumResult s = diagonalize(build_pairwise(spec));
    const StateVector psi = perturbed ? s.state(0) : even_parity_ground_state(s);
    const int first[] = {1};
    rows[k] = {js[k], n, log_negativity(psi, 1, 2), block_entropy(psi, first), perturbed};
  });
  return rows;
}

}  // namespace lmgsim
