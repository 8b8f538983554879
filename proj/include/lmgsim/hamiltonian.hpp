#pragma once

// Dense Hamiltonians of the fully-connected XX network
//
//   H = - sum_i (Delta_i / 2) Z_i - sum_{i<j} J_ij X_i X_j + sum_i g_i X_i
//
// in units where the homogeneous splitting Delta = 1.

#include <vector>

#include <Eigen/Dense>

#include "lmgsim/hilbert.hpp"

namespace lmgsim {

struct HamiltonianSpec {
  int n = 0;
  std::vector<double> deltas;     // Delta_i > 0
  Eigen::MatrixXd couplings;      // symmetric, zero diagonal
  std::vector<double> perturbations;  // g_i, zero by default

  static HamiltonianSpec homogeneous(int n, double delta, double j);

  /// Adds g on a single qubit (1-based), replacing any previous value there.
  HamiltonianSpec& set_perturbation(int qubit, double g);

  bool perturbed() const;

  /// Throws InvalidSpec if the invariants do not hold.
  void validate() const;
};

/// Real symmetric matrix in the computational basis; every term of H is a
/// real matrix there.
struct DenseHamiltonian {
  int n = 0;
  Eigen::MatrixXd matrix;

  Eigen::MatrixXcd complex() const { return matrix.cast<cplx>(); }
};

DenseHamiltonian build_pairwise(const HamiltonianSpec& spec);

/// Collective form -(Delta/2) Z_tot - (J/2) X_tot^2 + (N J / 2), built from
/// the total operators rather than pair by pair.
DenseHamiltonian build_collective(int n, double delta, double j);

/// prod_i Z_i as a dense diagonal matrix.
Eigen::MatrixXd parity_operator(int n);
/// Diagonal of prod_i Z_i: +1 for even popcount, -1 for odd.
Eigen::VectorXd parity_diagonal(int n);

/// (sum X_i)^2 + (sum Y_i)^2 + (sum Z_i)^2.
Eigen::MatrixXcd total_spin_squared(int n);

/// Collective operators sum_i P_i.
Eigen::MatrixXcd total_pauli(int n, Pauli axis);

/// max_ij |[A, B]_ij|
double max_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace lmgsim
