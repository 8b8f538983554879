#include "lmgsim/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "lmgsim/error.hpp"

namespace lmgsim {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorCode::InvalidSpec, "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

HamiltonianSpec HamiltonianSpec::homogeneous(int n, double delta, double j) {
  check_n(n);
  HamiltonianSpec s;
  s.n = n;
  s.deltas.assign(n, delta);
  s.couplings = Eigen::MatrixXd::Constant(n, n, j);
  s.couplings.diagonal().setZero();
  s.perturbations.assign(n, 0.0);
  return s;
}

HamiltonianSpec& HamiltonianSpec::set_perturbation(int qubit, double g) {
  if (qubit < 1 || qubit > n) {
    throw Error(ErrorCode::QubitOutOfRange, "perturbed qubit " + std::to_string(qubit) + " outside [1, " + std::to_string(n) + "]");
  }
  perturbations.resize(n, 0.0);
  perturbations[qubit - 1] = g;
  return *this;
}

bool HamiltonianSpec::perturbed() const {
  return std::any_of(perturbations.begin(), perturbations.end(), [](double g) { return g != 0.0; });
}

void HamiltonianSpec::validate() const {
  check_n(n);
  if (static_cast<int>(deltas.size()) != n) throw Error(ErrorCode::InvalidSpec, "deltas must have n entries");
  if (couplings.rows() != n || couplings.cols() != n) throw Error(ErrorCode::InvalidSpec, "couplings must be n x n");
  if (!perturbations.empty() && static_cast<int>(perturbations.size()) != n) {
    throw Error(ErrorCode::InvalidSpec, "perturbations must be empty or have n entries");
  }
  for (int i = 0; i < n; ++i) {
    if (!(deltas[i] > 0.0) || !std::isfinite(deltas[i])) {
      throw Error(ErrorCode::InvalidSpec, "delta of qubit " + std::to_string(i + 1) + " must be positive");
    }
    if (couplings(i, i) != 0.0) throw Error(ErrorCode::InvalidSpec, "couplings must have a zero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (couplings(i, j) != couplings(j, i)) throw Error(ErrorCode::InvalidSpec, "couplings must be symmetric");
      if (!std::isfinite(couplings(i, j))) throw Error(ErrorCode::InvalidSpec, "couplings must be finite");
    }
  }
  for (double g : perturbations) {
    if (!std::isfinite(g)) throw Error(ErrorCode::InvalidSpec, "perturbations must be finite");
  }
}

DenseHamiltonian build_pairwise(const HamiltonianSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    double diag = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double z = (ub & qubit_mask(n, i)) ? -1.0 : 1.0;
      diag -= 0.5 * spec.deltas[i - 1] * z;
    }
    h(b, b) = diag;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const double jij = spec.couplings(i - 1, j - 1);
        if (jij == 0.0) continue;
        h(static_cast<Eigen::Index>(ub ^ qubit_mask(n, i) ^ qubit_mask(n, j)), b) -= jij;
      }
    }
    if (!spec.perturbations.empty()) {
      for (int i = 1; i <= n; ++i) {
        const double g = spec.perturbations[i - 1];
        if (g != 0.0) h(static_cast<Eigen::Index>(ub ^ qubit_mask(n, i)), b) += g;
      }
    }
  }
  return {n, std::move(h)};
}

Eigen::MatrixXcd total_pauli(int n, Pauli axis) {
  check_n(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    for (int i = 1; i <= n; ++i) {
      const bool one = ub & qubit_mask(n, i);
      const auto flipped = static_cast<Eigen::Index>(ub ^ qubit_mask(n, i));
      switch (axis) {
        case Pauli::X: m(flipped, b) += 1.0; break;
        case Pauli::Y: m(flipped, b) += one ? cplx(0, -1) : cplx(0, 1); break;
        case Pauli::Z: m(b, b) += one ? -1.0 : 1.0; break;
      }
    }
  }
  return m;
}

DenseHamiltonian build_collective(int n, double delta, double j) {
  check_n(n);
  const Eigen::MatrixXd z_total = total_pauli(n, Pauli::Z).real();
  const Eigen::MatrixXd x_total = total_pauli(n, Pauli::X).real();
  const Eigen::Index dim = z_total.rows();
  Eigen::MatrixXd h = -0.5 * delta * z_total - 0.5 * j * (x_total * x_total) +
                      0.5 * n * j * Eigen::MatrixXd::Identity(dim, dim);
  return {n, std::move(h)};
}

Eigen::VectorXd parity_diagonal(int n) {
  check_n(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd p(dim);
  for (Eigen::Index b = 0; b < dim; ++b) p[b] = (std::popcount(static_cast<std::uint64_t>(b)) % 2) ? -1.0 : 1.0;
  return p;
}

Eigen::MatrixXd parity_operator(int n) { return parity_diagonal(n).asDiagonal(); }

Eigen::MatrixXcd total_spin_squared(int n) {
  const Eigen::MatrixXcd x = total_pauli(n, Pauli::X);
  const Eigen::MatrixXcd y = total_pauli(n, Pauli::Y);
  const Eigen::MatrixXcd z = total_pauli(n, Pauli::Z);
  return x * x + y * y + z * z;
}

double max_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "commutator of differently sized matrices");
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace lmgsim
