#pragma once

// State vectors, reduced density matrices and the reference states of the
// fully-connected qubit network.
//
// Basis convention: for n qubits the computational basis index is
//   b = sum_{i=1..n} bit_i * 2^(n-i)
// so qubit 1 is the most significant bit. bit_i = 0 is |0>, the +1
// eigenstate of Z. Qubits are addressed by 1-based labels everywhere in the
// public API.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace lmgsim {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 14;

/// Bit mask of qubit `label` (1-based) in an n-qubit basis index.
constexpr std::uint64_t qubit_mask(int n, int label) { return std::uint64_t{1} << (n - label); }

/// Basis index of a bit string given qubit 1 first.
std::uint64_t basis_index(std::span<const int> bits);
/// Inverse of basis_index.
std::vector<int> basis_bits(int n, std::uint64_t index);

class StateVector {
 public:
  /// Normalizes `amplitudes`; rejects a zero vector or a size other than 2^n.
  static StateVector from_amplitudes(int n, Eigen::VectorXcd amplitudes);
  static StateVector basis(int n, std::uint64_t index);
  static StateVector from_bits(std::span<const int> bits);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx operator[](Eigen::Index i) const { return amps_[i]; }
  double norm() const { return amps_.norm(); }

 private:
  StateVector(int n, Eigen::VectorXcd amps) : n_(n), amps_(std::move(amps)) {}

  int n_ = 0;
  Eigen::VectorXcd amps_;
};

/// Reduced state over an ascending list of qubit labels. The first label is
/// the most significant bit of the matrix index.
struct DensityMatrix {
  std::vector<int> qubits;
  Eigen::MatrixXcd matrix;

  int size() const { return static_cast<int>(qubits.size()); }
};

/// Maximum entrywise |rho - rho^dagger|, |tr rho - 1| and the most negative
/// eigenvalue, for invariant checks.
struct DensityDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};
DensityDiagnostics diagnose(const DensityMatrix& rho);

namespace ref {
struct Sep {};
struct Sep1 {};
struct Ghz {};
struct Ent3 {};
struct W {};
struct WVariant3 {
  int sign = +1;  // selects e^{+i pi/6} (+1) or e^{-i pi/6} (-1) on |100>
};
struct WVariant4 {};
struct SpinWave {
  int k = 0;
};
}  // namespace ref

using ReferenceState =
    std::variant<ref::Sep, ref::Sep1, ref::Ghz, ref::Ent3, ref::W, ref::WVariant3, ref::WVariant4, ref::SpinWave>;

/// Canonical names: SEP, SEP1, GHZ, ENT3, W, W3+, W3-, W4, SPINWAVE:k.
std::string reference_name(const ReferenceState& kind);
ReferenceState parse_reference(const std::string& name);

StateVector make_reference(const ReferenceState& kind, int n);

cplx inner(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

enum class Pauli { X, Y, Z };
StateVector apply_pauli(const StateVector& psi, Pauli axis, int qubit);

DensityMatrix pure_density(const StateVector& psi);
DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Transposes the factors listed in `subsystem`. The result is Hermitian but
/// may have negative eigenvalues, so it is returned as a bare matrix.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::span<const int> qubits,
                                   std::span<const int> subsystem);
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, std::span<const int> subsystem);

}  // namespace lmgsim
