#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lmgsim/hamiltonian.hpp"
#include "lmgsim/hilbert.hpp"

namespace lmgsim {

/// Ascending energies with orthonormal real eigenvectors as columns.
struct SpectrumResult {
  int n = 0;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  Eigen::Index levels() const { return energies.size(); }
  StateVector state(Eigen::Index level) const;
};

/// Eigendecomposition of a general complex Hermitian matrix.
struct HermitianSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd vectors;
};

/// Full decomposition of a real symmetric Hamiltonian. When H commutes
/// with the parity operator entry by entry (no g terms), the two parity
/// blocks are solved separately and every eigenvector has definite parity.
/// Eigenvector signs are fixed so the largest-magnitude component is positive.
SpectrumResult diagonalize(const DenseHamiltonian& h);

/// Complex path; rejects matrices with max |A - A^dagger| > 1e-10.
HermitianSpectrum diagonalize_hermitian(const Eigen::MatrixXcd& a);

struct DegeneracyOptions {
  /// Levels closer than exact_rel * max(1, spectral width) are one group.
  double exact_rel = 1e-8;
  /// The lowest groups are merged into one ground manifold while their total
  /// spread stays below quasi_ratio times the gap to the next group. This is
  /// what turns the tunnel-split FM doublet into a two-fold ground level.
  /// Set to 0 to disable.
  double quasi_ratio = 0.1;
};

struct LevelGroup {
  double energy = 0.0;  // lowest member
  int multiplicity = 0;
  Eigen::Index first = 0;  // index of the lowest member in the spectrum
};

struct DegeneracyReport {
  std::vector<LevelGroup> groups;  // groups[0] is the ground manifold
  int ground_multiplicity = 0;
  double gap = 0.0;        // groups[1].energy - groups[0].energy, 0 if only one group
  double tolerance = 0.0;  // absolute exact-degeneracy tolerance used
};

DegeneracyReport degeneracy_report(const Eigen::VectorXd& energies, const DegeneracyOptions& options = {});

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

GroundState ground_state(const HamiltonianSpec& spec);

/// All eigenvectors with E - E0 <= tol * max(1, |E0|).
std::vector<StateVector> ground_subspace(const HamiltonianSpec& spec, double tol);
std::vector<StateVector> ground_subspace(const SpectrumResult& spectrum, double tol);

/// Eigenvectors of the ground manifold of degeneracy_report.
std::vector<StateVector> ground_manifold(const SpectrumResult& spectrum, const DegeneracyOptions& options = {});

/// Ground state with a deterministic choice inside a degenerate manifold:
/// the parity operator is diagonalized within the manifold and the
/// eigenvector with the largest parity eigenvalue (the even, GHZ-like
/// branch in the FM regime) is returned.
StateVector even_parity_ground_state(const SpectrumResult& spectrum, const DegeneracyOptions& options = {});

/// Norm of the projection of phi onto span(basis). Rejects a basis whose Gram
/// matrix deviates from the identity by more than 1e-8.
double subspace_fidelity(std::span<const StateVector> basis, const StateVector& phi);

struct GapPoint {
  double j = 0.0;
  double gap = 0.0;
  int ground_multiplicity = 0;
};

std::vector<GapPoint> gap_curve(int n, double delta, std::span<const double> js, const DegeneracyOptions& options = {},
                                int threads = 1);

}  // namespace lmgsim
