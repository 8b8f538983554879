#include "lmgsim/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>

#include <lapacke.h>

#include "lmgsim/error.hpp"
#include "lmgsim/parallel.hpp"

namespace lmgsim {

namespace {

// Some OpenBLAS builds pick a kernel that returns wrong eigenvectors on
// CPUs they misdetect (seen with the Cooperlake kernel for blocks >= ~100).
// Every LAPACK result is therefore checked with Eigen's own arithmetic and
// recomputed by Eigen's solver if it is off.
template <class Matrix>
bool decomposition_ok(const Matrix& a, const Eigen::VectorXd& w, const Matrix& v) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff()) * static_cast<double>(a.rows());
  const Matrix vd = v * w.cast<typename Matrix::Scalar>().asDiagonal();
  const double residual = (a.template selfadjointView<Eigen::Lower>() * v - vd).cwiseAbs().maxCoeff();
  const double ortho = (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  return std::isfinite(residual) && std::isfinite(ortho) && residual <= 1e-10 * scale && ortho <= 1e-10 * static_cast<double>(a.rows());
}

template <class Matrix>
int lapack_solve(Matrix& a, Eigen::VectorXd& w) {
  const auto dim = static_cast<lapack_int>(a.rows());
  if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
    return LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', dim, a.data(), dim, w.data());
  } else {
    return LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', dim, reinterpret_cast<lapack_complex_double*>(a.data()), dim,
                          w.data());
  }
}

// In-place Hermitian eigensolve; `a` is overwritten with the eigenvectors.
template <class Matrix>
Eigen::VectorXd eigensolve(Matrix& a) {
  Eigen::VectorXd w(a.rows());
  if (a.rows() == 0) return w;
  const Matrix original = a;
  if (lapack_solve(a, w) == 0 && decomposition_ok(original, w, a)) return w;

  Eigen::SelfAdjointEigenSolver<Matrix> es(original);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
  a = es.eigenvectors();
  return es.eigenvalues();
}

template <class Matrix>
void fix_signs(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    const auto pivot = vectors(arg, c);
    if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
      if (pivot < 0) vectors.col(c) *= -1.0;
    } else {
      if (std::abs(pivot) > 0) vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
    }
  }
}

bool parity_blocked(const Eigen::MatrixXd& h) {
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      const bool odd = std::popcount(static_cast<std::uint64_t>(r ^ c)) % 2;
      if (odd && h(r, c) != 0.0) return false;
    }
  }
  return true;
}

double asymmetry(const Eigen::MatrixXd& h) { return (h - h.transpose()).cwiseAbs().maxCoeff(); }

SpectrumResult diagonalize_blocks(int n, const Eigen::MatrixXd& h) {
  const Eigen::Index dim = h.rows();
  std::vector<Eigen::Index> even, odd;
  for (Eigen::Index b = 0; b < dim; ++b) (std::popcount(static_cast<std::uint64_t>(b)) % 2 ? odd : even).push_back(b);

  const auto solve = [&](const std::vector<Eigen::Index>& idx, Eigen::VectorXd& w, Eigen::MatrixXd& v) {
    Eigen::MatrixXd block = h(idx, idx);
    w = eigensolve(block);
    v = std::move(block);
  };
  Eigen::VectorXd we, wo;
  Eigen::MatrixXd ve, vo;
  solve(even, we, ve);
  solve(odd, wo, vo);

  SpectrumResult out;
  out.n = n;
  out.energies.resize(dim);
  out.vectors = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Index ie = 0, io = 0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const bool take_even = io >= wo.size() || (ie < we.size() && we[ie] <= wo[io]);
    if (take_even) {
      out.energies[k] = we[ie];
      for (std::size_t r = 0; r < even.size(); ++r) out.vectors(even[r], k) = ve(static_cast<Eigen::Index>(r), ie);
      ++ie;
    } else {
      out.energies[k] = wo[io];
      for (std::size_t r = 0; r < odd.size(); ++r) out.vectors(odd[r], k) = vo(static_cast<Eigen::Index>(r), io);
      ++io;
    }
  }
  return out;
}

}  // namespace

StateVector SpectrumResult::state(Eigen::Index level) const {
  if (level < 0 || level >= levels()) throw Error(ErrorCode::InvalidArgument, "level index out of range");
  return StateVector::from_amplitudes(n, vectors.col(level).cast<cplx>());
}

SpectrumResult diagonalize(const DenseHamiltonian& h) {
  if (h.matrix.rows() != h.matrix.cols() || h.matrix.rows() != (Eigen::Index{1} << h.n)) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian matrix does not match its qubit count");
  }
  const double asym = asymmetry(h.matrix);
  if (asym > 1e-10) throw Error(ErrorCode::NotHermitian, "Hamiltonian asymmetry " + std::to_string(asym) + " exceeds 1e-10");

  SpectrumResult out;
  if (h.n >= 2 && parity_blocked(h.matrix)) {
    out = diagonalize_blocks(h.n, h.matrix);
  } else {
    out.n = h.n;
    out.vectors = h.matrix;
    out.energies = eigensolve(out.vectors);
  }
  fix_signs(out.vectors);
  return out;
}

HermitianSpectrum diagonalize_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw Error(ErrorCode::NotHermitian, "matrix asymmetry " + std::to_string(asym) + " exceeds 1e-10");
  HermitianSpectrum out;
  out.vectors = a;
  out.energies = eigensolve(out.vectors);
  fix_signs(out.vectors);
  return out;
}

DegeneracyReport degeneracy_report(const Eigen::VectorXd& energies, const DegeneracyOptions& options) {
  DegeneracyReport rep;
  const Eigen::Index count = energies.size();
  if (count == 0) return rep;
  const double width = energies[count - 1] - energies[0];
  rep.tolerance = options.exact_rel * std::max(1.0, width);

  std::vector<LevelGroup> exact;
  for (Eigen::Index k = 0; k < count; ++k) {
    if (!exact.empty() && energies[k] - energies[k - 1] <= rep.tolerance) {
      ++exact.back().multiplicity;
    } else {
      exact.push_back({energies[k], 1, k});
    }
  }

  std::size_t merged = 1;
  if (options.quasi_ratio > 0) {
    while (merged + 1 < exact.size()) {
      const double spread = exact[merged].energy - exact[0].energy;
      const double next_gap = exact[merged + 1].energy - exact[merged].energy;
      if (spread > options.quasi_ratio * next_gap) break;
      ++merged;
    }
  }
  LevelGroup ground = exact[0];
  for (std::size_t g = 1; g < merged; ++g) ground.multiplicity += exact[g].multiplicity;
  rep.groups.push_back(ground);
  rep.groups.insert(rep.groups.end(), exact.begin() + static_cast<std::ptrdiff_t>(merged), exact.end());

  rep.ground_multiplicity = ground.multiplicity;
  rep.gap = rep.groups.size() > 1 ? rep.groups[1].energy - rep.groups[0].energy : 0.0;
  return rep;
}

GroundState ground_state(const HamiltonianSpec& spec) {
  const SpectrumResult s = diagonalize(build_pairwise(spec));
  return {s.energies[0], s.state(0)};
}

std::vector<StateVector> ground_subspace(const SpectrumResult& spectrum, double tol) {
  std::vector<StateVector> out;
  const double e0 = spectrum.energies[0];
  const double limit = tol * std::max(1.0, std::abs(e0));
  for (Eigen::Index k = 0; k < spectrum.levels() && spectrum.energies[k] - e0 <= limit; ++k) out.push_back(spectrum.state(k));
  return out;
}

std::vector<StateVector> ground_subspace(const HamiltonianSpec& spec, double tol) {
  return ground_subspace(diagonalize(build_pairwise(spec)), tol);
}

std::vector<StateVector> ground_manifold(const SpectrumResult& spectrum, const DegeneracyOptions& options) {
  const DegeneracyReport rep = degeneracy_report(spectrum.energies, options);
  std::vector<StateVector> out;
  for (int k = 0; k < rep.ground_multiplicity; ++k) out.push_back(spectrum.state(k));
  return out;
}

StateVector even_parity_ground_state(const SpectrumResult& spectrum, const DegeneracyOptions& options) {
  const int m = degeneracy_report(spectrum.energies, options).ground_multiplicity;
  if (m <= 1) return spectrum.state(0);
  const Eigen::MatrixXd v = spectrum.vectors.leftCols(m);
  const Eigen::VectorXd parity = parity_diagonal(spectrum.n);
  const Eigen::MatrixXd restricted = v.transpose() * parity.asDiagonal() * v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
  Eigen::VectorXd mixed = v * es.eigenvectors().col(m - 1);
  Eigen::Index arg = 0;
  mixed.cwiseAbs().maxCoeff(&arg);
  if (mixed[arg] < 0) mixed = -mixed;
  return StateVector::from_amplitudes(spectrum.n, mixed.cast<cplx>());
}

double subspace_fidelity(std::span<const StateVector> basis, const StateVector& phi) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "empty subspace basis");
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const cplx g = inner(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)]);
      if (std::abs(g - cplx(a == b ? 1.0 : 0.0)) > 1e-8) throw Error(ErrorCode::NotOrthonormal, "subspace basis is not orthonormal");
    }
  }
  double sum = 0.0;
  for (const auto& b : basis) sum += std::norm(inner(b, phi));
  return std::min(1.0, std::sqrt(sum));
}

std::vector<GapPoint> gap_curve(int n, double delta, std::span<const double> js, const DegeneracyOptions& options,
                                int threads) {
  std::vector<GapPoint> out(js.size());
  parallel_for(js.size(), threads, [&](std::size_t i) {
    const SpectrumResult s = diagonalize(build_pairwise(HamiltonianSpec::homogeneous(n, delta, js[i])));
    const DegeneracyReport rep = degeneracy_report(s.energies, options);
    out[i] = {js[i], rep.gap, rep.ground_multiplicity};
  });
  return out;
}

}  // namespace lmgsim
