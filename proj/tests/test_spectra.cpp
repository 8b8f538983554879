#include <doctest.h>

#include <random>

#include "lmgsim/error.hpp"
#include "lmgsim/spectra.hpp"
#include "oracles.hpp"

using namespace lmgsim;

TEST_CASE("eigenvalues match the Jacobi oracle for small networks") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      HamiltonianSpec s = HamiltonianSpec::homogeneous(n, 1.0, 0.0);
      for (auto& d : s.deltas) d = 0.2 + std::abs(u(rng));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.couplings(i, j) = s.couplings(j, i) = u(rng);
      if (trial % 2) s.set_perturbation(1, 0.1 * u(rng));

      const SpectrumResult r = diagonalize(build_pairwise(s));
      const Eigen::VectorXd expect =
          oracle::jacobi_eigenvalues(oracle::hamiltonian(s.deltas, s.couplings, s.perturbations).real());
      CHECK((r.energies - expect).cwiseAbs().maxCoeff() < 1e-8);

      // eigenpairs and orthonormality
      const Eigen::MatrixXd h = build_pairwise(s).matrix;
      CHECK((h * r.vectors - r.vectors * r.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((r.vectors.transpose() * r.vectors - Eigen::MatrixXd::Identity(r.levels(), r.levels())).cwiseAbs().maxCoeff() <
            1e-10);
    }
  }
}

TEST_CASE("parity block path agrees with the full solve") {
  const auto h = build_pairwise(HamiltonianSpec::homogeneous(5, 1.0, 0.7));
  const SpectrumResult r = diagonalize(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h.matrix);
  CHECK((r.energies - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::VectorXd parity = parity_diagonal(5);
  for (Eigen::Index k = 0; k < r.levels(); ++k) {
    const double p = r.vectors.col(k).dot(parity.asDiagonal() * r.vectors.col(k));
    CHECK(std::abs(std::abs(p) - 1.0) < 1e-12);
    Eigen::Index arg = 0;
    r.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    CHECK(r.vectors(arg, k) > 0.0);
  }
}

TEST_CASE("complex Hermitian path") {
  std::mt19937_64 rng(4);
  for (int n : {2, 4, 8}) {
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(n, n);
    const Eigen::MatrixXcd h = a + a.adjoint();
    const HermitianSpectrum r = diagonalize_hermitian(h);
    CHECK((r.energies - oracle::hermitian_eigenvalues(h)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((h * r.vectors - r.vectors * r.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(diagonalize_hermitian(bad), Error);
}

TEST_CASE("uncoupled N=3 spectrum") {
  const SpectrumResult r = diagonalize(build_pairwise(HamiltonianSpec::homogeneous(3, 1.0, 0.0)));
  const double expect[8] = {-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5};
  for (int i = 0; i < 8; ++i) CHECK(r.energies[i] == doctest::Approx(expect[i]));
  const auto rep = degeneracy_report(r.energies);
  REQUIRE(rep.groups.size() == 4);
  CHECK(rep.groups[1].multiplicity == 3);
  CHECK(rep.ground_multiplicity == 1);
  CHECK(rep.gap == doctest::Approx(1.0));
}

TEST_CASE("degeneracy grouping") {
  Eigen::VectorXd e(5);
  e << 0.0, 1e-12, 1.0, 1.0, 3.0;
  const auto rep = degeneracy_report(e, {1e-8, 0.0});
  REQUIRE(rep.groups.size() == 3);
  CHECK(rep.ground_multiplicity == 2);
  CHECK(rep.groups[1].first == 2);
  CHECK(rep.gap == doctest::Approx(1.0));

  Eigen::VectorXd split(3);
  split << 0.0, 0.01, 5.0;
  CHECK(degeneracy_report(split, {1e-8, 0.0}).ground_multiplicity == 1);
  CHECK(degeneracy_report(split, {1e-8, 0.1}).ground_multiplicity == 2);
}

TEST_CASE("ground level multiplicity across regimes") {
  for (int n : {3, 4}) {
    for (double j : {1.0, 2.0, 4.0}) {
      const auto afm = degeneracy_report(diagonalize(build_pairwise(HamiltonianSpec::homogeneous(n, 1.0, -j))).energies);
      const auto fm = degeneracy_report(diagonalize(build_pairwise(HamiltonianSpec::homogeneous(n, 1.0, j))).energies);
      CHECK(afm.ground_multiplicity == 1);
      if (j >= 2.0) CHECK(fm.ground_multiplicity == 2);
    }
  }
}

TEST_CASE("subspace fidelity") {
  const auto a = StateVector::basis(2, 0);
  const auto b = StateVector::basis(2, 3);
  const std::vector<StateVector> basis{a, b};
  const auto bell = StateVector::from_amplitudes(2, Eigen::Vector4cd(1, 0, 0, 1));
  CHECK(subspace_fidelity(basis, bell) == doctest::Approx(1.0));
  CHECK(subspace_fidelity(std::vector<StateVector>{a}, bell) == doctest::Approx(fidelity(a, bell)));
  CHECK_THROWS_AS(subspace_fidelity(std::vector<StateVector>{a, a}, bell), Error);

  const SpectrumResult r = diagonalize(build_pairwise(HamiltonianSpec::homogeneous(3, 1.0, 5.0)));
  const auto manifold = ground_manifold(r);
  CHECK(manifold.size() == 2);
  CHECK(subspace_fidelity(manifold, make_reference(ref::Ghz{}, 3)) >= 0.99);
  const auto even = even_parity_ground_state(r);
  CHECK(fidelity(even, make_reference(ref::Ghz{}, 3)) >= 0.99);
}

TEST_CASE("ground state helpers") {
  const auto spec = HamiltonianSpec::homogeneous(3, 1.0, -5.0);
  const GroundState g = ground_state(spec);
  CHECK(fidelity(g.state, make_reference(ref::Ent3{}, 3)) >= 0.99);
  CHECK(ground_subspace(spec, 1e-8).size() == 1);
  CHECK(ground_subspace(HamiltonianSpec::homogeneous(3, 1.0, 0.0), 1e-8).size() == 1);
}

TEST_CASE("gap curve is thread independent") {
  const std::vector<double> js{-4, -2, -1, 1, 2, 4};
  const auto a = gap_curve(4, 1.0, js, {}, 1);
  const auto b = gap_curve(4, 1.0, js, {}, 3);
  REQUIRE(a.size() == js.size());
  for (std::size_t k = 0; k < js.size(); ++k) {
    CHECK(a[k].gap == b[k].gap);
    CHECK(a[k].ground_multiplicity == b[k].ground_multiplicity);
  }
}

TEST_CASE("large blocks give true eigenpairs") {
  // blocks of 128 and 256 rows; guards against faulty LAPACK kernels
  for (int n : {8, 9}) {
    const auto h = build_pairwise(HamiltonianSpec::homogeneous(n, 1.0, -2.0));
    const SpectrumResult r = diagonalize(h);
    CHECK((h.matrix * r.vectors - r.vectors * r.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((r.vectors.transpose() * r.vectors - Eigen::MatrixXd::Identity(r.levels(), r.levels())).cwiseAbs().maxCoeff() <
          1e-10);
  }
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(150, 150);
  const Eigen::MatrixXcd h = a + a.adjoint();
  const HermitianSpectrum r = diagonalize_hermitian(h);
  CHECK((h * r.vectors - r.vectors * r.energies.asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
}
