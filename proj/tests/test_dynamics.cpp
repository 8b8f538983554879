#include <doctest.h>

#include <cmath>
#include <random>

#include "lmgsim/dynamics.hpp"
#include "lmgsim/error.hpp"
#include "oracles.hpp"

using namespace lmgsim;

TEST_CASE("propagator matches Taylor expm") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      HamiltonianSpec s = HamiltonianSpec::homogeneous(n, 1.0, u(rng));
      if (trial % 2) s.set_perturbation(1, 0.2 * u(rng));
      const Eigen::MatrixXcd h = oracle::hamiltonian(s.deltas, s.couplings, s.perturbations);
      const auto psi0 = StateVector::from_amplitudes(n, oracle::random_state(n, rng));
      const Propagator prop(s);
      for (double t : {0.0, 0.37, 3.0, 17.5}) {
        const Eigen::VectorXcd expect = oracle::expm(cplx(0, -t) * h) * psi0.amplitudes();
        CHECK((prop.evolve(psi0, t).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("eigenstates only pick up a phase") {
  const auto spec = HamiltonianSpec::homogeneous(4, 1.0, 0.8);
  const Propagator prop(spec);
  for (Eigen::Index k : {0, 3, 9}) {
    const auto psi = prop.spectrum().state(k);
    for (double t : {1.0, 10.0, 100.0}) CHECK(fidelity(prop.evolve(psi, t), psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("uncoupled single excitation") {
  const auto spec = HamiltonianSpec::homogeneous(1, 1.0, 0.0);
  const double t = 0.9;
  const auto out = evolve(spec, StateVector::basis(1, 1), t);
  // |1> sits at +Delta/2
  CHECK(std::abs(out[1] - std::exp(cplx(0, -0.5 * t))) < 1e-12);
}

TEST_CASE("norm and energy conservation") {
  const auto spec = HamiltonianSpec::homogeneous(5, 1.0, 0.5);
  const auto psi0 = make_reference(ref::Sep{}, 5);
  const std::vector<NamedState> targets{{"SEP", psi0}};
  const auto tr = fidelity_trace(spec, psi0, targets, TimeGrid{50.0, 500});
  CHECK(tr.max_norm_error < 1e-10);
  CHECK(tr.max_energy_drift < 1e-10);
  CHECK(tr.times.size() == 501);
  CHECK(tr.fidelities[0][0] == doctest::Approx(1.0));
}

TEST_CASE("weak coupling law") {
  const int n = 5;
  const double j = 1.0 / 500.0;
  const auto spec = HamiltonianSpec::homogeneous(n, 1.0, j);
  const auto psi0 = make_reference(ref::Sep1{}, n);
  const Propagator prop(spec);
  const double period = 2 * std::acos(-1.0) / (n * j);
  for (int k = 0; k <= 50; ++k) {
    const double t = period * k / 50.0;
    CHECK(fidelity(prop.evolve(psi0, t), analytic_one_excitation(n, j, t)) >= 0.999);
  }
  CHECK(analytic_one_excitation(n, j, 123.0).norm() == doctest::Approx(1.0));
}

TEST_CASE("trace columns and thread independence") {
  const auto spec = HamiltonianSpec::homogeneous(3, 1.0, 0.5);
  const auto psi0 = make_reference(ref::Sep{}, 3);
  const std::vector<NamedState> targets{{"GHZ", make_reference(ref::Ghz{}, 3)}};
  const std::vector<QubitPair> pairs{{1, 2}};
  const std::vector<std::vector<int>> blocks{{1}, {1, 2}};
  const auto a = full_trace(spec, psi0, targets, pairs, blocks, TimeGrid{10.0, 40}, 1);
  const auto b = full_trace(spec, psi0, targets, pairs, blocks, TimeGrid{10.0, 40}, 4);
  CHECK(a.fidelities == b.fidelities);
  CHECK(a.negativities == b.negativities);
  CHECK(a.entropies == b.entropies);
  CHECK(a.fidelities[0][0] == doctest::Approx(fidelity(psi0, targets[0].state)));
  // pure global state: S(1) = S(23), and S(12) = S(3)
  CHECK(a.entropies[1][7] == doctest::Approx(block_entropy(evolve(spec, psi0, a.times[7]), std::vector<int>{3})));

  const auto e = entanglement_trace(spec, psi0, pairs, blocks, TimeGrid{10.0, 40});
  CHECK(e.negativities == a.negativities);
}

TEST_CASE("max fidelity") {
  SUBCASE("eigenstate start returns the static overlap") {
    const auto spec = HamiltonianSpec::homogeneous(3, 1.0, 0.4);
    MaxFidelityQuery q;
    q.n = 3;
    q.j_min = q.j_max = 0.4;
    q.grid = TimeGrid{20.0, 200};
    q.initial = Propagator(spec).spectrum().state(0);
    q.target = make_reference(ref::Ghz{}, 3);
    const auto r = max_fidelity(q);
    CHECK(r.max_fidelity == doctest::Approx(fidelity(q.initial, q.target)).epsilon(1e-10));
  }
  SUBCASE("N=3 GHZ generation") {
    MaxFidelityQuery q;
    q.n = 3;
    q.j_min = 0.4;
    q.j_max = 0.6;
    q.j_steps = 3;
    q.grid = TimeGrid{40.0, 800};
    q.initial = make_reference(ref::Sep{}, 3);
    q.target = make_reference(ref::Ghz{}, 3);
    const auto a = max_fidelity(q, 1);
    const auto b = max_fidelity(q, 3);
    CHECK(a.max_fidelity >= 0.99);
    CHECK(a.max_fidelity <= 1.0 + 1e-12);
    CHECK(a.best_j == b.best_j);
    CHECK(a.best_t == b.best_t);
  }
}

TEST_CASE("helpers") {
  const auto xs = linspace(0.0, 1.0, 5);
  REQUIRE(xs.size() == 5);
  CHECK(xs[2] == doctest::Approx(0.5));
  CHECK(xs.back() == 1.0);
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK(TimeGrid{1.0, 4}.times().back() == 1.0);

  const Propagator prop(HamiltonianSpec::homogeneous(3, 1.0, 0.0));
  const auto levels = occupied_energies(prop, make_reference(ref::Ghz{}, 3));
  REQUIRE(levels.size() == 2);
  CHECK(levels[0] == doctest::Approx(-1.5));
  CHECK(levels[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(prop.evolve(make_reference(ref::Sep{}, 2), 1.0), Error);
}
