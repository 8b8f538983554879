#include "lmgsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lmgsim/error.hpp"
#include "lmgsim/parallel.hpp"

namespace lmgsim {

namespace {

struct Peak {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a maximum of f on [lo, hi].
template <class F>
Peak golden_maximize(F&& f, double lo, double hi, double tol = 1e-10, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Peak{c, fc} : Peak{d, fd};
}

void check_grid(const TimeGrid& grid) {
  if (!(grid.t_max >= 0.0) || grid.steps < 1) throw Error(ErrorCode::InvalidArgument, "time grid needs t_max >= 0 and steps >= 1");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) out[static_cast<std::size_t>(k)] = steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1);
  return out;
}

std::vector<double> TimeGrid::times() const {
  check_grid(*this);
  return linspace(0.0, t_max, steps + 1);
}

Propagator::Propagator(const HamiltonianSpec& spec) : spectrum_(diagonalize(build_pairwise(spec))) {}

Propagator::Propagator(SpectrumResult spectrum) : spectrum_(std::move(spectrum)) {}

Eigen::VectorXcd Propagator::coefficients(const StateVector& psi) const {
  if (psi.qubits() != spectrum_.n) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian qubit counts differ");
  return spectrum_.vectors.transpose().cast<cplx>() * psi.amplitudes();
}

StateVector Propagator::state_at(const Eigen::VectorXcd& coeffs, double t) const {
  Eigen::VectorXcd phased(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) phased[k] = std::polar(1.0, -spectrum_.energies[k] * t) * coeffs[k];
  Eigen::VectorXcd amps = spectrum_.vectors.cast<cplx>() * phased;
  return StateVector::from_amplitudes(spectrum_.n, std::move(amps));
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const { return state_at(coefficients(psi0), t); }

cplx Propagator::overlap_at(const Eigen::VectorXcd& target_coeffs, const Eigen::VectorXcd& coeffs, double t) const {
  cplx sum = 0.0;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    sum += std::conj(target_coeffs[k]) * std::polar(1.0, -spectrum_.energies[k] * t) * coeffs[k];
  }
  return sum;
}

double Propagator::energy(const StateVector& psi) const {
  const Eigen::VectorXcd c = coefficients(psi);
  return c.cwiseAbs2().dot(spectrum_.energies);
}

StateVector evolve(const HamiltonianSpec& spec, const StateVector& psi0, double t) {
  return Propagator(spec).evolve(psi0, t);
}

StateVector analytic_one_excitation(int n, double j, double t) {
  const StateVector start = make_reference(ref::Sep1{}, n);
  if (j == 0.0) return start;
  const StateVector w = make_reference(ref::W{}, n);
  const cplx factor = (std::polar(1.0, n * j * t) - 1.0) / std::sqrt(static_cast<double>(n));
  return StateVector::from_amplitudes(n, start.amplitudes() + factor * w.amplitudes());
}

std::vector<double> occupied_energies(const Propagator& propagator, const StateVector& psi, double weight_tol) {
  const Eigen::VectorXcd c = propagator.coefficients(psi);
  const auto& e = propagator.spectrum().energies;
  const double merge = 1e-9 * std::max(1.0, e[e.size() - 1] - e[0]);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (std::norm(c[k]) <= weight_tol) continue;
    if (out.empty() || e[k] - out.back() > merge) out.push_back(e[k]);
  }
  return out;
}

EvolutionTrace full_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const NamedState> targets,
                          std::span<const QubitPair> pairs, std::span<const std::vector<int>> blocks,
                          const TimeGrid& grid, int threads) {
  const Propagator prop(spec);
  for (const auto& t : targets) {
    if (t.state.qubits() != spec.n) throw Error(ErrorCode::DimensionMismatch, "target '" + t.name + "' has the wrong qubit count");
  }
  EvolutionTrace tr;
  tr.times = grid.times();
  const std::size_t samples = tr.times.size();
  for (const auto& t : targets) tr.target_names.push_back(t.name);
  tr.fidelities.assign(targets.size(), std::vector<double>(samples));
  tr.pairs.assign(pairs.begin(), pairs.end());
  tr.negativities.assign(pairs.size(), std::vector<double>(samples));
  tr.blocks.assign(blocks.begin(), blocks.end());
  tr.entropies.assign(blocks.size(), std::vector<double>(samples));

  const Eigen::VectorXcd c0 = prop.coefficients(psi0);
  const double e0 = prop.energy(psi0);
  std::vector<double> norm_err(samples), drift(samples);

  parallel_for(samples, threads, [&](std::size_t k) {
    const double t = tr.times[k];
    Eigen::VectorXcd phased(c0.size());
    for (Eigen::Index m = 0; m < c0.size(); ++m) phased[m] = std::polar(1.0, -prop.spectrum().energies[m] * t) * c0[m];
    const Eigen::VectorXcd raw = prop.spectrum().vectors.cast<cplx>() * phased;
    norm_err[k] = std::abs(raw.norm() - 1.0);
    const StateVector psi = StateVector::from_amplitudes(spec.n, raw);
    drift[k] = std::abs(prop.energy(psi) - e0);
    for (std::size_t i = 0; i < targets.size(); ++i) tr.fidelities[i][k] = fidelity(targets[i].state, psi);
    for (std::size_t i = 0; i < pairs.size(); ++i) tr.negativities[i][k] = log_negativity(psi, pairs[i][0], pairs[i][1]);
    for (std::size_t i = 0; i < blocks.size(); ++i) tr.entropies[i][k] = block_entropy(psi, blocks[i]);
  });
  tr.max_norm_error = *std::max_element(norm_err.begin(), norm_err.end());
  tr.max_energy_drift = *std::max_element(drift.begin(), drift.end());
  return tr;
}

EvolutionTrace fidelity_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const NamedState> targets,
                              const TimeGrid& grid, int threads) {
  return full_trace(spec, psi0, targets, {}, {}, grid, threads);
}

EvolutionTrace entanglement_trace(const HamiltonianSpec& spec, const StateVector& psi0, std::span<const QubitPair> pairs,
                                  std::span<const std::vector<int>> blocks, const TimeGrid& grid, int threads) {
  return full_trace(spec, psi0, {}, pairs, blocks, grid, threads);
}

MaxFidelityResult max_fidelity(const MaxFidelityQuery& q, int threads) {
  check_grid(q.grid);
  if (q.initial.qubits() != q.n || q.target.qubits() != q.n) {
    throw Error(ErrorCode::DimensionMismatch, "initial and target states must have n qubits");
  }
  const std::vector<double> js = linspace(q.j_min, q.j_max, q.j_steps);
  const std::vector<double> ts = q.grid.times();
  const double dt = q.grid.t_max / q.grid.steps;

  // best (t, fidelity) for a single coupling: grid scan, then golden refinement
  const auto best_in_time = [&](double j) {
    const Propagator prop(HamiltonianSpec::homogeneous(q.n, q.delta, j));
    const Eigen::VectorXcd c = prop.coefficients(q.initial);
    const Eigen::VectorXcd d = prop.coefficients(q.target);
    const auto f = [&](double t) { return std::abs(prop.overlap_at(d, c, t)); };
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double v = f(ts[k]);
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    Peak peak{ts[arg], best};
    if (dt > 0) {
      const double lo = std::max(0.0, ts[arg] - dt), hi = std::min(q.grid.t_max, ts[arg] + dt);
      const Peak refined = golden_maximize(f, lo, hi);
      if (refined.value > peak.value) peak = refined;
    }
    return peak;
  };

  std::vector<Peak> per_j(js.size());
  parallel_for(js.size(), threads, [&](std::size_t i) { per_j[i] = best_in_time(js[i]); });

  std::size_t arg = 0;
  for (std::size_t i = 1; i < per_j.size(); ++i) {
    if (per_j[i].value > per_j[arg].value) arg = i;
  }
  MaxFidelityResult out{js[arg], per_j[arg].x, per_j[arg].value};

  if (js.size() > 1) {
    const double lo = js[arg == 0 ? 0 : arg - 1];
    const double hi = js[std::min(arg + 1, js.size() - 1)];
    const auto g = [&](double j) { return best_in_time(j).value; };
    const Peak refined = golden_maximize(g, lo, hi, 1e-9, 80);
    if (refined.value > out.max_fidelity) {
      const Peak p = best_in_time(refined.x);
      out = {refined.x, p.x, p.value};
    }
  }
  out.max_fidelity = std::min(1.0, out.max_fidelity);
  return out;
}

}  // namespace lmgsim
