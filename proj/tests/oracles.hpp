#pragma once

// Brute-force reference implementations used only by the tests. None of
// them call into the library, so agreement is an independent check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline MatrixXcd pauli(char axis) {
  MatrixXcd p(2, 2);
  switch (axis) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p = MatrixXcd::Identity(2, 2);
  }
  return p;
}

/// P acting on qubit `label` (1-based, qubit 1 leftmost factor) of n.
inline MatrixXcd site(char axis, int label, int n) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (int q = 1; q <= n; ++q) out = kron(out, q == label ? pauli(axis) : MatrixXcd::Identity(2, 2));
  return out;
}

inline MatrixXcd hamiltonian(const std::vector<double>& deltas, const MatrixXd& couplings, const std::vector<double>& g) {
  const int n = static_cast<int>(deltas.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (int i = 1; i <= n; ++i) {
    h -= 0.5 * deltas[i - 1] * site('Z', i, n);
    if (!g.empty()) h += g[i - 1] * site('X', i, n);
    for (int j = i + 1; j <= n; ++j) h -= couplings(i - 1, j - 1) * site('X', i, n) * site('X', j, n);
  }
  return h;
}

inline MatrixXcd homogeneous(int n, double delta, double j) {
  MatrixXd c = MatrixXd::Constant(n, n, j);
  c.diagonal().setZero();
  return hamiltonian(std::vector<double>(n, delta), c, {});
}

/// Cyclic Jacobi rotations on a real symmetric matrix; ascending eigenvalues.
inline VectorXd jacobi_eigenvalues(MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  VectorXd ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

/// Hermitian eigenvalues through the real embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is each eigenvalue twice.
inline VectorXd hermitian_eigenvalues(const MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  MatrixXd big(2 * n, 2 * n);
  big << h.real(), -h.imag(), h.imag(), h.real();
  const VectorXd doubled = jacobi_eigenvalues(big);
  VectorXd ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = doubled[2 * i];
  return ev;
}

/// exp(A) by scaling, a 30-term Taylor series and repeated squaring.
inline MatrixXcd expm(const MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.5) ++s;
  const MatrixXcd b = a / std::ldexp(1.0, s);
  MatrixXcd term = MatrixXcd::Identity(a.rows(), a.cols());
  MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

inline int bit(Eigen::Index index, int n, int label) { return static_cast<int>((index >> (n - label)) & 1); }

/// Reduced density matrix of |psi> on `keep` (ascending labels) by summing
/// over every pair of full indices that agree outside `keep`.
inline MatrixXcd partial_trace(const VectorXcd& psi, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  const Eigen::Index dim = psi.size();
  MatrixXcd rho = MatrixXcd::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  const auto sub = [&](Eigen::Index idx) {
    Eigen::Index s = 0;
    for (int q : keep) s = (s << 1) | bit(idx, n, q);
    return s;
  };
  const auto env_equal = [&](Eigen::Index a, Eigen::Index b) {
    for (int q = 1; q <= n; ++q)
      if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(a, n, q) != bit(b, n, q)) return false;
    return true;
  };
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      if (env_equal(a, b)) rho(sub(a), sub(b)) += psi[a] * std::conj(psi[b]);
  return rho;
}

/// Partial transpose over the factors at `positions` (0-based, first factor
/// most significant) of an m-qubit matrix.
inline MatrixXcd partial_transpose(const MatrixXcd& rho, int m, const std::vector<int>& positions) {
  MatrixXcd out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      Eigen::Index ii = i, jj = j;
      for (int p : positions) {
        const Eigen::Index mask = Eigen::Index{1} << (m - 1 - p);
        if ((i & mask) != (j & mask)) {
          ii ^= mask;
          jj ^= mask;
        }
      }
      out(ii, jj) = rho(i, j);
    }
  }
  return out;
}

inline double entropy_bits(const MatrixXcd& rho) {
  double s = 0.0;
  for (double p : hermitian_eigenvalues(rho))
    if (p > 1e-14) s -= p * std::log2(p);
  return s;
}

inline VectorXcd random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd v(Eigen::Index{1} << n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace oracle
