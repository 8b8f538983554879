#include "lmgsim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lmgsim/error.hpp"

namespace lmgsim {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(ErrorCode::InvalidArgument,
                "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

std::uint64_t dim_of(int n) { return std::uint64_t{1} << n; }

// Validated, ascending copy of a label set.
std::vector<int> sorted_labels(std::span<const int> labels, int n, const char* what) {
  std::vector<int> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " contains a repeated qubit label");
  }
  for (int q : out) {
    if (q < 1 || q > n) {
      throw Error(ErrorCode::QubitOutOfRange,
                  std::string(what) + " label " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
    }
  }
  return out;
}

// Gathers the bits of `index` at the given (0-based, MSB-first) positions of a
// `width`-bit word into a compact index, first position most significant.
std::uint64_t gather(std::uint64_t index, int width, std::span<const int> positions) {
  std::uint64_t out = 0;
  for (int p : positions) out = (out << 1) | ((index >> (width - 1 - p)) & 1u);
  return out;
}

Eigen::VectorXcd kron_product(std::span<const Eigen::Vector2cd> factors) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    Eigen::VectorXcd next(out.size() * 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next[2 * i] = out[i] * f[0];
      next[2 * i + 1] = out[i] * f[1];
    }
    out = std::move(next);
  }
  return out;
}

const Eigen::Vector2cd kZero{1.0, 0.0};
const Eigen::Vector2cd kPlus{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
const Eigen::Vector2cd kMinus{std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2};

Eigen::VectorXcd product_of(std::initializer_list<Eigen::Vector2cd> factors) {
  std::vector<Eigen::Vector2cd> v(factors);
  return kron_product(v);
}

void require_n(int n, int expected, const char* name) {
  if (n != expected) {
    throw Error(ErrorCode::IncompatibleQubitCount,
                std::string(name) + " is defined for n=" + std::to_string(expected) + ", got n=" + std::to_string(n));
  }
}

}  // namespace

std::uint64_t basis_index(std::span<const int> bits) {
  std::uint64_t b = 0;
  for (int bit : bits) {
    if (bit != 0 && bit != 1) throw Error(ErrorCode::InvalidArgument, "basis bits must be 0 or 1");
    b = (b << 1) | static_cast<std::uint64_t>(bit);
  }
  return b;
}

std::vector<int> basis_bits(int n, std::uint64_t index) {
  check_qubit_count(n);
  if (index >= dim_of(n)) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  std::vector<int> bits(n);
  for (int i = 1; i <= n; ++i) bits[i - 1] = (index & qubit_mask(n, i)) ? 1 : 0;
  return bits;
}

StateVector StateVector::from_amplitudes(int n, Eigen::VectorXcd amplitudes) {
  check_qubit_count(n);
  if (static_cast<std::uint64_t>(amplitudes.size()) != dim_of(n)) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim_of(n)) + " amplitudes, got " +
                                                  std::to_string(amplitudes.size()));
  }
  const double nrm = amplitudes.norm();
  if (!(nrm > 1e-300) || !std::isfinite(nrm)) throw Error(ErrorCode::NotNormalizable, "amplitudes have zero or non-finite norm");
  amplitudes /= nrm;
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  check_qubit_count(n);
  if (index >= dim_of(n)) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_of(n)));
  a[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n, std::move(a));
}

StateVector StateVector::from_bits(std::span<const int> bits) {
  return basis(static_cast<int>(bits.size()), basis_index(bits));
}

DensityDiagnostics diagnose(const DensityMatrix& rho) {
  DensityDiagnostics d;
  d.hermiticity_error = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.matrix.trace() - cplx(1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

std::string reference_name(const ReferenceState& kind) {
  struct Namer {
    std::string operator()(ref::Sep) const { return "SEP"; }
    std::string operator()(ref::Sep1) const { return "SEP1"; }
    std::string operator()(ref::Ghz) const { return "GHZ"; }
    std::string operator()(ref::Ent3) const { return "ENT3"; }
    std::string operator()(ref::W) const { return "W"; }
    std::string operator()(ref::WVariant3 w) const { return w.sign >= 0 ? "W3+" : "W3-"; }
    std::string operator()(ref::WVariant4) const { return "W4"; }
    std::string operator()(ref::SpinWave s) const { return "SPINWAVE:" + std::to_string(s.k); }
  };
  return std::visit(Namer{}, kind);
}

ReferenceState parse_reference(const std::string& name) {
  if (name == "SEP") return ref::Sep{};
  if (name == "SEP1") return ref::Sep1{};
  if (name == "GHZ") return ref::Ghz{};
  if (name == "ENT3") return ref::Ent3{};
  if (name == "W") return ref::W{};
  if (name == "W3+") return ref::WVariant3{+1};
  if (name == "W3-") return ref::WVariant3{-1};
  if (name == "W4") return ref::WVariant4{};
  constexpr std::string_view prefix = "SPINWAVE:";
  if (name.starts_with(prefix)) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return ref::SpinWave{std::stoi(digits)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown reference state '" + name + "'");
}

StateVector make_reference(const ReferenceState& kind, int n) {
  check_qubit_count(n);
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  const auto one_excitation = [&](auto&& coefficient) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
    for (int j = 1; j <= n; ++j) a[static_cast<Eigen::Index>(qubit_mask(n, j))] = coefficient(j);
    return a;
  };

  struct Builder {
    int n;
    Eigen::Index dim;
    decltype(one_excitation)& single;

    Eigen::VectorXcd operator()(ref::Sep) const {
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
      a[0] = 1.0;
      return a;
    }
    Eigen::VectorXcd operator()(ref::Sep1) const {
      Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
      a[static_cast<Eigen::Index>(qubit_mask(n, 1))] = 1.0;
      return a;
    }
    Eigen::VectorXcd operator()(ref::Ghz) const {
      std::vector<Eigen::Vector2cd> plus(n, kPlus), minus(n, kMinus);
      return (kron_product(plus) + kron_product(minus)) / std::numbers::sqrt2;
    }
    Eigen::VectorXcd operator()(ref::Ent3) const {
      require_n(n, 3, "ENT3");
      return (product_of({kPlus, kMinus, kZero}) + product_of({kMinus, kZero, kPlus}) +
              product_of({kZero, kPlus, kMinus})) /
             std::sqrt(3.0);
    }
    Eigen::VectorXcd operator()(ref::W) const {
      const double c = 1.0 / std::sqrt(static_cast<double>(n));
      return single([c](int) { return cplx(c); });
    }
    Eigen::VectorXcd operator()(ref::WVariant3 w) const {
      require_n(n, 3, "W3");
      const double s = w.sign >= 0 ? 1.0 : -1.0;
      const cplx first = std::polar(1.0 / std::sqrt(3.0), s * std::numbers::pi / 6);
      const cplx rest = std::polar(1.0 / std::sqrt(3.0), s * 5 * std::numbers::pi / 6);
      return single([&](int j) { return j == 1 ? first : rest; });
    }
    Eigen::VectorXcd operator()(ref::WVariant4) const {
      require_n(n, 4, "W4");
      return single([](int j) { return cplx(j == 1 ? -0.5 : 0.5); });
    }
    Eigen::VectorXcd operator()(ref::SpinWave sw) const {
      if (sw.k < 0 || sw.k >= n) {
        throw Error(ErrorCode::IncompatibleQubitCount,
                    "spin-wave momentum k=" + std::to_string(sw.k) + " outside [0, " + std::to_string(n - 1) + "]");
      }
      const double c = 1.0 / std::sqrt(static_cast<double>(n));
      return single([&](int j) { return std::polar(c, 2 * std::numbers::pi * j * sw.k / n); });
    }
  };

  return StateVector::from_amplitudes(n, std::visit(Builder{n, dim, one_excitation}, kind));
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product of " + std::to_string(a.qubits()) + "- and " + std::to_string(b.qubits()) + "-qubit states");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::min(1.0, std::abs(inner(a, b))); }

StateVector apply_pauli(const StateVector& psi, Pauli axis, int qubit) {
  const int n = psi.qubits();
  if (qubit < 1 || qubit > n) {
    throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(qubit) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::uint64_t mask = qubit_mask(n, qubit);
  const auto& in = psi.amplitudes();
  Eigen::VectorXcd out(in.size());
  for (Eigen::Index b = 0; b < in.size(); ++b) {
    const bool one = static_cast<std::uint64_t>(b) & mask;
    const auto flipped = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ mask);
    switch (axis) {
      case Pauli::X: out[flipped] = in[b]; break;
      // Y|0> = i|1>, Y|1> = -i|0>
      case Pauli::Y: out[flipped] = (one ? cplx(0, -1) : cplx(0, 1)) * in[b]; break;
      case Pauli::Z: out[b] = one ? -in[b] : in[b]; break;
    }
  }
  return StateVector::from_amplitudes(n, std::move(out));
}

DensityMatrix pure_density(const StateVector& psi) {
  std::vector<int> all(psi.qubits());
  for (int i = 0; i < psi.qubits(); ++i) all[i] = i + 1;
  return {std::move(all), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  const int n = psi.qubits();
  if (keep.empty()) throw Error(ErrorCode::InvalidArgument, "partial trace needs a non-empty keep set");
  const std::vector<int> kept = sorted_labels(keep, n, "keep set");
  std::vector<int> keep_pos, rest_pos;
  for (int q = 1; q <= n; ++q) {
    (std::binary_search(kept.begin(), kept.end(), q) ? keep_pos : rest_pos).push_back(q - 1);
  }
  const Eigen::Index dk = Eigen::Index{1} << keep_pos.size();
  const Eigen::Index dr = Eigen::Index{1} << rest_pos.size();
  // psi reshaped as (kept index) x (traced index)
  Eigen::MatrixXcd m(dk, dr);
  const auto& a = psi.amplitudes();
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    m(static_cast<Eigen::Index>(gather(ub, n, keep_pos)), static_cast<Eigen::Index>(gather(ub, n, rest_pos))) = a[b];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  return {kept, std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int k = rho.size();
  if (keep.empty()) throw Error(ErrorCode::InvalidArgument, "partial trace needs a non-empty keep set");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw Error(ErrorCode::InvalidArgument, "keep set contains a repeated qubit label");
  }
  std::vector<int> keep_pos, rest_pos;
  for (int p = 0; p < k; ++p) {
    (std::binary_search(kept.begin(), kept.end(), rho.qubits[p]) ? keep_pos : rest_pos).push_back(p);
  }
  if (keep_pos.size() != kept.size()) throw Error(ErrorCode::QubitOutOfRange, "keep set is not a subset of the density matrix labels");

  const Eigen::Index dk = Eigen::Index{1} << keep_pos.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  const Eigen::Index d = rho.matrix.rows();
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    const auto rest_r = gather(ur, k, rest_pos);
    const auto kr = static_cast<Eigen::Index>(gather(ur, k, keep_pos));
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto uc = static_cast<std::uint64_t>(c);
      if (gather(uc, k, rest_pos) != rest_r) continue;
      out(kr, static_cast<Eigen::Index>(gather(uc, k, keep_pos))) += rho.matrix(r, c);
    }
  }
  return {kept, std::move(out)};
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::span<const int> qubits,
                                   std::span<const int> subsystem) {
  const int k = static_cast<int>(qubits.size());
  if (rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << k)) {
    throw Error(ErrorCode::DimensionMismatch, "matrix size does not match its qubit labels");
  }
  std::uint64_t mask = 0;
  for (int q : subsystem) {
    const auto it = std::find(qubits.begin(), qubits.end(), q);
    if (it == qubits.end()) {
      throw Error(ErrorCode::QubitOutOfRange, "partial-transpose label " + std::to_string(q) + " not among the matrix qubits");
    }
    mask |= std::uint64_t{1} << (k - 1 - static_cast<int>(it - qubits.begin()));
  }
  const Eigen::Index d = rho.rows();
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto ur = static_cast<std::uint64_t>(r), uc = static_cast<std::uint64_t>(c);
      // exchange the transposed factors' bits between row and column
      const auto r2 = (ur & ~mask) | (uc & mask);
      const auto c2 = (uc & ~mask) | (ur & mask);
      out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) = rho(r, c);
    }
  }
  return out;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, std::span<const int> subsystem) {
  return partial_transpose(rho.matrix, rho.qubits, subsystem);
}

}  // namespace lmgsim
