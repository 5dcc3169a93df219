#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdwf/phasespace.hpp"
#include "qdwf/states.hpp"

namespace qdwf {

inline const Matrix& pauli(int index) {
  static const std::array<Matrix, 4> paulis = [] {
    std::array<Matrix, 4> m;
    m[0] = Matrix::Identity(2, 2);
    m[1] = Matrix{{Complex(0), Complex(1)}, {Complex(1), Complex(0)}};
    m[2] = Matrix{{Complex(0), Complex(0, -1)}, {Complex(0, 1), Complex(0)}};
    m[3] = Matrix{{Complex(1), Complex(0)}, {Complex(0), Complex(-1)}};
    return m;
  }();
  if (index < 0 || index > 3) {
    throw std::invalid_argument("pauli: index " + std::to_string(index) + " not in [0,3]");
  }
  return paulis[static_cast<unsigned>(index)];
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// sigma_{i_1} (x) ... (x) sigma_{i_n}; indices[0] acts on the most
/// significant qubit of the computational basis index.
inline Matrix pauli_tensor(std::span<const int> indices) {
  if (indices.empty()) throw std::invalid_argument("pauli_tensor: index list is empty");
  Matrix out = pauli(indices[0]);
  for (std::size_t k = 1; k < indices.size(); ++k) out = kron(out, pauli(indices[k]));
  return out;
}

/// Pauli tuple (i_1..i_n) of a base-4 big-endian Stokes index.
inline std::vector<int> pauli_tuple(int stokes_index, int n) {
  std::vector<int> tuple(static_cast<unsigned>(n));
  for (int k = n - 1; k >= 0; --k) {
    tuple[static_cast<unsigned>(k)] = stokes_index & 3;
    stokes_index >>= 2;
  }
  return tuple;
}

/// T_(alpha,beta) = (x)_i (sx)^(a_i) (sz)^(b_i), with alpha expanded in the
/// field basis {e_i} and beta in the trace-dual basis {f_i}. Factor i = 1 acts
/// on the most significant qubit. No global-phase correction.
inline Matrix translation_unitary(const Field& field, FieldElement alpha, FieldElement beta) {
  const auto a = field.coords(alpha);
  const auto b = field.dual_coords(beta);
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < field.degree(); ++i) {
    Matrix factor = Matrix::Identity(2, 2);
    if (a[static_cast<unsigned>(i)]) factor = pauli(1) * factor;
    if (b[static_cast<unsigned>(i)]) factor = factor * pauli(3);
    out = kron(out, factor);
  }
  return out;
}

namespace mub_detail {

// Eigenvalues of translation unitaries are 4th roots of unity. Rank order for
// the deterministic vector labelling: descending real part, then ascending
// imaginary part, i.e. 1 < -i < i < -1.
inline int eigenvalue_rank(Complex lambda) {
  if (lambda.real() > 0.5) return 0;
  if (lambda.real() < -0.5) return 3;
  return lambda.imag() < 0 ? 1 : 2;
}

inline Complex snap_root_of_unity(Complex lambda, double tol) {
  static const std::array<Complex, 4> roots = {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
  Complex best = roots[0];
  for (const auto& r : roots) {
    if (std::abs(lambda - r) < std::abs(lambda - best)) best = r;
  }
  if (std::abs(lambda - best) > tol) {
    throw std::runtime_error("build_mubs: translation eigenvalue is not a 4th root of unity");
  }
  return best;
}

// Make the first entry of magnitude > tol real positive.
inline CVector phase_normalize(CVector v, double tol = 1e-8) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return v;
    }
  }
  return v;
}

// Refine an orthonormal block basis into the eigenspaces of a commuting
// Hermitian operator restricted to each block.
inline std::vector<Matrix> split_blocks(const std::vector<Matrix>& blocks, const Matrix& herm, double tol) {
  std::vector<Matrix> out;
  for (const auto& block : blocks) {
    if (block.cols() == 1) {
      out.push_back(block);
      continue;
    }
    const Matrix restricted = block.adjoint() * herm * block;
    Eigen::SelfAdjointEigenSolver<Matrix> es(restricted);
    if (es.info() != Eigen::Success) throw std::runtime_error("build_mubs: eigensolver failed");
    const auto& vals = es.eigenvalues();
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= vals.size(); ++i) {
      if (i == vals.size() || vals(i) - vals(start) > tol) {
        out.push_back(block * es.eigenvectors().middleCols(start, i - start));
        start = i;
      }
    }
  }
  return out;
}

}  // namespace mub_detail

/// The N+1 mutually unbiased bases, one per striation. Basis i is the common
/// eigenbasis of the striation's invariant translation unitaries; vectors are
/// ordered by their eigenvalue tuple under those unitaries (generator order =
/// invariant_translations order, eigenvalue order 1 < -i < i < -1) and
/// phase-normalized so the first nonzero entry is real positive.
class MubSystem {
 public:
  MubSystem(int n, std::vector<std::vector<CVector>> bases) : n_(n), bases_(std::move(bases)) {
    validate();
  }

  int qubits() const { return n_; }
  Eigen::Index dim() const { return bases_[0][0].size(); }
  const std::vector<std::vector<CVector>>& bases() const { return bases_; }

  const CVector& vector(int striation, unsigned k) const {
    return bases_.at(static_cast<unsigned>(striation)).at(k);
  }

 private:
  void validate() const {
    const auto dim = bases_[0][0].size();
    const double unbiased = 1.0 / static_cast<double>(dim);
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      for (std::size_t i = 0; i < bases_[b].size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          const Complex ip = bases_[b][j].dot(bases_[b][i]);
          const double expect = (i == j) ? 1.0 : 0.0;
          if (std::abs(ip - expect) > 1e-10) {
            throw std::runtime_error("MubSystem: basis " + std::to_string(b) + " is not orthonormal");
          }
        }
      }
      for (std::size_t b2 = 0; b2 < b; ++b2) {
        for (const auto& v : bases_[b]) {
          for (const auto& u : bases_[b2]) {
            const double overlap = std::norm(v.dot(u));
            if (std::abs(overlap - unbiased) > 1e-10) {
              throw std::runtime_error("MubSystem: bases " + std::to_string(b2) + " and " +
                                       std::to_string(b) + " are not mutually unbiased");
            }
          }
        }
      }
    }
  }

  int n_;
  std::vector<std::vector<CVector>> bases_;
};

/// Common eigenbases of the invariant-translation unitaries of each striation.
inline MubSystem build_mubs(const PhaseSpace& space) {
  const Field& field = space.field();
  const auto dim = static_cast<Eigen::Index>(space.dim());
  const double tol = 1e-8;

  std::vector<std::vector<CVector>> bases;
  bases.reserve(space.num_striations());
  for (unsigned s = 0; s < space.num_striations(); ++s) {
    const auto translations = space.invariant_translations(static_cast<int>(s));
    std::vector<Matrix> unitaries;
    unitaries.reserve(translations.size());
    for (const auto& [alpha, beta] : translations) {
      unitaries.push_back(translation_unitary(field, alpha, beta));
    }

    // Simultaneous diagonalization by block refinement over the Hermitian and
    // anti-Hermitian parts of the commuting unitaries.
    std::vector<Matrix> blocks{Matrix::Identity(dim, dim)};
    for (const auto& u : unitaries) {
      blocks = mub_detail::split_blocks(blocks, (u + u.adjoint()) / 2.0, tol);
      blocks = mub_detail::split_blocks(blocks, (u - u.adjoint()) / Complex(0, 2), tol);
    }
    if (blocks.size() != static_cast<std::size_t>(dim)) {
      throw std::runtime_error("build_mubs: simultaneous diagonalization failed for striation " +
                               std::to_string(s));
    }

    std::vector<std::pair<std::vector<int>, CVector>> labelled;
    labelled.reserve(blocks.size());
    for (const auto& block : blocks) {
      CVector v = block.col(0).normalized();
      std::vector<int> ranks;
      ranks.reserve(unitaries.size());
      for (const auto& u : unitaries) {
        const Complex lambda = mub_detail::snap_root_of_unity(v.dot(u * v), 1e-6);
        if ((u * v - lambda * v).norm() > tol) {
          throw std::runtime_error("build_mubs: vector is not a common eigenvector within tolerance");
        }
        ranks.push_back(mub_detail::eigenvalue_rank(lambda));
      }
      labelled.push_back({std::move(ranks), mub_detail::phase_normalize(std::move(v))});
    }
    std::sort(labelled.begin(), labelled.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      // Tie-break on phase-normalized entries; unreachable when the joint
      // eigenvalue tuples are nondegenerate.
      for (Eigen::Index i = 0; i < x.second.size(); ++i) {
        const Complex a = x.second(i), b = y.second(i);
        if (std::abs(a - b) > 1e-12) {
          return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        }
      }
      return false;
    });

    std::vector<CVector> basis;
    basis.reserve(labelled.size());
    for (auto& [ranks, v] : labelled) basis.push_back(std::move(v));
    bases.push_back(std::move(basis));
  }
  return MubSystem(field.degree(), std::move(bases));
}

/// Translation-covariant assignment of one MUB vector to every line of the
/// phase space, as selected by a quantum net: in striation i with offset k_i,
/// the intercept-0 line receives basis vector number int(k_i), and the
/// intercept-c line receives T_tau v with tau the canonical translation.
class NetAssignment {
 public:
  NetAssignment(QuantumNet net, std::vector<std::vector<CVector>> vectors)
      : net_(std::move(net)), vectors_(std::move(vectors)) {}

  const QuantumNet& net() const { return net_; }

  const CVector& vector(int striation, FieldElement intercept) const {
    return vectors_.at(static_cast<unsigned>(striation)).at(intercept.value());
  }

  Matrix projector(int striation, FieldElement intercept) const {
    const CVector& v = vector(striation, intercept);
    return v * v.adjoint();
  }

 private:
  QuantumNet net_;
  std::vector<std::vector<CVector>> vectors_;  // [striation][intercept]
};

inline NetAssignment assign_net(const PhaseSpace& space, const MubSystem& mubs, const QuantumNet& net) {
  const unsigned N = space.dim();
  if (net.offsets.size() != N + 1) {
    throw std::invalid_argument("assign_net: net must carry one offset per striation");
  }
  const Field& field = space.field();
  std::vector<std::vector<CVector>> vectors(N + 1);
  for (unsigned s = 0; s <= N; ++s) {
    const CVector& base = mubs.vector(static_cast<int>(s), net.offsets[s].value());
    std::vector<Matrix> invariant_unitaries;
    for (const auto& [a, b] : space.invariant_translations(static_cast<int>(s))) {
      invariant_unitaries.push_back(translation_unitary(field, a, b));
    }
    vectors[s].reserve(N);
    for (unsigned c = 0; c < N; ++c) {
      const auto tau = space.canonical_translation(static_cast<int>(s), FieldElement(c));
      const Matrix u = translation_unitary(field, tau.first, tau.second);
      CVector v = mub_detail::phase_normalize(u * base);
      // The connecting translation is only fixed up to an invariant
      // translation; the projector must not depend on the choice.
      const Matrix q = v * v.adjoint();
      for (const Matrix& alt : invariant_unitaries) {
        const CVector v_alt = alt * v;
        if (max_abs_diff(q, v_alt * v_alt.adjoint()) > 1e-10) {
          throw std::runtime_error("assign_net: covariance consistency check failed for striation " +
                                   std::to_string(s));
        }
      }
      vectors[s].push_back(std::move(v));
    }
  }
  return NetAssignment(net, std::move(vectors));
}

/// The N^2 phase-point operators A_alpha = sum_{lines through alpha} Q(line) - I,
/// indexed by int(q) * N + int(p).
class PhasePointOperators {
 public:
  PhasePointOperators(int n, QuantumNet net, std::vector<Matrix> ops)
      : n_(n), N_(1u << n), net_(std::move(net)), ops_(std::move(ops)) {
    validate();
  }

  int qubits() const { return n_; }
  unsigned dim() const { return N_; }
  const QuantumNet& net() const { return net_; }

  const Matrix& at_index(int index) const { return ops_.at(static_cast<unsigned>(index)); }
  const Matrix& at(PhasePoint pt) const { return ops_[pt.q.value() * N_ + pt.p.value()]; }
  const std::vector<Matrix>& all() const { return ops_; }

 private:
  void validate() const {
    const auto dim = static_cast<Eigen::Index>(N_);
    if (ops_.size() != N_ * N_) throw std::runtime_error("PhasePointOperators: expected N^2 operators");
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& a : ops_) {
      if (max_abs_diff(a, a.adjoint()) > 1e-10) {
        throw std::runtime_error("PhasePointOperators: operator is not Hermitian");
      }
      if (std::abs(a.trace() - 1.0) > 1e-10) {
        throw std::runtime_error("PhasePointOperators: operator trace deviates from 1");
      }
      sum += a;
    }
    if (max_abs_diff(sum, static_cast<double>(N_) * Matrix::Identity(dim, dim)) > 1e-8) {
      throw std::runtime_error("PhasePointOperators: operators do not sum to N * identity");
    }
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double expect = (i == j) ? static_cast<double>(N_) : 0.0;
        if (std::abs(trace_product(ops_[i], ops_[j]) - expect) > 1e-8) {
          throw std::runtime_error("PhasePointOperators: Tr(A_a A_b) != N * delta_ab");
        }
      }
    }
  }

  int n_;
  unsigned N_;
  QuantumNet net_;
  std::vector<Matrix> ops_;
};

inline PhasePointOperators phase_point_operators(const PhaseSpace& space, const NetAssignment& assignment) {
  const unsigned N = space.dim();
  const auto dim = static_cast<Eigen::Index>(N);
  std::vector<Matrix> ops;
  ops.reserve(N * N);
  for (unsigned q = 0; q < N; ++q) {
    for (unsigned p = 0; p < N; ++p) {
      const PhasePoint pt{FieldElement(q), FieldElement(p)};
      Matrix a = -Matrix::Identity(dim, dim);
      for (unsigned s = 0; s <= N; ++s) {
        a += assignment.projector(static_cast<int>(s), space.line_intercept(static_cast<int>(s), pt));
      }
      ops.push_back(std::move(a));
    }
  }
  return PhasePointOperators(space.field().degree(), assignment.net(), std::move(ops));
}

/// Convenience pipeline: MUBs -> net assignment -> phase-point operators.
inline PhasePointOperators build_phase_point_operators(const PhaseSpace& space, const MubSystem& mubs,
                                                       const QuantumNet& net) {
  return phase_point_operators(space, assign_net(space, mubs, net));
}

/// W_alpha = (1/N) Tr(op A_alpha), for an arbitrary (not necessarily state)
/// operator. Throws if any trace has imaginary part above 1e-8.
inline DwfVector dwf_of_operator(const Matrix& op, const PhasePointOperators& ops) {
  const auto count = static_cast<Eigen::Index>(ops.dim() * ops.dim());
  RVector w(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Complex t = trace_product(op, ops.at_index(static_cast<int>(i)));
    if (std::abs(t.imag()) > 1e-8) {
      throw std::runtime_error("dwf_of_operator: Tr(rho A) has imaginary part " + std::to_string(t.imag()));
    }
    w(i) = t.real() / static_cast<double>(ops.dim());
  }
  return DwfVector(ops.qubits(), std::move(w));
}

inline DwfVector dwf_from_density(const DensityMatrix& rho, const PhasePointOperators& ops) {
  if (rho.dim() != static_cast<Eigen::Index>(ops.dim())) {
    throw std::invalid_argument("dwf_from_density: dimension mismatch");
  }
  return dwf_of_operator(rho.mat, ops);
}

inline Matrix operator_from_dwf(const DwfVector& w, const PhasePointOperators& ops) {
  const auto dim = static_cast<Eigen::Index>(ops.dim());
  if (w.values.size() != dim * dim) throw std::invalid_argument("operator_from_dwf: dimension mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < w.values.size(); ++i) out += w.values(i) * ops.at_index(static_cast<int>(i));
  return out;
}

/// rho = sum_alpha W_alpha A_alpha. Requires sum W = 1 within 1e-8.
inline DensityMatrix density_from_dwf(const DwfVector& w, const PhasePointOperators& ops) {
  if (std::abs(w.sum() - 1.0) > 1e-8) {
    throw std::invalid_argument("density_from_dwf: DWF does not sum to 1");
  }
  Matrix m = operator_from_dwf(w, ops);
  if (max_abs_diff(m, m.adjoint()) > 1e-10) {
    throw std::runtime_error("density_from_dwf: reconstruction is not Hermitian");
  }
  return DensityMatrix(std::move(m));
}

}  // namespace qdwf
