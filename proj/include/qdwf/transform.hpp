#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdwf/quantops.hpp"
#include "qdwf/states.hpp"

namespace qdwf {

enum class TransformKind {
  stokes_from_dwf,  // H:  S = H W
  spin_flip_dwf,    // T:  W~ = T W
  spin_flip_stokes  // H~ = H T:  S~ = H~ W
};

inline const char* to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::stokes_from_dwf: return "stokes_from_dwf";
    case TransformKind::spin_flip_dwf: return "spin_flip_dwf";
    case TransformKind::spin_flip_stokes: return "spin_flip_stokes";
  }
  return "?";
}

/// An N^2 x N^2 matrix with entries +-1/N, stored exactly as a sign matrix
/// plus the implicit 1/N scale. Satisfies (N*mat)(N*mat)^T = N^2 * I, so the
/// inverse is exactly the transpose.
class HadamardTransform {
 public:
  HadamardTransform(int n, QuantumNet net, TransformKind kind, Eigen::MatrixXi signs)
      : n_(n), N_(1u << n), net_(std::move(net)), kind_(kind), signs_(std::move(signs)) {
    const auto side = static_cast<Eigen::Index>(N_ * N_);
    if (signs_.rows() != side || signs_.cols() != side) {
      throw std::invalid_argument("HadamardTransform: sign matrix must be N^2 x N^2");
    }
    const Eigen::MatrixXi gram = signs_ * signs_.transpose();
    if (gram != Eigen::MatrixXi::Identity(side, side) * static_cast<int>(N_ * N_)) {
      throw std::runtime_error("HadamardTransform: sign matrix is not Hadamard");
    }
  }

  int qubits() const { return n_; }
  unsigned dim() const { return N_; }  // N; the matrix side is N^2
  TransformKind kind() const { return kind_; }
  const QuantumNet& net() const { return net_; }
  const Eigen::MatrixXi& signs() const { return signs_; }

  Eigen::MatrixXd matrix() const { return signs_.cast<double>() / static_cast<double>(N_); }

  RVector apply(const RVector& v) const {
    if (v.size() != signs_.rows()) throw std::invalid_argument("HadamardTransform: dimension mismatch");
    return (signs_.cast<double>() * v) / static_cast<double>(N_);
  }

  RVector apply_inverse(const RVector& v) const {
    if (v.size() != signs_.rows()) throw std::invalid_argument("HadamardTransform: dimension mismatch");
    return (signs_.transpose().cast<double>() * v) / static_cast<double>(N_);
  }

  friend bool operator==(const HadamardTransform& a, const HadamardTransform& b) {
    return a.n_ == b.n_ && a.kind_ == b.kind_ && a.signs_ == b.signs_;
  }

 private:
  int n_;
  unsigned N_;
  QuantumNet net_;
  TransformKind kind_;
  Eigen::MatrixXi signs_;
};

namespace transform_detail {

// Snap x to +-1/N; the constructions below produce exact signs up to
// round-off, anything further off is a bug.
inline int snap_sign(double x, unsigned N, const char* what) {
  const double scaled = x * static_cast<double>(N);
  const int sign = scaled >= 0 ? 1 : -1;
  if (std::abs(scaled - sign) > 1e-8 * static_cast<double>(N)) {
    throw std::runtime_error(std::string(what) + ": entry " + std::to_string(x) +
                             " is not +-1/N within tolerance");
  }
  return sign;
}

}  // namespace transform_detail

/// sigma_y^(x)n M^* sigma_y^(x)n, complex conjugation in the computational basis.
inline Matrix spin_flip_operator(const Matrix& m) {
  const int n = qubits_for_dim(m.rows(), "spin_flip_operator");
  std::vector<int> ys(static_cast<unsigned>(n), 2);
  const Matrix y = pauli_tensor(ys);
  return y * m.conjugate() * y;
}

/// The spin-flipped state rho~. Involution: applying twice returns rho.
inline DensityMatrix spin_flip_density(const DensityMatrix& rho) {
  return DensityMatrix(spin_flip_operator(rho.mat));
}

/// S_{i_1..i_n} = (1/2^n) Tr(rho sigma_{i_1} (x) ... (x) sigma_{i_n}).
inline StokesVector stokes_from_density(const DensityMatrix& rho) {
  const int n = rho.qubits();
  const auto count = static_cast<Eigen::Index>(1) << (2 * n);
  RVector s(count);
  for (Eigen::Index t = 0; t < count; ++t) {
    const Complex tr = trace_product(rho.mat, pauli_tensor(pauli_tuple(static_cast<int>(t), n)));
    if (std::abs(tr.imag()) > 1e-8) {
      throw std::runtime_error("stokes_from_density: Tr(rho sigma) has nonzero imaginary part");
    }
    s(t) = tr.real() / std::pow(2.0, n);
  }
  return StokesVector(n, std::move(s));
}

/// rho = sum_t S_t sigma_t.
inline DensityMatrix density_from_stokes(const StokesVector& s) {
  const auto dim = static_cast<Eigen::Index>(1) << s.n;
  if (s.values.size() != dim * dim) throw std::invalid_argument("density_from_stokes: dimension mismatch");
  Matrix rho = Matrix::Zero(dim, dim);
  for (Eigen::Index t = 0; t < s.values.size(); ++t) {
    rho += s.values(t) * pauli_tensor(pauli_tuple(static_cast<int>(t), s.n));
  }
  return DensityMatrix(std::move(rho));
}

/// The Hadamard matrix with S = H W for the operators' net: row t is the DWF
/// of sigma_{i_1} (x) ... (x) sigma_{i_n}, whose entries are exactly +-1/N.
inline HadamardTransform build_H(const PhasePointOperators& ops) {
  const unsigned N = ops.dim();
  const auto side = static_cast<Eigen::Index>(N * N);
  Eigen::MatrixXi signs(side, side);
  for (Eigen::Index t = 0; t < side; ++t) {
    const DwfVector row = dwf_of_operator(pauli_tensor(pauli_tuple(static_cast<int>(t), ops.qubits())), ops);
    for (Eigen::Index a = 0; a < side; ++a) {
      signs(t, a) = transform_detail::snap_sign(row.values(a), N, "build_H");
    }
  }
  return HadamardTransform(ops.qubits(), ops.net(), TransformKind::stokes_from_dwf, std::move(signs));
}

/// The spin-flip matrix T with W~ = T W, extracted by probing the density
/// route on the coordinate basis: T_ab = (1/N) Tr(A_a flip(A_b)). Independent
/// of the net the operators were built from.
inline HadamardTransform build_T(const PhasePointOperators& ops) {
  const unsigned N = ops.dim();
  const auto side = static_cast<Eigen::Index>(N * N);
  Eigen::MatrixXi signs(side, side);
  for (Eigen::Index b = 0; b < side; ++b) {
    const Matrix flipped = spin_flip_operator(ops.at_index(static_cast<int>(b)));
    for (Eigen::Index a = 0; a < side; ++a) {
      const Complex t = trace_product(ops.at_index(static_cast<int>(a)), flipped);
      if (std::abs(t.imag()) > 1e-8) throw std::runtime_error("build_T: probe trace is not real");
      signs(a, b) = transform_detail::snap_sign(t.real() / static_cast<double>(N), N, "build_T");
    }
  }
  return HadamardTransform(ops.qubits(), ops.net(), TransformKind::spin_flip_dwf, std::move(signs));
}

/// H~ = H T, the member of the Hadamard family taking a DWF directly to the
/// Stokes vector of the spin-flipped state.
inline HadamardTransform build_H_tilde(const HadamardTransform& h, const HadamardTransform& t) {
  if (h.kind() != TransformKind::stokes_from_dwf || t.kind() != TransformKind::spin_flip_dwf) {
    throw std::invalid_argument("build_H_tilde: expected kinds (stokes_from_dwf, spin_flip_dwf)");
  }
  if (h.dim() != t.dim()) throw std::invalid_argument("build_H_tilde: dimension mismatch");
  const int N = static_cast<int>(h.dim());
  Eigen::MatrixXi product = h.signs() * t.signs();
  for (Eigen::Index i = 0; i < product.rows(); ++i) {
    for (Eigen::Index j = 0; j < product.cols(); ++j) {
      const int v = product(i, j);
      if (v != N && v != -N) {
        throw std::runtime_error("build_H_tilde: product entry is not +-1/N");
      }
      product(i, j) = v / N;
    }
  }
  return HadamardTransform(h.qubits(), h.net(), TransformKind::spin_flip_stokes, std::move(product));
}

/// S = H W (or S~ = H~ W).
inline StokesVector stokes_from_dwf(const DwfVector& w, const HadamardTransform& h) {
  if (h.kind() == TransformKind::spin_flip_dwf) {
    throw std::invalid_argument("stokes_from_dwf: transform does not map DWF to Stokes");
  }
  if (w.n != h.qubits()) throw std::invalid_argument("stokes_from_dwf: qubit count mismatch");
  return StokesVector(w.n, h.apply(w.values));
}

/// W = H^-1 S, with H^-1 = H^T exactly.
inline DwfVector dwf_from_stokes(const StokesVector& s, const HadamardTransform& h) {
  if (h.kind() == TransformKind::spin_flip_dwf) {
    throw std::invalid_argument("dwf_from_stokes: transform does not map DWF to Stokes");
  }
  if (s.n != h.qubits()) throw std::invalid_argument("dwf_from_stokes: qubit count mismatch");
  return DwfVector(s.n, h.apply_inverse(s.values));
}

/// W~ = T W.
inline DwfVector spin_flip_dwf(const DwfVector& w, const HadamardTransform& t) {
  if (t.kind() != TransformKind::spin_flip_dwf) {
    throw std::invalid_argument("spin_flip_dwf: transform is not the spin-flip matrix");
  }
  if (w.n != t.qubits()) throw std::invalid_argument("spin_flip_dwf: qubit count mismatch");
  return DwfVector(w.n, t.apply(w.values));
}

}  // namespace qdwf
