#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qdwf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Tr(A B) in O(dim^2).
inline Complex trace_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline int qubits_for_dim(Eigen::Index dim, const char* what) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim || n < 1) {
    throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  return n;
}

/// n-qubit density matrix. Hermitian, unit trace, positive semidefinite.
struct DensityMatrix {
  Matrix mat;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m) : mat(std::move(m)) {}

  int qubits() const { return qubits_for_dim(mat.rows(), "DensityMatrix"); }
  Eigen::Index dim() const { return mat.rows(); }

  void validate(double herm_tol = 1e-10, double trace_tol = 1e-10, double psd_tol = 1e-8) const {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DensityMatrix: matrix is not square");
    qubits();
    const double herm = max_abs_diff(mat, mat.adjoint());
    if (herm > herm_tol) {
      throw std::invalid_argument("DensityMatrix: not Hermitian (residual " + std::to_string(herm) + ")");
    }
    const Complex tr = mat.trace();
    if (std::abs(tr - 1.0) > trace_tol) {
      throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                  std::to_string(std::abs(tr - 1.0)));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -psd_tol) {
      throw std::invalid_argument("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                  std::to_string(min_eig) + ")");
    }
  }
};

/// Stokes vector: 4^n reals indexed by the Pauli tuple (i_1,...,i_n) in
/// base-4 big-endian order (i_1 is the most significant digit).
struct StokesVector {
  int n = 0;
  RVector values;

  StokesVector() = default;
  StokesVector(int n_, RVector v) : n(n_), values(std::move(v)) {}
};

/// Discrete Wigner function: N^2 reals, index = int(q) * N + int(p).
struct DwfVector {
  int n = 0;
  RVector values;

  DwfVector() = default;
  DwfVector(int n_, RVector v) : n(n_), values(std::move(v)) {}

  double sum() const { return values.sum(); }
};

}  // namespace qdwf
