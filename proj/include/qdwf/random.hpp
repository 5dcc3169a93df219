#pragma once

#include <random>

#include "qdwf/states.hpp"

namespace qdwf {

inline Matrix random_ginibre(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

/// Full-rank random mixed state G G^dag / Tr(G G^dag).
inline DensityMatrix random_density(int n, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  const Matrix g = random_ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

inline CVector random_pure_state(int n, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  return psi.normalized();
}

inline DensityMatrix random_pure_density(int n, std::mt19937_64& rng) {
  const CVector psi = random_pure_state(n, rng);
  return DensityMatrix(psi * psi.adjoint());
}

/// Haar-distributed unitary via QR with phase-fixed diagonal.
inline Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const Matrix g = random_ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

}  // namespace qdwf
