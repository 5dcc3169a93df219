#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qdwf/transform.hpp"

namespace qdwf {

namespace entangle_detail {

// Number of nonzero base-4 digits of a Stokes index.
inline int tuple_weight(int stokes_index, int n) {
  int w = 0;
  for (int k = 0; k < n; ++k) {
    if (stokes_index & 3) ++w;
    stokes_index >>= 2;
  }
  return w;
}

inline void require_spin_flip(const HadamardTransform& t, const char* what) {
  if (t.kind() != TransformKind::spin_flip_dwf) {
    throw std::invalid_argument(std::string(what) + ": transform is not the spin-flip matrix T");
  }
}

}  // namespace entangle_detail

/// Minkowski squared norm of the Stokes vector: the alternating-sign quadratic
/// form N * sum_t (-1)^(nonzero indices in t) S_t^2, equal to Tr(rho rho~).
inline double minkowski_sq_from_stokes(const StokesVector& s) {
  const double N = std::pow(2.0, s.n);
  double acc = 0.0;
  for (Eigen::Index t = 0; t < s.values.size(); ++t) {
    const int w = entangle_detail::tuple_weight(static_cast<int>(t), s.n);
    const double sq = s.values(t) * s.values(t);
    acc += (w % 2 == 0) ? sq : -sq;
  }
  return N * acc;
}

/// Same scalar computed in DWF space: N W^T (T W) = Tr(rho rho~).
inline double minkowski_sq_from_dwf(const DwfVector& w, const HadamardTransform& t) {
  entangle_detail::require_spin_flip(t, "minkowski_sq_from_dwf");
  if (w.n != t.qubits()) throw std::invalid_argument("minkowski_sq_from_dwf: qubit count mismatch");
  const double N = static_cast<double>(t.dim());
  return N * w.values.dot(t.apply(w.values));
}

/// Tr(rho^2) = N sum_a W_a^2.
inline double purity_from_dwf(const DwfVector& w) {
  return std::pow(2.0, w.n) * w.values.squaredNorm();
}

/// M(rho) = 1 - Tr(rho^2), in [0, 1 - 1/N]; zero exactly for pure states.
inline double mixedness(const DwfVector& w) { return 1.0 - purity_from_dwf(w); }

/// I(rho, rho~) = 1 - (1/2) Tr[(rho - rho~)^2], computed in DWF space as
/// 1 - (N/2) |W - TW|^2. Satisfies S^2 + M = I.
inline double indistinguishability(const DwfVector& w, const HadamardTransform& t) {
  entangle_detail::require_spin_flip(t, "indistinguishability");
  if (w.n != t.qubits()) throw std::invalid_argument("indistinguishability: qubit count mismatch");
  const double N = static_cast<double>(t.dim());
  return 1.0 - 0.5 * N * (w.values - t.apply(w.values)).squaredNorm();
}

/// Pure-state n-concurrence sqrt(N W^T T W). Requires Tr(rho^2) = 1 within
/// 1e-6; round-off below -1e-12 under the root is clamped, anything lower is
/// an error.
inline double concurrence_pure(const DwfVector& w, const HadamardTransform& t) {
  entangle_detail::require_spin_flip(t, "concurrence_pure");
  if (std::abs(purity_from_dwf(w) - 1.0) > 1e-6) {
    throw std::invalid_argument("concurrence_pure: state is not pure (Tr(rho^2) = " +
                                std::to_string(purity_from_dwf(w)) + ")");
  }
  const double sq = minkowski_sq_from_dwf(w, t);
  if (sq < -1e-12) {
    throw std::runtime_error("concurrence_pure: N W^T T W = " + std::to_string(sq) + " < 0");
  }
  return std::sqrt(std::max(0.0, sq));
}

struct StateScalars {
  double minkowski_sq = 0.0;
  double mixedness = 0.0;
  double indistinguishability = 0.0;
  double purity = 0.0;
  std::optional<double> concurrence;  // pure states only
};

inline StateScalars compute_scalars(const DwfVector& w, const HadamardTransform& t) {
  StateScalars out;
  out.minkowski_sq = minkowski_sq_from_dwf(w, t);
  out.mixedness = mixedness(w);
  out.indistinguishability = indistinguishability(w, t);
  out.purity = purity_from_dwf(w);
  const double residual = out.minkowski_sq + out.mixedness - out.indistinguishability;
  if (std::abs(residual) > 1e-10) {
    throw std::runtime_error("compute_scalars: S^2 + M - I = " + std::to_string(residual));
  }
  if (std::abs(out.purity - 1.0) <= 1e-6) {
    out.concurrence = concurrence_pure(w, t);
    if (std::abs(*out.concurrence * *out.concurrence - out.minkowski_sq) > 1e-8) {
      throw std::runtime_error("compute_scalars: concurrence^2 does not match the Minkowski norm");
    }
  }
  return out;
}

}  // namespace qdwf
