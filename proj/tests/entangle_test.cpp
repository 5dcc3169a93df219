#include "qdwf/entangle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace qdwf;
using namespace qdwf::testing;

namespace {

// Independent density-route oracle for Tr(rho rho~), built from scratch.
double oracle_tr_rho_rhotilde(const Matrix& rho) {
  Matrix y(2, 2);
  y << Complex(0), Complex(0, -1), Complex(0, 1), Complex(0);
  Matrix yn = y;
  while (yn.rows() < rho.rows()) {
    Matrix next(yn.rows() * 2, yn.cols() * 2);
    next.setZero();
    next.block(0, yn.cols(), yn.rows(), yn.cols()) = Complex(0, -1) * yn;
    next.block(yn.rows(), 0, yn.rows(), yn.cols()) = Complex(0, 1) * yn;
    yn = next;
  }
  const Matrix flipped = yn * rho.conjugate() * yn;
  return (rho * flipped).trace().real();
}

struct Ctx {
  PhaseSpace space;
  MubSystem mubs;
  PhasePointOperators ops;
  HadamardTransform t;

  explicit Ctx(int n, std::uint64_t net = 0)
      : space(PhaseSpace::standard(n)),
        mubs(build_mubs(space)),
        ops(build_phase_point_operators(space, mubs, net_from_index(space, net))),
        t(build_T(ops)) {}
};

}  // namespace

TEST(MinkowskiTest, Fixtures) {
  const Ctx s1(1);
  const StokesVector s_h = stokes_from_density(pure_density(ket_h()));
  EXPECT_NEAR(minkowski_sq_from_stokes(s_h), 0.0, 1e-12);
  EXPECT_NEAR(minkowski_sq_from_dwf(dwf_from_density(pure_density(ket_h()), s1.ops), s1.t), 0.0, 1e-12);

  const Ctx s2(2);
  const DensityMatrix bell = bell_phi_plus();
  EXPECT_NEAR(minkowski_sq_from_stokes(stokes_from_density(bell)), 1.0, 1e-12);
  EXPECT_NEAR(minkowski_sq_from_dwf(dwf_from_density(bell, s2.ops), s2.t), 1.0, 1e-12);

  for (int n = 1; n <= 3; ++n) {
    const Ctx s(n);
    const auto dim = static_cast<Eigen::Index>(s.space.dim());
    const DensityMatrix mixed(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    const double expect = 1.0 / static_cast<double>(dim);
    EXPECT_NEAR(minkowski_sq_from_stokes(stokes_from_density(mixed)), expect, 1e-12);
    EXPECT_NEAR(minkowski_sq_from_dwf(dwf_from_density(mixed, s.ops), s.t), expect, 1e-12);
  }
}

TEST(MinkowskiTest, SingleQubitPureStatesHaveZeroNorm) {
  std::mt19937_64 rng(41);
  const Ctx s(1);
  for (int k = 0; k < 25; ++k) {
    const DensityMatrix rho = random_pure_density(1, rng);
    EXPECT_NEAR(minkowski_sq_from_dwf(dwf_from_density(rho, s.ops), s.t), 0.0, 1e-12);
  }
}

TEST(MinkowskiTest, ThreeRoutesAgreeOnRandomMixedStates) {
  std::mt19937_64 rng(4242);
  for (int n = 1; n <= 3; ++n) {
    const Ctx s(n);
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix rho = random_density(n, rng);
      const DwfVector w = dwf_from_density(rho, s.ops);
      const double via_dwf = minkowski_sq_from_dwf(w, s.t);
      const double via_stokes = minkowski_sq_from_stokes(stokes_from_density(rho));
      const double oracle = oracle_tr_rho_rhotilde(rho.mat);
      EXPECT_NEAR(via_dwf, via_stokes, 1e-10);
      EXPECT_NEAR(via_dwf, oracle, 1e-10);
    }
  }
}

TEST(ConcurrenceTest, BellAndProductFixtures) {
  const Ctx s(2);
  EXPECT_NEAR(concurrence_pure(dwf_from_density(bell_phi_plus(), s.ops), s.t), 1.0, 1e-12);
  CVector hh = CVector::Zero(4);
  hh(0) = 1.0;
  EXPECT_NEAR(concurrence_pure(dwf_from_density(pure_density(hh), s.ops), s.t), 0.0, 1e-12);
}

TEST(ConcurrenceTest, ThetaSweepMatchesSin2Theta) {
  const Ctx s(2);
  for (int step = 0; step <= 32; ++step) {
    const double theta = step * M_PI / 32.0;
    CVector psi = CVector::Zero(4);
    psi(0) = std::cos(theta);
    psi(3) = std::sin(theta);
    const DensityMatrix rho = pure_density(psi);
    const double c = concurrence_pure(dwf_from_density(rho, s.ops), s.t);
    EXPECT_NEAR(c, std::abs(std::sin(2.0 * theta)), 1e-8) << "theta = " << theta;
    EXPECT_NEAR(c, std::sqrt(std::max(0.0, oracle_tr_rho_rhotilde(rho.mat))), 1e-8);
  }
}

TEST(ConcurrenceTest, LocalUnitaryInvariance) {
  std::mt19937_64 rng(515);
  const Ctx s(2);
  const CVector psi = random_pure_state(2, rng);
  const double reference = concurrence_pure(dwf_from_density(pure_density(psi), s.ops), s.t);
  for (int k = 0; k < 10; ++k) {
    const Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const CVector rotated = u * psi;
    const double c = concurrence_pure(dwf_from_density(pure_density(rotated), s.ops), s.t);
    EXPECT_NEAR(c, reference, 1e-8);
  }
}

TEST(ConcurrenceTest, NetIndependent) {
  std::mt19937_64 rng(616);
  const PhaseSpace space = PhaseSpace::standard(2);
  const MubSystem mubs = build_mubs(space);
  const DensityMatrix rho = random_pure_density(2, rng);
  double reference = -1.0;
  for (std::uint64_t k : {0ull, 1ull, 33ull, 257ull, 700ull, 1023ull}) {
    const auto ops = build_phase_point_operators(space, mubs, net_from_index(space, k));
    const double c = concurrence_pure(dwf_from_density(rho, ops), build_T(ops));
    if (reference < 0) {
      reference = c;
    } else {
      EXPECT_NEAR(c, reference, 1e-10);
    }
  }

  // Single qubits carry no n-concurrence under any of the 8 nets. The
  // quadratic form vanishes to machine precision; its square root only to
  // sqrt(eps).
  const PhaseSpace space1 = PhaseSpace::standard(1);
  const MubSystem mubs1 = build_mubs(space1);
  const DensityMatrix pure1 = random_pure_density(1, rng);
  for (const auto& net : enumerate_nets(space1)) {
    const auto ops = build_phase_point_operators(space1, mubs1, net);
    const HadamardTransform t = build_T(ops);
    const DwfVector w = dwf_from_density(pure1, ops);
    EXPECT_NEAR(minkowski_sq_from_dwf(w, t), 0.0, 1e-12);
    EXPECT_NEAR(concurrence_pure(w, t), 0.0, 1e-7);
  }
}

TEST(ConcurrenceTest, BoundedOnRandomPureStates) {
  std::mt19937_64 rng(717);
  const Ctx s(2);
  for (int k = 0; k < 50; ++k) {
    const double c = concurrence_pure(dwf_from_density(random_pure_density(2, rng), s.ops), s.t);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
  }
}

TEST(ConcurrenceTest, RejectsMixedStates) {
  const Ctx s(2);
  const DensityMatrix mixed(Matrix::Identity(4, 4) / 4.0);
  EXPECT_THROW(concurrence_pure(dwf_from_density(mixed, s.ops), s.t), std::invalid_argument);
}

TEST(ConcurrenceTest, NegativeRoundOffClampAndError) {
  // |HH><HH| + delta (sz (x) I - I (x) sz) keeps trace 1 and purity
  // 1 + 8 delta^2 while driving N W^T T W to exactly -8 delta^2: below the
  // 1e-12 clamp for delta = 1e-7, beyond it for delta = 1e-4.
  const Ctx s(2);
  CVector hh = CVector::Zero(4);
  hh(0) = 1.0;
  const Matrix probe = kron(pauli(3), pauli(0)) - kron(pauli(0), pauli(3));
  for (const double delta : {1e-7, 1e-4}) {
    const Matrix op = hh * hh.adjoint() + delta * probe;
    const DwfVector w = dwf_of_operator(op, s.ops);
    const double sq = minkowski_sq_from_dwf(w, s.t);
    EXPECT_NEAR(sq, -8.0 * delta * delta, 1e-10);
    if (delta == 1e-7) {
      EXPECT_EQ(concurrence_pure(w, s.t), 0.0);
    } else {
      EXPECT_THROW(concurrence_pure(w, s.t), std::runtime_error);
    }
  }
}

TEST(MixednessTest, Fixtures) {
  const Ctx s1(1);
  EXPECT_NEAR(mixedness(dwf_from_density(pure_density(ket_h()), s1.ops)), 0.0, 1e-12);
  const DensityMatrix mixed(Matrix::Identity(2, 2) / 2.0);
  EXPECT_NEAR(mixedness(dwf_from_density(mixed, s1.ops)), 0.5, 1e-12);

  // rho = 3/4 |H><H| + 1/4 |V><V|: Tr(rho^2) = 10/16, so M = 3/8.
  const Matrix rho_mix = 0.75 * pure_density(ket_h()).mat + 0.25 * pure_density(ket_v()).mat;
  EXPECT_NEAR(mixedness(dwf_from_density(DensityMatrix(rho_mix), s1.ops)), 3.0 / 8.0, 1e-12);

  for (int n = 2; n <= 3; ++n) {
    const Ctx s(n);
    const auto dim = static_cast<Eigen::Index>(s.space.dim());
    const DensityMatrix mm(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    EXPECT_NEAR(mixedness(dwf_from_density(mm, s.ops)), 1.0 - 1.0 / static_cast<double>(dim), 1e-12);
  }
}

TEST(MixednessTest, MatchesPurityOracleOnRandomStates) {
  std::mt19937_64 rng(818);
  for (int n = 1; n <= 3; ++n) {
    const Ctx s(n);
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = random_density(n, rng);
      const double oracle = 1.0 - (rho.mat * rho.mat).trace().real();
      EXPECT_NEAR(mixedness(dwf_from_density(rho, s.ops)), oracle, 1e-10);
    }
  }
}

TEST(IndistinguishabilityTest, Fixtures) {
  const Ctx s2(2);
  EXPECT_NEAR(indistinguishability(dwf_from_density(bell_phi_plus(), s2.ops), s2.t), 1.0, 1e-12);
  const Ctx s1(1);
  EXPECT_NEAR(indistinguishability(dwf_from_density(pure_density(ket_h()), s1.ops), s1.t), 0.0, 1e-12);
}

TEST(IndistinguishabilityTest, IdentityResidualOnRandomMixedStates) {
  std::mt19937_64 rng(919);
  for (int n = 1; n <= 3; ++n) {
    const Ctx s(n);
    for (int k = 0; k < 100; ++k) {
      const DwfVector w = dwf_from_density(random_density(n, rng), s.ops);
      const double residual =
          minkowski_sq_from_dwf(w, s.t) + mixedness(w) - indistinguishability(w, s.t);
      EXPECT_NEAR(residual, 0.0, 1e-10);
    }
  }
}

TEST(ScalarsTest, ReportBundle) {
  const Ctx s(2);
  const auto bell = compute_scalars(dwf_from_density(bell_phi_plus(), s.ops), s.t);
  ASSERT_TRUE(bell.concurrence.has_value());
  EXPECT_NEAR(*bell.concurrence, 1.0, 1e-12);
  EXPECT_NEAR(bell.mixedness, 0.0, 1e-12);
  EXPECT_NEAR(bell.indistinguishability, 1.0, 1e-12);

  const DensityMatrix mm(Matrix::Identity(4, 4) / 4.0);
  const auto mixed = compute_scalars(dwf_from_density(mm, s.ops), s.t);
  EXPECT_FALSE(mixed.concurrence.has_value());
  EXPECT_NEAR(mixed.minkowski_sq, 0.25, 1e-12);
  EXPECT_NEAR(mixed.mixedness, 0.75, 1e-12);
  EXPECT_NEAR(mixed.indistinguishability, 1.0, 1e-12);
}

TEST(ScalarsTest, KindGuards) {
  const Ctx s(1);
  const HadamardTransform h = build_H(s.ops);
  const DwfVector w = dwf_from_density(pure_density(ket_h()), s.ops);
  EXPECT_THROW(minkowski_sq_from_dwf(w, h), std::invalid_argument);
  EXPECT_THROW(indistinguishability(w, h), std::invalid_argument);
  EXPECT_THROW(concurrence_pure(w, h), std::invalid_argument);
}
