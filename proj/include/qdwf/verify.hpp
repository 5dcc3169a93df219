#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qdwf/entangle.hpp"
#include "qdwf/measurement.hpp"
#include "qdwf/quantops.hpp"
#include "qdwf/random.hpp"
#include "qdwf/transform.hpp"

namespace qdwf {

enum class VerifyDepth { quick, full };

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  std::string detail;
};

struct VerificationReport {
  int n = 0;
  VerifyDepth depth = VerifyDepth::quick;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

namespace verify_detail {

struct Context {
  int n;
  VerifyDepth depth;
  std::uint64_t seed;
  PhaseSpace space;
  MubSystem mubs;
  NetAssignment assignment0;
  PhasePointOperators ops0;
  HadamardTransform h0;
  HadamardTransform t;

  explicit Context(int n_, VerifyDepth depth_, std::uint64_t seed_)
      : n(n_),
        depth(depth_),
        seed(seed_),
        space(PhaseSpace::standard(n_)),
        mubs(build_mubs(space)),
        assignment0(assign_net(space, mubs, QuantumNet::canonical(space))),
        ops0(phase_point_operators(space, assignment0)),
        h0(build_H(ops0)),
        t(build_T(ops0)) {}

  std::mt19937_64 rng(std::uint64_t salt) const { return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull + salt); }

  // Net indices exercised by per-net checks.
  std::vector<std::uint64_t> net_selection() const {
    std::vector<std::uint64_t> nets;
    if (n == 1) {
      for (std::uint64_t k = 0; k < 8; ++k) nets.push_back(k);
    } else if (n == 2) {
      if (depth == VerifyDepth::full) {
        for (std::uint64_t k = 0; k < 1024; ++k) nets.push_back(k);
      } else {
        for (std::uint64_t k = 0; k < 64; ++k) nets.push_back((k * 17 + 3) % 1024);
      }
    } else {
      nets.push_back(0);
    }
    return nets;
  }
};

inline CheckResult check_field_axioms(const Context& ctx) {
  const Field& f = ctx.space.field();
  const unsigned N = f.size();
  bool ok = true;
  for (unsigned a = 0; a < N && ok; ++a) {
    for (unsigned b = 0; b < N && ok; ++b) {
      const FieldElement ea(a), eb(b);
      if (f.mul(ea, eb) != f.mul(eb, ea)) ok = false;
      if (f.trace(Field::add(ea, eb)) != (f.trace(ea) ^ f.trace(eb))) ok = false;
      for (unsigned c = 0; c < N && ok; ++c) {
        const FieldElement ec(c);
        if (f.mul(f.mul(ea, eb), ec) != f.mul(ea, f.mul(eb, ec))) ok = false;
        if (f.mul(ea, Field::add(eb, ec)) != Field::add(f.mul(ea, eb), f.mul(ea, ec))) ok = false;
      }
    }
  }
  for (unsigned a = 1; a < N && ok; ++a) {
    if (f.mul(FieldElement(a), f.inv(FieldElement(a))) != FieldElement(1)) ok = false;
  }
  // The dual of the dual basis is the original basis.
  std::vector<FieldElement> dual(f.dual_basis().begin(), f.dual_basis().end());
  const auto dual2 = f.compute_dual(dual);
  for (int i = 0; i < f.degree() && ok; ++i) {
    if (dual2[static_cast<unsigned>(i)] != f.basis()[static_cast<unsigned>(i)]) ok = false;
  }
  return {"field_axioms", ok, ok ? 0.0 : 1.0, "exhaustive GF(2^n) axioms, trace linearity, dual-of-dual"};
}

inline CheckResult check_geometry(const Context& ctx) {
  const PhaseSpace& space = ctx.space;
  const unsigned N = space.dim();
  bool ok = true;
  // Each striation partitions the N^2 points.
  for (const auto& s : space.striations()) {
    std::set<int> covered;
    for (const auto& line : s.lines) {
      if (line.points.size() != N) ok = false;
      for (const auto& pt : line.points) covered.insert(space.point_index(pt));
    }
    if (covered.size() != N * N) ok = false;
  }
  // Every pair of distinct points lies on exactly one common line.
  for (unsigned i = 0; i < N * N && ok; ++i) {
    for (unsigned j = i + 1; j < N * N; ++j) {
      const PhasePoint a = space.point_at(static_cast<int>(i));
      const PhasePoint b = space.point_at(static_cast<int>(j));
      int common = 0;
      for (const auto& s : space.striations()) {
        for (const auto& line : s.lines) {
          if (line.contains(a) && line.contains(b)) ++common;
        }
      }
      if (common != 1) {
        ok = false;
        break;
      }
    }
  }
  // Invariant translations plus (0,0) form a subgroup of order N.
  for (unsigned s = 0; s <= N && ok; ++s) {
    auto inv = space.invariant_translations(static_cast<int>(s));
    if (inv.size() != N - 1) ok = false;
    std::set<std::pair<unsigned, unsigned>> group{{0, 0}};
    for (const auto& [a, b] : inv) group.insert({a.value(), b.value()});
    if (group.size() != N) ok = false;
    for (const auto& x : group) {
      for (const auto& y : group) {
        if (!group.count({x.first ^ y.first, x.second ^ y.second})) ok = false;
      }
    }
  }
  return {"geometry", ok, ok ? 0.0 : 1.0, "line incidence, striation partitions, translation subgroups"};
}

inline CheckResult check_net_roundtrip(const Context& ctx) {
  bool ok = true;
  const std::uint64_t count = net_count(ctx.n);
  const std::uint64_t step = (ctx.n <= 2) ? 1 : count / 1000 + 1;
  for (std::uint64_t k = 0; k < count; k += step) {
    if (net_index(ctx.space, net_from_index(ctx.space, k)) != k) ok = false;
  }
  return {"net_encoding_roundtrip", ok, ok ? 0.0 : 1.0,
          ctx.n <= 2 ? "exhaustive" : "sampled every " + std::to_string(step)};
}

inline CheckResult check_mub_unbiasedness(const Context& ctx) {
  const auto& bases = ctx.mubs.bases();
  const double unbiased = 1.0 / static_cast<double>(ctx.space.dim());
  double worst = 0.0;
  for (std::size_t b1 = 0; b1 < bases.size(); ++b1) {
    for (std::size_t i = 0; i < bases[b1].size(); ++i) {
      for (std::size_t j = 0; j < bases[b1].size(); ++j) {
        const double expect = (i == j) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(std::abs(bases[b1][i].dot(bases[b1][j])) - expect));
      }
      for (std::size_t b2 = 0; b2 < b1; ++b2) {
        for (const auto& u : bases[b2]) {
          worst = std::max(worst, std::abs(std::norm(bases[b1][i].dot(u)) - unbiased));
        }
      }
    }
  }
  return {"mub_unbiasedness", worst <= 1e-10, worst, "orthonormality and cross-basis overlaps"};
}

inline CheckResult check_phase_point_algebra(const Context& ctx) {
  const auto& ops = ctx.ops0;
  const auto N = static_cast<double>(ops.dim());
  const auto dim = static_cast<Eigen::Index>(ops.dim());
  double worst = 0.0;
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < ops.all().size(); ++a) {
    worst = std::max(worst, std::abs(ops.all()[a].trace() - 1.0));
    sum += ops.all()[a];
    for (std::size_t b = 0; b <= a; ++b) {
      const double expect = (a == b) ? N : 0.0;
      worst = std::max(worst, std::abs(trace_product(ops.all()[a], ops.all()[b]) - expect));
    }
  }
  worst = std::max(worst, max_abs_diff(sum, N * Matrix::Identity(dim, dim)));
  // Sum of A over a line equals N Q(line).
  for (const auto& s : ctx.space.striations()) {
    for (const auto& line : s.lines) {
      Matrix acc = Matrix::Zero(dim, dim);
      for (const auto& pt : line.points) acc += ops.at(pt);
      worst = std::max(worst, max_abs_diff(acc, N * ctx.assignment0.projector(s.index, line.c)));
    }
  }
  return {"phase_point_algebra", worst <= 1e-8, worst, "traces, orthogonality, completeness, line sums"};
}

inline CheckResult check_covariance(const Context& ctx) {
  const PhaseSpace& space = ctx.space;
  const Field& field = space.field();
  const unsigned N = space.dim();
  double worst = 0.0;
  auto rng = ctx.rng(11);
  const bool exhaustive = ctx.n <= 2;
  const int samples = exhaustive ? 0 : 64;
  auto check_one = [&](PhasePoint pt, FieldElement alpha, FieldElement beta) {
    const Matrix u = translation_unitary(field, alpha, beta);
    const Matrix lhs = u * ctx.ops0.at(pt) * u.adjoint();
    worst = std::max(worst, max_abs_diff(lhs, ctx.ops0.at(PhaseSpace::translate(pt, alpha, beta))));
  };
  if (exhaustive) {
    for (unsigned i = 0; i < N * N; ++i) {
      for (unsigned a = 0; a < N; ++a) {
        for (unsigned b = 0; b < N; ++b) {
          check_one(space.point_at(static_cast<int>(i)), FieldElement(a), FieldElement(b));
        }
      }
    }
  } else {
    std::uniform_int_distribution<unsigned> dist(0, N - 1);
    for (int k = 0; k < samples; ++k) {
      check_one({FieldElement(dist(rng)), FieldElement(dist(rng))}, FieldElement(dist(rng)),
                FieldElement(dist(rng)));
    }
  }
  return {"translation_covariance", worst <= 1e-8, worst,
          exhaustive ? "exhaustive points x translations" : "64 sampled pairs"};
}

inline CheckResult check_fixtures_n1(const Context& ctx) {
  // DWFs of I, sx, sy, sz under the canonical net, laid out (W00,W01,W10,W11),
  // and the matching 4x4 Hadamard sign structure.
  static const double table[4][4] = {
      {0.5, 0.5, 0.5, 0.5}, {0.5, -0.5, 0.5, -0.5}, {0.5, -0.5, -0.5, 0.5}, {0.5, 0.5, -0.5, -0.5}};
  static const int inverse_signs[4][4] = {
      {1, 1, 1, 1}, {1, -1, -1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const DwfVector w = dwf_of_operator(pauli(i), ctx.ops0);
    for (Eigen::Index a = 0; a < 4; ++a) worst = std::max(worst, std::abs(w.values(a) - table[i][a]));
  }
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      worst = std::max(worst, std::abs(ctx.h0.signs()(r, c) - 2.0 * table[r][c]));
      worst = std::max(
          worst, static_cast<double>(std::abs(ctx.h0.signs().transpose()(r, c) - inverse_signs[r][c])));
    }
  }
  return {"single_qubit_fixtures", worst <= 1e-12, worst, "Pauli DWF table and canonical 4x4 transform"};
}

inline CheckResult check_stokes_route_equivalence(const Context& ctx) {
  auto rng = ctx.rng(23);
  std::vector<DensityMatrix> states;
  for (int k = 0; k < 20; ++k) states.push_back(random_density(ctx.n, rng));
  double worst = 0.0;
  const auto nets = ctx.net_selection();
  for (const auto k : nets) {
    const auto ops = build_phase_point_operators(ctx.space, ctx.mubs, net_from_index(ctx.space, k));
    const auto h = build_H(ops);
    for (const auto& rho : states) {
      const StokesVector via_dwf = stokes_from_dwf(dwf_from_density(rho, ops), h);
      const StokesVector direct = stokes_from_density(rho);
      worst = std::max(worst, (via_dwf.values - direct.values).cwiseAbs().maxCoeff());
    }
  }
  return {"stokes_route_equivalence", worst <= 1e-10, worst,
          std::to_string(nets.size()) + " nets x 20 random states"};
}

inline CheckResult check_spin_flip_T(const Context& ctx) {
  bool ok = true;
  const auto side = ctx.t.signs().rows();
  // T^2 = I, exactly at the sign level.
  if (ctx.t.signs() * ctx.t.signs() !=
      Eigen::MatrixXi::Identity(side, side) * static_cast<int>(ctx.space.dim() * ctx.space.dim())) {
    ok = false;
  }
  for (const auto k : ctx.net_selection()) {
    const auto ops = build_phase_point_operators(ctx.space, ctx.mubs, net_from_index(ctx.space, k));
    if (build_T(ops).signs() != ctx.t.signs()) ok = false;
  }
  return {"spin_flip_net_independence", ok, ok ? 0.0 : 1.0,
          "T identical across " + std::to_string(ctx.net_selection().size()) + " nets, T^2 = I"};
}

inline CheckResult check_h_tilde_closure(const Context& ctx) {
  // Exhaustive family closure H~ = H T in S_H, full depth and n <= 2 only.
  std::map<std::vector<int>, std::uint64_t> family;
  const std::uint64_t count = net_count(ctx.n);
  std::vector<HadamardTransform> hs;
  hs.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto ops = build_phase_point_operators(ctx.space, ctx.mubs, net_from_index(ctx.space, k));
    hs.push_back(build_H(ops));
    const auto& signs = hs.back().signs();
    family[std::vector<int>(signs.data(), signs.data() + signs.size())] = k;
  }
  bool ok = family.size() == count;  // all H(k) distinct
  std::set<std::uint64_t> images;
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto ht = build_H_tilde(hs[k], ctx.t);
    const auto& signs = ht.signs();
    auto it = family.find(std::vector<int>(signs.data(), signs.data() + signs.size()));
    if (it == family.end()) {
      ok = false;
      break;
    }
    images.insert(it->second);
  }
  ok = ok && images.size() == count;  // k -> k' is a bijection
  // T itself stays outside the family.
  const auto& tsigns = ctx.t.signs();
  if (family.count(std::vector<int>(tsigns.data(), tsigns.data() + tsigns.size()))) ok = false;
  return {"h_tilde_closure", ok, ok ? 0.0 : 1.0,
          "H~ in S_H, bijective over " + std::to_string(count) + " nets, T outside S_H"};
}

inline CheckResult check_round_trips(const Context& ctx) {
  auto rng = ctx.rng(37);
  double worst = 0.0;
  auto nets = ctx.net_selection();
  if (nets.size() > 4) nets.resize(4);
  for (const auto k : nets) {
    const auto ops = build_phase_point_operators(ctx.space, ctx.mubs, net_from_index(ctx.space, k));
    const auto h = build_H(ops);
    for (int i = 0; i < 10; ++i) {
      const DensityMatrix rho = random_density(ctx.n, rng);
      const DwfVector w = dwf_from_density(rho, ops);
      worst = std::max(worst, max_abs_diff(density_from_dwf(w, ops).mat, rho.mat));
      const StokesVector s = stokes_from_dwf(w, h);
      worst = std::max(worst, (dwf_from_stokes(s, h).values - w.values).cwiseAbs().maxCoeff());
      const StokesVector s2 = stokes_from_density(rho);
      worst = std::max(worst, (stokes_from_dwf(dwf_from_stokes(s2, h), h).values - s2.values)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return {"round_trips", worst <= 1e-10, worst, "density<->dwf<->stokes on random states"};
}

inline CheckResult check_line_sums(const Context& ctx) {
  auto rng = ctx.rng(41);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho = random_density(ctx.n, rng);
    const DwfVector w = dwf_from_density(rho, ctx.ops0);
    for (const auto& striation : ctx.space.striations()) {
      const auto report = measure_exact(rho, ctx.space, ctx.assignment0, striation.index);
      for (const auto& line : striation.lines) {
        double sum = 0.0;
        for (const auto& pt : line.points) sum += w.values(ctx.space.point_index(pt));
        worst = std::max(worst, std::abs(sum - report.probabilities[line.c.value()]));
      }
    }
  }
  return {"line_sum_rule", worst <= 1e-10, worst, "sum_{a in line} W_a = Tr(rho Q(line))"};
}

inline CheckResult check_entangle_identities(const Context& ctx) {
  auto rng = ctx.rng(53);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(ctx.n, rng);
    const DwfVector w = dwf_from_density(rho, ctx.ops0);
    const double via_dwf = minkowski_sq_from_dwf(w, ctx.t);
    const double via_stokes = minkowski_sq_from_stokes(stokes_from_density(rho));
    const double oracle = trace_product(rho.mat, spin_flip_operator(rho.mat)).real();
    worst = std::max(worst, std::abs(via_dwf - via_stokes));
    worst = std::max(worst, std::abs(via_dwf - oracle));
    worst = std::max(worst,
                     std::abs(via_dwf + mixedness(w) - indistinguishability(w, ctx.t)));
  }
  if (ctx.n == 2) {
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho_bell(bell * bell.adjoint());
    const DwfVector w_bell = dwf_from_density(rho_bell, ctx.ops0);
    worst = std::max(worst, std::abs(concurrence_pure(w_bell, ctx.t) - 1.0));
    CVector hh = CVector::Zero(4);
    hh(0) = 1.0;
    const DensityMatrix rho_hh(hh * hh.adjoint());
    worst = std::max(worst, std::abs(concurrence_pure(dwf_from_density(rho_hh, ctx.ops0), ctx.t)));
    // Net independence of the concurrence value.
    auto nets = ctx.net_selection();
    if (nets.size() > 8) nets.resize(8);
    for (const auto k : nets) {
      const auto ops = build_phase_point_operators(ctx.space, ctx.mubs, net_from_index(ctx.space, k));
      worst = std::max(worst,
                       std::abs(concurrence_pure(dwf_from_density(rho_bell, ops), build_T(ops)) - 1.0));
    }
  }
  return {"entanglement_identities", worst <= 1e-10, worst,
          "Minkowski route equivalence, S^2 + M = I, concurrence fixtures"};
}

}  // namespace verify_detail

/// Runs the cross-module invariant suite. quick: n <= 3, sampled nets.
/// full: n <= 2, exhaustive nets including the Hadamard-family closure.
inline VerificationReport run_verification(int n, VerifyDepth depth, std::uint64_t seed = 0) {
  if (depth == VerifyDepth::quick && (n < 1 || n > 3)) {
    throw std::invalid_argument("run_verification: quick depth supports n in [1,3]");
  }
  if (depth == VerifyDepth::full && (n < 1 || n > 2)) {
    throw std::invalid_argument("run_verification: full depth supports n in [1,2]");
  }
  verify_detail::Context ctx(n, depth, seed);
  VerificationReport report;
  report.n = n;
  report.depth = depth;
  report.checks.push_back(verify_detail::check_field_axioms(ctx));
  report.checks.push_back(verify_detail::check_geometry(ctx));
  report.checks.push_back(verify_detail::check_net_roundtrip(ctx));
  report.checks.push_back(verify_detail::check_mub_unbiasedness(ctx));
  report.checks.push_back(verify_detail::check_phase_point_algebra(ctx));
  report.checks.push_back(verify_detail::check_covariance(ctx));
  if (n == 1) report.checks.push_back(verify_detail::check_fixtures_n1(ctx));
  report.checks.push_back(verify_detail::check_stokes_route_equivalence(ctx));
  report.checks.push_back(verify_detail::check_spin_flip_T(ctx));
  if (depth == VerifyDepth::full) report.checks.push_back(verify_detail::check_h_tilde_closure(ctx));
  report.checks.push_back(verify_detail::check_round_trips(ctx));
  report.checks.push_back(verify_detail::check_line_sums(ctx));
  report.checks.push_back(verify_detail::check_entangle_identities(ctx));
  return report;
}

}  // namespace qdwf
