#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qdwf/quantops.hpp"

namespace qdwf {

/// Outcome distribution of a striation measurement: one probability per line,
/// indexed by intercept.
struct MeasurementReport {
  int striation_index = 0;
  std::vector<double> probabilities;      // Tr(rho Q(line))
  std::optional<std::int64_t> shots;      // nullopt = exact
  std::vector<std::int64_t> counts;       // sampled mode only
  std::vector<double> estimates;          // counts / shots
};

/// Exact line probabilities Tr(rho Q(lambda)) for one striation.
inline MeasurementReport measure_exact(const DensityMatrix& rho, const PhaseSpace& space,
                                       const NetAssignment& assignment, int striation_index) {
  if (striation_index < 0 || striation_index > static_cast<int>(space.dim())) {
    throw std::invalid_argument("measure_exact: striation index out of range");
  }
  if (rho.dim() != static_cast<Eigen::Index>(space.dim())) {
    throw std::invalid_argument("measure_exact: dimension mismatch");
  }
  MeasurementReport report;
  report.striation_index = striation_index;
  report.probabilities.reserve(space.dim());
  double total = 0.0;
  for (unsigned c = 0; c < space.dim(); ++c) {
    const CVector& v = assignment.vector(striation_index, FieldElement(c));
    const double prob = std::real(v.dot(rho.mat * v));
    report.probabilities.push_back(prob);
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw std::runtime_error("measure_exact: probabilities sum to " + std::to_string(total));
  }
  return report;
}

namespace measure_detail {

// Uniform double in [0,1) from explicit 64-bit draws; pinned so that sampled
// reports are reproducible for a given seed.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace measure_detail

/// Multinomial sampling of the striation measurement with a seedable
/// generator; reports counts and frequencies next to the exact probabilities.
inline MeasurementReport measure_sampled(const DensityMatrix& rho, const PhaseSpace& space,
                                         const NetAssignment& assignment, int striation_index,
                                         std::int64_t shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("measure_sampled: shots must be positive");
  MeasurementReport report = measure_exact(rho, space, assignment, striation_index);
  report.shots = shots;

  // Cumulative distribution over clamped probabilities.
  std::vector<double> cdf(report.probabilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    total += std::max(0.0, report.probabilities[i]);
    cdf[i] = total;
  }
  if (total <= 0.0) throw std::runtime_error("measure_sampled: degenerate probability vector");

  std::mt19937_64 rng(seed);
  report.counts.assign(cdf.size(), 0);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = measure_detail::uniform01(rng) * total;
    std::size_t idx = 0;
    while (idx + 1 < cdf.size() && u >= cdf[idx]) ++idx;
    ++report.counts[idx];
  }
  report.estimates.resize(cdf.size());
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    report.estimates[i] = static_cast<double>(report.counts[i]) / static_cast<double>(shots);
  }
  return report;
}

}  // namespace qdwf
