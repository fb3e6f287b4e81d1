// Ground truth that does not go through the eigen machinery: Monte-Carlo
// sampling of the unit sphere followed by derivative-free coordinate descent,
// and joint-numerical-range sampling for geometry checks.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hqcqp/hermitian.hpp"
#include "hqcqp/search.hpp"

namespace hqcqp {

/// Normalized vectors of independent standard complex Gaussian entries;
/// deterministic in seed.
std::vector<CVector> sample_unit_sphere(int n, std::size_t count, std::uint64_t seed);

struct OracleEstimate {
  /// max_i c_i(u_hat), recomputed exactly; an upper bound on the true c*.
  double c_hat = 0.0;
  CVector u_hat;
  std::size_t samples_used = 0;
  /// Accepted coordinate moves across all restarts.
  int refine_steps = 0;
};

/// Minimizes max_i u^H C_i u over unit u: cfg.oracle_samples sphere samples,
/// then coordinate descent from the cfg.oracle_restarts best samples.
OracleEstimate oracle_cstar(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg);

/// Coordinate descent on max_i u^H C_i u from start: perturbs the real and
/// imaginary part of one entry at a time, renormalizes, keeps improvements,
/// and halves the step from 0.5 down to 1e-6.
OracleEstimate refine_on_sphere(const std::vector<HermitianMatrix>& cs, const CVector& start);

enum class RangeTag { Sample, Leftmost, Bottommost };

const char* to_string(RangeTag tag);

struct RangePoint {
  /// (c_1(u), ..., c_m(u)); entries past m are zero.
  std::array<double, 3> c{0.0, 0.0, 0.0};
  RangeTag tag = RangeTag::Sample;
};

struct RangeSample {
  int m = 0;
  std::vector<RangePoint> points;
};

/// Sampled points of the joint numerical range of 2 or 3 matrices. For two
/// matrices the left-most (lambda_min(C1), c2(x1)) and bottom-most
/// (c1(x2), lambda_min(C2)) points are appended with their tags.
RangeSample sample_numerical_range(const std::vector<HermitianMatrix>& cs, std::size_t count,
                                   std::uint64_t seed);

/// CSV with header `c1,c2[,c3],tag`.
void write_range_csv(std::ostream& os, const RangeSample& sample);

}  // namespace hqcqp
