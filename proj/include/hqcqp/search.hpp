// Concave scalar maximization: dichotomous line search with interval
// initialization from a pencil's base matrix, and the alternating driver for
// two variables.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hqcqp/errors.hpp"
#include "hqcqp/hermitian.hpp"

namespace hqcqp {

struct SearchConfig {
  double interval_threshold = 1e-4;
  int max_iterations = 200;
  double scale_factor = 2.0;
  /// Dichotomous probe offset as a fraction of the current interval width.
  double delta_fraction = 0.01;
  int outer_rounds_2d = 50;
  double outer_tol_2d = 1e-6;
  /// |lambda_min(M0)| above which the initial interval is narrowed.
  double large_interval = 1e3;
  int max_expansions = 10;

  std::size_t oracle_samples = 100000;
  int oracle_restarts = 10;
  std::uint64_t oracle_seed = 0x5EED;

  /// Throws Error if any field is out of range.
  void validate() const;
};

struct Interval {
  double lo = -1.0;
  double hi = 0.0;
  /// lambda_min(M0) >= 0, so the default [-1, 0] was substituted.
  bool degenerate = false;
  /// Narrowed because |lambda_min(M0)| exceeded SearchConfig::large_interval.
  bool scaled = false;

  double width() const noexcept { return hi - lo; }
};

struct LineSearchResult {
  double t_star = 0.0;
  double value = 0.0;
  int iterations = 0;
  int expansions = 0;
  /// Final bracket; width <= interval_threshold on success.
  Interval bracket;
  /// Best objective value seen after each iteration (iteration 0 covers the
  /// bracketing probes).
  std::vector<TracePoint> trace;
};

struct PlaneSearchResult {
  std::array<double, 2> t_star{0.0, 0.0};
  double value = 0.0;
  /// Dichotomous iterations summed over all line searches.
  int iterations = 0;
  int rounds = 0;
  /// Entry 0 is f(init); entry k is the incumbent after the k-th line search.
  std::vector<TracePoint> trace;
};

using ScalarObjective = std::function<double(double)>;
using PlaneObjective = std::function<double(double, double)>;

/// [lambda_min(m0), 0], narrowed by cfg.scale_factor while |lo| is large and
/// f still increases at the candidate lower end.
Interval initial_interval(const HermitianMatrix& m0, const SearchConfig& cfg,
                          const ScalarObjective& f);
/// Same rule from a precomputed lambda_min(m0).
Interval initial_interval(double lambda_min_m0, const SearchConfig& cfg, const ScalarObjective& f);

/// Dichotomous maximization of a concave f. The bracket is first widened by
/// cfg.scale_factor (at most cfg.max_expansions times) while f decreases
/// inward from an endpoint. Throws SearchError on NaN, on an unbounded
/// maximizer, or when cfg.max_iterations is exceeded.
LineSearchResult dichotomous_max(const ScalarObjective& f, Interval interval,
                                 const SearchConfig& cfg);

/// Coordinate-wise dichotomous maximization of a jointly concave f starting at
/// init; each coordinate is searched over `interval`. Throws SearchError when
/// cfg.outer_rounds_2d rounds pass without the improvement dropping below
/// cfg.outer_tol_2d.
PlaneSearchResult alternating_max(const PlaneObjective& f, const Interval& interval,
                                  const SearchConfig& cfg,
                                  std::array<double, 2> init = {0.0, 0.0});

}  // namespace hqcqp
