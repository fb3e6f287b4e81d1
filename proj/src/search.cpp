#include "hqcqp/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hqcqp {

namespace {

double checked(const ScalarObjective& f, double t) {
  const double v = f(t);
  if (std::isnan(v))
    throw SearchError("objective returned NaN at t = " + std::to_string(t), {}, v);
  return v;
}

}  // namespace

void SearchConfig::validate() const {
  if (!(interval_threshold > 0.0)) throw Error("interval_threshold must be positive");
  if (max_iterations <= 0) throw Error("max_iterations must be positive");
  if (!(scale_factor > 1.0)) throw Error("scale_factor must exceed 1");
  if (!(delta_fraction > 0.0 && delta_fraction < 0.5))
    throw Error("delta_fraction must lie in (0, 0.5)");
  if (outer_rounds_2d <= 0) throw Error("outer_rounds_2d must be positive");
  if (!(outer_tol_2d > 0.0)) throw Error("outer_tol_2d must be positive");
  if (!(large_interval > 0.0)) throw Error("large_interval must be positive");
  if (max_expansions < 0) throw Error("max_expansions must be non-negative");
  if (oracle_samples == 0) throw Error("oracle_samples must be positive");
  if (oracle_restarts <= 0) throw Error("oracle_restarts must be positive");
}

Interval initial_interval(const HermitianMatrix& m0, const SearchConfig& cfg,
                          const ScalarObjective& f) {
  return initial_interval(min_eigenvalue(m0), cfg, f);
}

Interval initial_interval(double lambda_min_m0, const SearchConfig& cfg, const ScalarObjective& f) {
  Interval iv;
  if (!(lambda_min_m0 < 0.0)) {
    iv.degenerate = true;
    return iv;
  }
  iv.lo = lambda_min_m0;
  // Keep the upper end at 0 and pull the lower end in while the maximizer
  // stays to its right.
  while (std::abs(iv.lo) > cfg.large_interval) {
    const double lo = iv.lo / cfg.scale_factor;
    const double d = cfg.delta_fraction * (iv.hi - lo);
    if (!(checked(f, lo) < checked(f, lo + d))) break;
    iv.lo = lo;
    iv.scaled = true;
  }
  return iv;
}

LineSearchResult dichotomous_max(const ScalarObjective& f, Interval interval,
                                 const SearchConfig& cfg) {
  if (!(interval.lo < interval.hi))
    throw SearchError("empty search interval", {}, -INFINITY);

  LineSearchResult res;
  double best = -INFINITY;
  auto eval = [&](double t) {
    const double v = checked(f, t);
    best = std::max(best, v);
    return v;
  };

  double lo = interval.lo;
  double hi = interval.hi;
  for (;;) {
    const double w = hi - lo;
    const double d = cfg.delta_fraction * w;
    const bool grow_down = eval(lo) > eval(lo + d);
    const bool grow_up = eval(hi) > eval(hi - d);
    if (!grow_down && !grow_up) break;
    if (res.expansions == cfg.max_expansions)
      throw SearchError("maximizer not bracketed after " + std::to_string(res.expansions) +
                            " expansions",
                        {{0, best}}, best);
    // A concave f cannot decrease inward at both ends; widen toward the side
    // that does.
    if (grow_down) lo = hi - cfg.scale_factor * w;
    if (grow_up) hi = lo + cfg.scale_factor * (hi - lo);
    ++res.expansions;
  }
  res.trace.push_back({0, best});

  int it = 0;
  while (hi - lo > cfg.interval_threshold) {
    if (it == cfg.max_iterations)
      throw SearchError("dichotomous search exceeded " + std::to_string(cfg.max_iterations) +
                            " iterations",
                        res.trace, best);
    ++it;
    const double mid = 0.5 * (lo + hi);
    const double d = cfg.delta_fraction * (hi - lo);
    const double left = eval(mid - d);
    const double right = eval(mid + d);
    if (left < right) {
      lo = mid - d;
    } else if (left > right) {
      hi = mid + d;
    } else {
      lo = mid - d;
      hi = mid + d;
    }
    res.trace.push_back({it, best});
  }

  res.iterations = it;
  res.bracket = Interval{lo, hi, interval.degenerate, interval.scaled};
  res.t_star = 0.5 * (lo + hi);
  res.value = checked(f, res.t_star);
  return res;
}

PlaneSearchResult alternating_max(const PlaneObjective& f, const Interval& interval,
                                  const SearchConfig& cfg, std::array<double, 2> init) {
  PlaneSearchResult res;
  res.t_star = init;
  res.value = f(init[0], init[1]);
  if (std::isnan(res.value)) throw SearchError("objective returned NaN at the start point", {}, NAN);
  res.trace.push_back({0, res.value});

  for (int round = 1; round <= cfg.outer_rounds_2d; ++round) {
    const double before = res.value;
    for (int axis = 0; axis < 2; ++axis) {
      const std::array<double, 2> fixed = res.t_star;
      ScalarObjective slice = [&](double s) {
        return axis == 0 ? f(s, fixed[1]) : f(fixed[0], s);
      };
      LineSearchResult line;
      try {
        line = dichotomous_max(slice, interval, cfg);
      } catch (const SearchError& e) {
        throw SearchError(std::string("alternating search, axis ") + std::to_string(axis) + ": " +
                              e.what(),
                          res.trace, res.value);
      }
      res.iterations += line.iterations;
      // Ties move the iterate: on a plateau of the slice the new point can
      // unlock progress along the other axis.
      if (line.value >= res.value - 1e-12 * std::max(1.0, std::abs(res.value))) {
        res.value = std::max(res.value, line.value);
        res.t_star[axis] = line.t_star;
      }
      // One trace entry per coordinate line search.
      res.trace.push_back({static_cast<int>(res.trace.size()), res.value});
    }
    res.rounds = round;
    if (res.value - before < cfg.outer_tol_2d) return res;
  }
  throw SearchError("alternating search did not settle in " +
                        std::to_string(cfg.outer_rounds_2d) + " rounds",
                    res.trace, res.value);
}

}  // namespace hqcqp
