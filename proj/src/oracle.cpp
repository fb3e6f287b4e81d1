#include "hqcqp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "hqcqp/problem.hpp"

namespace hqcqp {

namespace {

constexpr Eigen::Index kBlock = 2048;

// Columns of `block` become independent uniform points on the unit sphere.
void fill_sphere_block(std::mt19937_64& rng, CMatrix& block) {
  std::normal_distribution<double> nd;
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      const double re = nd(rng);
      const double im = nd(rng);
      block(r, c) = Complex(re, im);
    }
    block.col(c).normalize();
  }
}

// max_i c_i(u) for every column u of `block`.
Eigen::ArrayXd block_max_forms(const std::vector<HermitianMatrix>& cs, const CMatrix& block) {
  Eigen::ArrayXd best = Eigen::ArrayXd::Constant(block.cols(), -INFINITY);
  CMatrix w(block.rows(), block.cols());
  for (const auto& c : cs) {
    w.noalias() = c.matrix() * block;
    const Eigen::ArrayXd v = block.conjugate().cwiseProduct(w).colwise().sum().real().transpose();
    best = best.max(v);
  }
  return best;
}

// mu * log sum_k exp(c_k / mu) and its softmax weights.
double smooth_max(const std::vector<double>& c, double mu, std::vector<double>* weights) {
  const double top = *std::max_element(c.begin(), c.end());
  double z = 0.0;
  for (double v : c) z += std::exp((v - top) / mu);
  if (weights) {
    weights->resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) (*weights)[k] = std::exp((c[k] - top) / mu) / z;
  }
  return top + mu * std::log(z);
}

// Riemannian gradient descent with Armijo backtracking on the smoothed max,
// tightening mu by 10x per stage. A smooth surrogate does not stall on the
// kinks where several forms tie, which is exactly where the optimum sits.
CVector smoothed_descent(const std::vector<HermitianMatrix>& cs, CVector u, int& steps) {
  const std::size_t m = cs.size();
  if (m == 1) return u;
  double scale = 0.0;
  for (const auto& c : cs) scale = std::max(scale, c.matrix().cwiseAbs().maxCoeff());
  if (!(scale > 0.0)) return u;

  std::vector<CVector> w(m);
  std::vector<double> c(m), wt;
  auto eval = [&](const CVector& v, double mu) {
    for (std::size_t k = 0; k < m; ++k) {
      w[k] = cs[k].matrix() * v;
      c[k] = v.dot(w[k]).real();
    }
    return smooth_max(c, mu, &wt);
  };

  double alpha = 1.0 / scale;
  for (double mu = 1e-1 * scale; mu >= 1e-6 * scale; mu *= 0.1) {
    double f = eval(u, mu);
    for (int it = 0; it < 1000; ++it) {
      CVector g = CVector::Zero(u.size());
      for (std::size_t k = 0; k < m; ++k) g += (2.0 * wt[k]) * w[k];
      g -= u.dot(g).real() * u;
      const double g2 = g.squaredNorm();
      if (g2 <= 1e-28 * scale * scale) break;
      alpha *= 2.0;
      CVector trial;
      double ft = f;
      for (;;) {
        trial = (u - alpha * g).normalized();
        ft = eval(trial, mu);
        if (ft <= f - 1e-4 * alpha * g2 || alpha < 1e-16 / scale) break;
        alpha *= 0.5;
      }
      if (!(ft < f)) {
        eval(u, mu);
        break;
      }
      const double drop = f - ft;
      u = std::move(trial);
      f = ft;
      ++steps;
      if (drop <= 1e-3 * mu * 1e-6) break;
    }
  }
  return u;
}

}  // namespace

std::vector<CVector> sample_unit_sphere(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw DimensionError("sample_unit_sphere: dimension must be positive");
  std::mt19937_64 rng(seed);
  CMatrix one(n, 1);
  std::vector<CVector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    fill_sphere_block(rng, one);
    out.emplace_back(one.col(0));
  }
  return out;
}

OracleEstimate refine_on_sphere(const std::vector<HermitianMatrix>& cs, const CVector& start) {
  const auto n = start.size();
  const auto m = cs.size();
  CVector u = start.normalized();
  std::vector<CVector> w(m);
  std::vector<double> c(m);
  auto resync = [&]() {
    u.normalize();
    for (std::size_t k = 0; k < m; ++k) {
      w[k] = cs[k].matrix() * u;
      c[k] = u.dot(w[k]).real();
    }
  };
  resync();
  double g = *std::max_element(c.begin(), c.end());

  OracleEstimate est;
  const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<double> trial(m);
  for (double step = 0.5; step >= 1e-6; step *= 0.5) {
    for (int pass = 0; pass < 100; ++pass) {
      bool improved = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (const Complex& dir : dirs) {
          const Complex delta = step * dir;
          // |u + delta e_j|^2 and (u + delta e_j)^H C_k (u + delta e_j) in O(m).
          const double norm2 = 1.0 + 2.0 * (std::conj(delta) * u(j)).real() + std::norm(delta);
          double gt = -INFINITY;
          for (std::size_t k = 0; k < m; ++k) {
            const double num = c[k] + 2.0 * (std::conj(delta) * w[k](j)).real() +
                               std::norm(delta) * cs[k](j, j).real();
            trial[k] = num / norm2;
            gt = std::max(gt, trial[k]);
          }
          if (gt < g - 1e-15 * std::max(1.0, std::abs(g))) {
            const double inv = 1.0 / std::sqrt(norm2);
            u(j) += delta;
            u *= inv;
            for (std::size_t k = 0; k < m; ++k) {
              w[k] += delta * cs[k].matrix().col(j);
              w[k] *= inv;
              c[k] = trial[k];
            }
            g = gt;
            ++est.refine_steps;
            improved = true;
          }
        }
      }
      resync();
      g = *std::max_element(c.begin(), c.end());
      if (!improved) break;
    }
  }
  normalize_phase(u);
  est.u_hat = u;
  est.c_hat = max_form(cs, u);
  return est;
}

OracleEstimate oracle_cstar(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg) {
  if (cs.empty() || cs.size() > 3) throw DimensionError("oracle_cstar: expected 1 to 3 matrices");
  const int n = cs[0].dim();
  const auto restarts = static_cast<std::size_t>(cfg.oracle_restarts);

  // Best `restarts` samples so far, ascending by value.
  std::vector<std::pair<double, CVector>> pool;
  std::mt19937_64 rng(cfg.oracle_seed);
  CMatrix block;
  for (std::size_t done = 0; done < cfg.oracle_samples;) {
    const auto b = static_cast<Eigen::Index>(
        std::min<std::size_t>(kBlock, cfg.oracle_samples - done));
    block.resize(n, b);
    fill_sphere_block(rng, block);
    const Eigen::ArrayXd vals = block_max_forms(cs, block);
    for (Eigen::Index k = 0; k < b; ++k) {
      if (pool.size() == restarts && vals(k) >= pool.back().first) continue;
      auto pos = std::upper_bound(pool.begin(), pool.end(), vals(k),
                                  [](double v, const auto& e) { return v < e.first; });
      pool.insert(pos, {vals(k), block.col(k)});
      if (pool.size() > restarts) pool.pop_back();
    }
    done += static_cast<std::size_t>(b);
  }

  OracleEstimate best;
  best.c_hat = INFINITY;
  int steps = 0;
  for (const auto& [v, start] : pool) {
    int smooth_steps = 0;
    OracleEstimate e = refine_on_sphere(cs, smoothed_descent(cs, start, smooth_steps));
    steps += e.refine_steps + smooth_steps;
    if (e.c_hat < best.c_hat) best = std::move(e);
  }
  best.samples_used = cfg.oracle_samples;
  best.refine_steps = steps;
  return best;
}

const char* to_string(RangeTag tag) {
  switch (tag) {
    case RangeTag::Sample:
      return "sample";
    case RangeTag::Leftmost:
      return "leftmost";
    case RangeTag::Bottommost:
      return "bottommost";
  }
  return "sample";
}

RangeSample sample_numerical_range(const std::vector<HermitianMatrix>& cs, std::size_t count,
                                   std::uint64_t seed) {
  if (cs.size() < 2 || cs.size() > 3)
    throw DimensionError("range export requires m >= 2 (and at most 3)");
  const int n = cs[0].dim();
  for (const auto& c : cs)
    if (c.dim() != n) throw DimensionError("sample_numerical_range: dimension mismatch");

  RangeSample out;
  out.m = static_cast<int>(cs.size());
  out.points.reserve(count + 2);
  std::mt19937_64 rng(seed);
  CMatrix block;
  CMatrix w;
  for (std::size_t done = 0; done < count;) {
    const auto b = static_cast<Eigen::Index>(std::min<std::size_t>(kBlock, count - done));
    block.resize(n, b);
    fill_sphere_block(rng, block);
    std::vector<Eigen::ArrayXd> vals;
    for (const auto& c : cs) {
      w.noalias() = c.matrix() * block;
      vals.push_back(block.conjugate().cwiseProduct(w).colwise().sum().real().transpose());
    }
    for (Eigen::Index k = 0; k < b; ++k) {
      RangePoint p;
      for (std::size_t i = 0; i < cs.size(); ++i) p.c[i] = vals[i](k);
      out.points.push_back(p);
    }
    done += static_cast<std::size_t>(b);
  }

  if (out.m == 2) {
    const CVector x1 = lowest_in_min_eigenspace(cs[0], cs[1], 1e-9 * (1.0 + cs[0].frobenius_norm()));
    const CVector x2 = lowest_in_min_eigenspace(cs[1], cs[0], 1e-9 * (1.0 + cs[1].frobenius_norm()));
    out.points.push_back(
        {{min_eigenvalue(cs[0]), quadratic_form(cs[1], x1), 0.0}, RangeTag::Leftmost});
    out.points.push_back(
        {{quadratic_form(cs[0], x2), min_eigenvalue(cs[1]), 0.0}, RangeTag::Bottommost});
  }
  return out;
}

void write_range_csv(std::ostream& os, const RangeSample& sample) {
  os << (sample.m == 3 ? "c1,c2,c3,tag\n" : "c1,c2,tag\n");
  const auto old = os.precision(17);
  for (const RangePoint& p : sample.points) {
    for (int i = 0; i < sample.m; ++i) os << p.c[i] << ',';
    os << to_string(p.tag) << '\n';
  }
  os.precision(old);
}

}  // namespace hqcqp
