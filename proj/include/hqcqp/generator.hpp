// Random instances with a planted feasible direction, sized like the relay
// experiments (N = M^2).
#pragma once

#include <cstdint>
#include <random>

#include "hqcqp/hermitian.hpp"
#include "hqcqp/problem.hpp"

namespace hqcqp {

struct GeneratorSpec {
  int dim = 9;
  int num_constraints = 2;
  double margin = 0.5;
  std::uint64_t seed = 0x5EED;

  void validate() const;
};

/// (G + G^H) / 2 with independent complex Gaussian entries (unit-variance real
/// and imaginary parts).
HermitianMatrix random_hermitian(int n, std::uint64_t seed);
HermitianMatrix random_hermitian(int n, std::mt19937_64& rng);

struct GeneratedInstance {
  HqcqpProblem problem;
  /// Unit u0 with u0^H P_i u0 = -margin for every constraint.
  CVector planted;
};

/// T = G G^H + I; each P_i = H_i - (u0^H H_i u0 + margin) u0 u0^H, redrawn
/// (at most 10 times) until indefinite. Throws GenerationError.
GeneratedInstance random_feasible_instance(const GeneratorSpec& spec);
HqcqpProblem random_feasible_problem(const GeneratorSpec& spec);

/// Deterministic per-instance seed derived from a batch seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

}  // namespace hqcqp
