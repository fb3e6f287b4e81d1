#include "hqcqp/generator.hpp"

#include <string>

namespace hqcqp {

namespace {

CMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void GeneratorSpec::validate() const {
  if (dim < 2) throw Error("generator: dim must be at least 2");
  if (num_constraints < 1 || num_constraints > 3)
    throw Error("generator: constraints must be 1, 2 or 3");
  if (num_constraints == 3 && dim < 3)
    throw Error("generator: three constraints require dim >= 3");
  if (!(margin > 0.0)) throw Error("generator: margin must be positive");
}

HermitianMatrix random_hermitian(int n, std::mt19937_64& rng) {
  if (n < 1) throw DimensionError("random_hermitian: n must be positive");
  const CMatrix g = gaussian_matrix(n, n, rng);
  return HermitianMatrix::from_trusted(0.5 * (g + g.adjoint()));
}

HermitianMatrix random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_hermitian(n, rng);
}

GeneratedInstance random_feasible_instance(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.dim;
  std::mt19937_64 rng(spec.seed);

  const CMatrix g = gaussian_matrix(n, n, rng);
  HermitianMatrix t = HermitianMatrix::from_trusted(g * g.adjoint() + CMatrix::Identity(n, n));

  CVector u0 = gaussian_matrix(n, 1, rng).col(0);
  u0.normalize();
  const CMatrix outer = u0 * u0.adjoint();

  std::vector<HermitianMatrix> ps;
  for (int i = 0; i < spec.num_constraints; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
      const HermitianMatrix h = random_hermitian(n, rng);
      const double shift = quadratic_form(h, u0) + spec.margin;
      HermitianMatrix p = HermitianMatrix::from_trusted(h.matrix() - shift * outer);
      const RVector ev = eigenvalues(p);
      if (ev(0) < 0.0 && ev(n - 1) > 0.0) {
        ps.push_back(std::move(p));
        ok = true;
      }
    }
    if (!ok)
      throw GenerationError("could not draw an indefinite constraint " + std::to_string(i) +
                            " in 10 attempts");
  }
  return {HqcqpProblem(std::move(t), std::move(ps)), std::move(u0)};
}

HqcqpProblem random_feasible_problem(const GeneratorSpec& spec) {
  return random_feasible_instance(spec).problem;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix(splitmix(splitmix(splitmix(base) ^ a) ^ b) ^ c);
}

}  // namespace hqcqp
