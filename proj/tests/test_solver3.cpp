#include "doctest.h"
#include "support.hpp"

#include "hqcqp/generator.hpp"
#include "hqcqp/oracle.hpp"
#include "hqcqp/solver3.hpp"

using namespace hqcqp;
using namespace testing;

namespace {

std::vector<HermitianMatrix> random_triple(int k, std::uint64_t seed) {
  const int n = 3 + k % 7;
  return reduce(random_feasible_problem({n, 3, 0.5, derive_seed(seed, n, 3, k)})).constraints();
}

double plane_lambda(const std::vector<HermitianMatrix>& cs, double t1, double t2) {
  const CMatrix m = cs[0].matrix() + t1 * (cs[0] - cs[1]).matrix() + t2 * (cs[0] - cs[2]).matrix();
  return min_eigenvalue(HermitianMatrix(m));
}

}  // namespace

TEST_SUITE("solver3") {

TEST_CASE("single-binding candidates on diagonal triples") {
  const Candidate3 d = candidate_single(dominated_triple(), 0);
  CHECK(std::abs(std::abs(d.u(0)) - 1.0) < 1e-14);
  CHECK(d.value == -1.0);
  CHECK(d.tag().to_string() == "three-single(0)");

  const Candidate3 s = candidate_single(sym_triple(), 0);
  CHECK(s.value == -1.0);
  CHECK(std::abs(s.u.norm() - 1.0) < 1e-14);
}

TEST_CASE("single-binding value is at least lambda_min") {
  for (int k = 0; k < 30; ++k) {
    const auto cs = random_triple(k, 1);
    for (int i = 0; i < 3; ++i)
      CHECK(candidate_single(cs, i).value >= reference_eigenvalues(cs[i])(0) - 1e-12);
  }
}

TEST_CASE("pair candidate on the symmetric triple") {
  // Equalizing c1 = c2 = -2 at (e1 + e2)/sqrt(2) leaves c3 = -1 on top.
  const Candidate3 p = candidate_pair(sym_triple(), 0, 1, SearchConfig{});
  REQUIRE(p.available);
  CHECK(p.value >= -5.0 / 3.0);
  CHECK(p.value == doctest::Approx(-1.0).epsilon(1e-6));
  REQUIRE(p.dual_value.has_value());
  // lambda(t) has a kink at the maximizer, so the interval threshold carries over.
  CHECK(std::abs(*p.dual_value + 2.0) <= 1e-4);
  CHECK(p.tag().to_string() == "three-pair(0,1)");
}

TEST_CASE("coincident pair reduces to the single candidate") {
  const std::vector<HermitianMatrix> cs{diag({-2, 1, 3}), diag({-2, 1, 3}), diag({4, -1, 0})};
  const Candidate3 p = candidate_pair(cs, 0, 1, SearchConfig{});
  const Candidate3 s = candidate_single(cs, 0);
  CHECK(p.value == s.value);
  CHECK(p.kind == Candidate3::Kind::Pair);
  CHECK(p.iterations == 0);
  CHECK_THROWS_AS(candidate_pair(cs, 1, 1, SearchConfig{}), Error);
}

TEST_CASE("all-binding candidate on the symmetric triple") {
  const Candidate3 a = candidate_all(sym_triple(), SearchConfig{});
  REQUIRE(a.available);
  REQUIRE(a.multipliers.size() == 2);
  CHECK(std::abs(a.multipliers[0] + 1.0 / 3.0) <= 1e-3);
  CHECK(std::abs(a.multipliers[1] + 1.0 / 3.0) <= 1e-3);
  CHECK(std::abs(a.value + 5.0 / 3.0) <= 1e-6);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(std::abs(a.u(k)) - 1.0 / std::sqrt(3.0)) <= 1e-4);
}

TEST_CASE("all-binding with identical constraints reduces to lambda_min") {
  const std::vector<HermitianMatrix> cs(3, diag({-4, 2, 7}));
  const Candidate3 a = candidate_all(cs, SearchConfig{});
  CHECK(a.value == -4.0);
  CHECK(a.kind == Candidate3::Kind::All);
}

TEST_CASE("solve_three examples") {
  const ReducedSolution sym = solve_three(sym_triple(), SearchConfig{});
  CHECK(sym.tag.kind == CaseTag::Kind::ThreeAll);
  CHECK(std::abs(sym.c_star + 5.0 / 3.0) <= 1e-6);
  CHECK(std::abs(-1.0 / sym.c_star - 0.6) <= 1e-4);
  CHECK(sym.binding == std::vector<int>{0, 1, 2});

  const ReducedSolution dom = solve_three(dominated_triple(), SearchConfig{});
  CHECK(std::abs(dom.c_star + 1.0) <= 1e-6);
  // The pair and all-binding candidates can only tie here; the single wins.
  CHECK(dom.tag.to_string() == "three-single(0)");
  CHECK(dom.binding == std::vector<int>{0});
}

TEST_CASE("two-dimensional problems are rejected") {
  const std::vector<HermitianMatrix> cs{diag({-1, 1}), diag({1, -1}), diag({-1, -1})};
  CHECK_THROWS_AS(solve_three(cs, SearchConfig{}), DimensionError);
  CHECK_THROWS_AS(candidate_single({diag({-1, 1, 1})}, 0), DimensionError);
}

TEST_CASE("candidate soundness and the seven-point minimum") {
  for (int k = 0; k < 20; ++k) {
    const auto cs = random_triple(k, 2);
    const std::vector<Candidate3> cands = seven_candidates(cs, SearchConfig{});
    REQUIRE(cands.size() == 7);
    double least = INFINITY;
    for (const Candidate3& c : cands) {
      if (!c.available) continue;
      CHECK(std::abs(c.u.norm() - 1.0) <= 1e-10);
      CHECK(c.value == doctest::Approx(max_form(cs, c.u)).epsilon(1e-14));
      least = std::min(least, c.value);
    }
    const ReducedSolution r = solve_three(cs, SearchConfig{});
    CHECK(r.c_star <= least + 1e-9 * std::max(1.0, std::abs(least)));
    CHECK(r.c_star >= least);
  }
}

TEST_CASE("binding at pair and all-binding candidates") {
  for (int k = 0; k < 20; ++k) {
    const auto cs = random_triple(k, 3);
    for (const auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      const Candidate3 p = candidate_pair(cs, i, j, SearchConfig{});
      if (!p.available || p.multipliers.empty()) continue;
      // Only an interior maximizer of the pencil equalizes the pair.
      const double ci = quadratic_form(cs[i], p.u);
      const double cj = quadratic_form(cs[j], p.u);
      const double lmin_i = reference_eigenvalues(cs[i])(0);
      const double lmin_j = reference_eigenvalues(cs[j])(0);
      if (*p.dual_value > lmin_i + 1e-6 && *p.dual_value > lmin_j + 1e-6)
        CHECK(std::abs(ci - cj) <= 1e-4);
    }
  }
  // All-binding checked where the optimum really binds all three.
  int checked = 0;
  for (int k = 0; checked < 10 && k < 400; ++k) {
    const auto cs = random_triple(k, 4);
    const ReducedSolution r = solve_three(cs, SearchConfig{});
    if (r.tag.kind != CaseTag::Kind::ThreeAll) continue;
    ++checked;
    const double c1 = quadratic_form(cs[0], r.u);
    CHECK(std::abs(c1 - quadratic_form(cs[1], r.u)) <= 1e-3);
    CHECK(std::abs(c1 - quadratic_form(cs[2], r.u)) <= 1e-3);
  }
  CHECK(checked == 10);
}

TEST_CASE("oracle dominance") {
  for (int k = 0; k < 5; ++k) {
    const auto cs = random_triple(k, 5);
    const double c_star = solve_three(cs, SearchConfig{}).c_star;
    double sampled = INFINITY;
    for (const CVector& u : sample_unit_sphere(cs[0].dim(), 100000, derive_seed(6, k)))
      sampled = std::min(sampled, max_form(cs, u));
    CHECK(c_star <= sampled + 1e-6);
  }
}

TEST_CASE("lambda(t1, t2) is concave") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> ut(-4.0, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 8;
    const std::vector<HermitianMatrix> cs{random_herm(n, rng), random_herm(n, rng), random_herm(n, rng)};
    const double a1 = ut(rng), a2 = ut(rng), b1 = ut(rng), b2 = ut(rng);
    const double mid = plane_lambda(cs, 0.5 * (a1 + b1), 0.5 * (a2 + b2));
    const double avg = 0.5 * (plane_lambda(cs, a1, a2) + plane_lambda(cs, b1, b2));
    CHECK(mid - avg >= -1e-9);
  }
}

TEST_CASE("all-binding incumbent is monotone") {
  for (int k = 0; k < 15; ++k) {
    const Candidate3 a = candidate_all(random_triple(k, 7), SearchConfig{});
    if (!a.available) continue;
    for (std::size_t s = 1; s < a.trace.size(); ++s)
      CHECK(a.trace[s].value >= a.trace[s - 1].value - 1e-12);
  }
}

TEST_CASE("ties prefer fewer binding constraints") {
  // c3 never binds; singles 0 and 1 and the pair (0,1) all reach -2.
  const std::vector<HermitianMatrix> cs{diag({-2, 5, 5}), diag({-2, 5, 5}), diag({-9, 5, 5})};
  const ReducedSolution r = solve_three(cs, SearchConfig{});
  CHECK(r.c_star == -2.0);
  CHECK(r.tag.to_string() == "three-single(0)");
}

}  // TEST_SUITE
