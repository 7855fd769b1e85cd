#include <doctest.h>

#include "cspstream/lp.hpp"

#include <random>

using namespace cspstream;
using namespace cspstream::lp;

namespace {

Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Oracle for 2-variable maximize problems with x, y >= 0 and <= rows:
// enumerate every intersection of two constraint lines, keep the feasible ones.
std::optional<Rational> vertex_max(const LinearProgram& lp) {
  std::vector<std::array<Rational, 3>> lines;  // a x + b y = c
  for (const auto& r : lp.rows) lines.push_back({r.coeffs[0], r.coeffs[1], r.rhs});
  lines.push_back({Q(1), Q(0), Q(0)});
  lines.push_back({Q(0), Q(1), Q(0)});
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Rational det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
      if (det == 0) continue;
      Rational x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
      Rational y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
      if (!is_feasible_point(lp, {x, y})) continue;
      Rational v = lp.objective[0] * x + lp.objective[1] * y;
      if (!best || v > *best) best = v;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("single bound") {
  LinearProgram lp(1);
  lp.objective = {Q(1)};
  lp.add_row({Q(1)}, Relation::LessEq, Q(1));
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.primal[0] == 1);
  CHECK(out.objective == 1);
  CHECK(dual_objective(lp, out.dual) == out.objective);
}

TEST_CASE("contradictory rows give a Farkas certificate") {
  LinearProgram lp(1);
  lp.set_free(0);
  lp.add_row({Q(1)}, Relation::LessEq, Q(-1));
  lp.add_row({Q(1)}, Relation::GreaterEq, Q(0));
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Infeasible);
  CHECK(verify_farkas(lp, out.farkas));
  CHECK(out.farkas[0] == out.farkas[1]);
  CHECK(out.farkas[0] > 0);
}

TEST_CASE("two-variable vertex") {
  LinearProgram lp(2);
  lp.objective = {Q(1), Q(1)};
  lp.add_row({Q(1), Q(2)}, Relation::LessEq, Q(4));
  lp.add_row({Q(3), Q(1)}, Relation::LessEq, Q(6));
  auto oracle = vertex_max(lp);
  REQUIRE(oracle);
  CHECK(*oracle == Q(14, 5));
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.primal[0] == Q(8, 5));
  CHECK(out.primal[1] == Q(6, 5));
  CHECK(out.objective == Q(14, 5));
  CHECK(dual_objective(lp, out.dual) == out.objective);
}

TEST_CASE("unbounded ray") {
  LinearProgram lp(2);
  lp.objective = {Q(1), Q(0)};
  lp.add_row({Q(1), Q(-1)}, Relation::LessEq, Q(1));
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Unbounded);
  CHECK(verify_ray(lp, out.ray));
}

TEST_CASE("minimize with mixed bounds and equality") {
  LinearProgram lp(3, Sense::Minimize);
  lp.objective = {Q(2), Q(-1), Q(1)};
  lp.bounds[0] = Bounds{Q(-3), Q(5)};
  lp.bounds[1] = Bounds{std::nullopt, Q(4)};
  lp.set_free(2);
  lp.add_row({Q(1), Q(1), Q(1)}, Relation::Equal, Q(2));
  lp.add_row({Q(0), Q(0), Q(1)}, Relation::GreaterEq, Q(-1));
  auto out = solve(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(is_feasible_point(lp, out.primal));
  // x0 = -3, x2 = -1, x1 = 6 violates x1 <= 4; optimum is x0=-3, x1=4, x2=1: -6-4+1 = -9
  CHECK(out.objective == -9);
  auto d = dual_objective(lp, out.dual);
  REQUIRE(d);
  CHECK(-*d == out.objective);
}

TEST_CASE("random programs: primal feasible, strong duality, Farkas valid") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3, m = 2 + trial % 4;
    LinearProgram lp(n, trial % 2 ? Sense::Maximize : Sense::Minimize);
    for (auto& c : lp.objective) c = coef(rng);
    for (std::size_t j = 0; j < n; ++j) lp.bounds[j] = Bounds{Q(coef(rng) - 2), Q(coef(rng) + 6)};
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> a(n);
      for (auto& v : a) v = coef(rng);
      lp.add_row(a, static_cast<Relation>(i % 3), Q(coef(rng)));
    }
    auto out = solve(lp);
    REQUIRE(out.status != LpStatus::Unbounded);
    if (out.status == LpStatus::Optimal) {
      ++optimal;
      CHECK(is_feasible_point(lp, out.primal));
      auto d = dual_objective(lp, out.dual);
      REQUIRE(d);
      CHECK((lp.sense == Sense::Maximize ? *d : Rational(-*d)) == out.objective);
    } else {
      ++infeasible;
      CHECK(verify_farkas(lp, out.farkas));
    }
  }
  CHECK(optimal > 20);
  CHECK(infeasible > 20);
}

TEST_CASE("dimension mismatch") {
  LinearProgram lp(2);
  lp.rows.push_back(Row{{Q(1)}, Relation::LessEq, Q(1)});
  CHECK_THROWS_AS(solve(lp), DimensionError);
}
