#include <doctest.h>

#include "cspstream/polarize.hpp"
#include "helpers.hpp"

using namespace cspstream;
using testing::Q;

namespace {

NonnegFn fn(int k, std::vector<Rational> v) { return NonnegFn{k, std::move(v)}; }

// s = coordinates where u is +1 and v is -1, t = the reverse.
std::pair<long, long> disagreements(unsigned u, unsigned v) {
  return {__builtin_popcount(u & ~v), __builtin_popcount(v & ~u)};
}

void check_trace(const NonnegFn& a, const PolarizationTrace& tr) {
  NonnegFn cur = a;
  for (const auto& s : tr.steps) {
    CHECK(s.phi_before == potential(cur));
    const auto [ds, dt] = disagreements(s.u, s.v);
    const NonnegFn next = polarize_step(cur, s.u, s.v);
    CHECK(s.eps == std::min(cur.values[s.u], cur.values[s.v]));
    CHECK(s.eps > 0);
    CHECK(marginals(a.k, next.values) == marginals(a.k, cur.values));
    CHECK(total_mass(next) == total_mass(cur));
    CHECK(s.phi_after == potential(next));
    CHECK(s.phi_after - s.phi_before == 8 * s.eps * ds * dt);
    cur = next;
  }
  CHECK(cur == tr.final);
}

}  // namespace

TEST_CASE("potential") {
  CHECK(potential(as_function(Dist::uniform(2))) == 2);
  CHECK(potential(as_function(Dist::point_mass(3, 7))) == 9);
  CHECK(potential(fn(2, {Q(0), Q(1, 2), Q(1, 2), Q(0)})) == 0);
}

TEST_CASE("polarize_step") {
  const NonnegFn a = fn(2, {Q(0), Q(1, 2), Q(1, 2), Q(0)});
  const NonnegFn b = polarize_step(a, 1, 2);
  CHECK(b == fn(2, {Q(1, 2), Q(0), Q(0), Q(1, 2)}));
  CHECK(potential(b) - potential(a) == 4);

  const NonnegFn c = fn(2, {Q(1, 2), Q(0), Q(1, 2), Q(0)});
  CHECK(polarize_step(c, 1, 2) == c);

  const NonnegFn u3 = as_function(Dist::uniform(3));
  const unsigned u = encode({1, 1, -1}), v = encode({-1, -1, 1});
  const NonnegFn d = polarize_step(u3, u, v);
  CHECK(d.values[7] == Q(1, 4));
  CHECK(d.values[0] == Q(1, 4));
  CHECK(potential(d) - potential(u3) == 2);
  CHECK_THROWS_AS(polarize_step(u3, 3, 7), std::invalid_argument);
}

TEST_CASE("chains") {
  CHECK(is_chain_supported(as_function(canonical({Q(1, 3), Q(-1, 2), Q(0)}))));
  CHECK_FALSE(is_chain_supported(fn(2, {Q(0), Q(1, 2), Q(1, 2), Q(0)})));
  CHECK(is_chain_supported(as_function(Dist::point_mass(4, 5))));
}

TEST_CASE("polarize_full examples") {
  auto tr = polarize_full(as_function(Dist::uniform(2)));
  CHECK(tr.final == fn(2, {Q(1, 2), Q(0), Q(0), Q(1, 2)}));
  CHECK(tr.steps.size() == 1);

  const NonnegFn u3 = as_function(Dist::uniform(3));
  tr = polarize_full(u3);
  CHECK(tr.final == as_function(canonical(MarginalVector(3, Rational(0)))));
  CHECK(tr.steps.size() <= 24);
  check_trace(u3, tr);

  const NonnegFn chain = as_function(canonical({Q(1, 5), Q(-2, 3), Q(1, 2)}));
  tr = polarize_full(chain);
  CHECK(tr.steps.empty());
  CHECK(tr.final == chain);
  CHECK_THROWS_AS(polarize_full(as_function(Dist::uniform(1))), std::invalid_argument);
}

TEST_CASE("bound recurrence") {
  CHECK(polarization_bound(2) == 1);
  CHECK(polarization_bound(3) == 24);
  CHECK(polarization_bound(4) == 475);
  CHECK(polarization_bound(5) == 13328);
}

TEST_CASE("random nonnegative functions polarize to the canonical endpoint") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 4;
    NonnegFn a{k, testing::random_table(k, rng)};
    if (total_mass(a) == 0) a.values[0] = Q(3, 7);
    const auto tr = polarize_full(a);
    check_trace(a, tr);
    CHECK(tr.final == canonical_endpoint(a));
    CHECK(is_chain_supported(tr.final));
    CHECK(tr.steps.size() <= polarization_bound(k));
    if (is_chain_supported(a)) {
      CHECK(potential(tr.final) >= potential(a));
    } else {
      CHECK(potential(tr.final) > potential(a));
    }
  }
}

TEST_CASE("zero function is its own endpoint") {
  const NonnegFn z{3, std::vector<Rational>(8, Rational(0))};
  const auto tr = polarize_full(z);
  CHECK(tr.steps.empty());
  CHECK(tr.final == z);
}
