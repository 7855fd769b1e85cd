#include <doctest.h>

#include "cspstream/stream.hpp"
#include "helpers.hpp"

#include <map>

using namespace cspstream;
using testing::Q;

namespace {

// Reference: count per (indices, signs) with a plain map and report the first bad event.
std::size_t reference_prefix(const Stream& s) {
  std::map<std::pair<std::vector<std::size_t>, SignVec>, long> w;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    auto& c = w[{s.events[i].constraint.indices, s.events[i].constraint.signs}];
    c += s.events[i].insert ? 1 : -1;
    if (c < 0) return i;
  }
  return s.events.size();
}

Stream random_stream(std::size_t n, int k, std::size_t len, std::mt19937_64& rng, int pool) {
  std::vector<Constraint> cs;
  for (int i = 0; i < pool; ++i) cs.push_back(testing::random_constraint(n, k, rng));
  Stream s;
  s.n = n;
  s.k = k;
  for (std::size_t i = 0; i < len; ++i) s.events.push_back({rng() % 3 != 0, cs[rng() % cs.size()]});
  return s;
}

}  // namespace

TEST_CASE("turnstile counter") {
  TurnstileCounter c(4, 2);
  const Constraint a{{0, 1}, {1, 1}}, b{{2, 3}, {-1, 1}}, a_neg{{0, 1}, {1, -1}};
  c.apply({true, a});
  c.apply({true, b});
  c.apply({true, a});
  c.apply({false, a});
  CHECK(c.weight(a) == 1);
  CHECK(c.weight(b) == 1);
  CHECK(c.weight(a_neg) == 0);
  CHECK(c.total() == 2);
  CHECK_THROWS_AS(c.apply({false, a_neg}), TurnstileError);
  CHECK(c.total() == 2);
  CHECK(c.events() == 4);
  const Instance psi = c.instance();
  REQUIRE(psi.constraints.size() == 2);
  CHECK(psi.constraints[0].constraint == a);
  CHECK(psi.constraints[1].constraint == b);
  CHECK_THROWS_AS(c.apply({true, Constraint{{0, 4}, {1, 1}}}), std::out_of_range);
}

TEST_CASE("valid_prefix matches a reference counter") {
  std::mt19937_64 rng(13);
  int invalid = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Stream s = random_stream(5, 2, 1 + rng() % 30, rng, 1 + static_cast<int>(rng() % 4));
    const std::size_t p = valid_prefix(s);
    CHECK(p == reference_prefix(s));
    if (p < s.events.size()) {
      ++invalid;
      CHECK_THROWS_AS(to_instance(s), TurnstileError);
      Stream head = s;
      head.events.resize(p);
      CHECK(valid_prefix(head) == p);
    }
  }
  CHECK(invalid > 50);
}

TEST_CASE("to_instance and from_instance") {
  std::mt19937_64 rng(3);
  const Instance psi = testing::random_instance(6, 3, 8, rng);
  const Stream s = from_instance(psi);
  const Instance back = to_instance(s);
  // Repeated constraints merge, so compare accumulated weights per constraint.
  std::map<std::pair<std::vector<std::size_t>, SignVec>, Rational> want, got;
  for (const auto& wc : psi.constraints) want[{wc.constraint.indices, wc.constraint.signs}] += wc.weight;
  for (const auto& wc : back.constraints) got[{wc.constraint.indices, wc.constraint.signs}] += wc.weight;
  CHECK(want == got);
  CHECK(back.total_weight() == psi.total_weight());

  Instance frac_w = psi;
  frac_w.constraints[0].weight = Q(1, 2);
  CHECK_THROWS_AS(from_instance(frac_w), std::invalid_argument);
}

TEST_CASE("insert-delete churn leaves only the survivors") {
  Stream s;
  s.n = 3;
  s.k = 2;
  const Constraint keep{{0, 1}, {1, 1}}, churn{{1, 2}, {-1, 1}};
  for (int i = 0; i < 5; ++i) {
    s.events.push_back({true, churn});
    s.events.push_back({false, churn});
  }
  s.events.push_back({true, keep});
  const Instance psi = to_instance(s);
  REQUIRE(psi.constraints.size() == 1);
  CHECK(psi.constraints[0].constraint == keep);
  CHECK(psi.constraints[0].weight == 1);
}
