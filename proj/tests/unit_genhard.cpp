#include <doctest.h>

#include "cspstream/genhard.hpp"
#include "helpers.hpp"

#include <set>

using namespace cspstream;
using testing::Q;

namespace {

const TruthTable kAnd = TruthTable::from_bitstring("0001", 2);

GenParams params(std::size_t n, Rational alpha, std::size_t T, Dist mask, std::uint64_t seed = 1) {
  GenParams p;
  p.n = n;
  p.k = mask.k;
  p.alpha_m = std::move(alpha);
  p.T = T;
  p.mask_dist = std::move(mask);
  p.seed = seed;
  return p;
}

unsigned recovered_mask(const Constraint& c, const Assignment& x, int k) {
  unsigned m = 0;
  for (int t = 0; t < k; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    if (c.signs[ut] * x[c.indices[ut]] > 0) m |= coord_bit(t, k);
  }
  return m;
}

}  // namespace

TEST_CASE("block structure") {
  const auto p = params(4, Q(1, 2), 1, Dist::uniform(2));
  const RmdBlock b = gen_rmd_block(p);
  REQUIRE(b.edges.size() == 2);
  std::set<std::size_t> touched;
  for (const auto& e : b.edges) touched.insert(e.begin(), e.end());
  CHECK(touched == std::set<std::size_t>{0, 1, 2, 3});

  const auto q = params(10, Q(1, 3), 1, Dist::point_mass(3, 7), 9);
  const RmdBlock id = gen_rmd_block(q);
  for (std::size_t i = 0; i < id.edges.size(); ++i) {
    for (int t = 0; t < 3; ++t) CHECK(id.z[i][static_cast<std::size_t>(t)] == id.x_star[id.edges[i][static_cast<std::size_t>(t)]]);
  }
}

TEST_CASE("determinism") {
  const auto p = params(30, Q(1, 3), 4, Dist::uniform(2), 77);
  const Generated a = gen_streaming_rmd(p), b = gen_streaming_rmd(p);
  CHECK(a.stream == b.stream);
  CHECK(a.masks == b.masks);
  CHECK(a.x_star == b.x_star);
  auto other = p;
  other.seed = 78;
  CHECK_FALSE(gen_streaming_rmd(other).stream == a.stream);
}

TEST_CASE("streaming and padded variants") {
  auto p = params(8, Q(1, 2), 1, Dist::uniform(2), 5);
  CHECK(gen_streaming_rmd(p).stream == gen_rmd(p).stream);
  p.T = 3;
  CHECK(gen_streaming_rmd(p).stream.events.size() == 12);
  CHECK(gen_padded(p).stream == gen_streaming_rmd(p).stream);

  p.tau = Q(1, 2);
  p.pad_dist = Dist::point_mass(2, 3);
  const Generated g = gen_padded(p);
  CHECK(g.prefix == 12);
  CHECK(g.stream.events.size() == 24);
  for (std::size_t i = 0; i < g.prefix; ++i) {
    CHECK(constraint_value(kAnd, g.stream.events[i].constraint, g.x_star) == 1);
  }
  // the body is the streaming stream verbatim
  const Generated body = gen_streaming_rmd(p);
  CHECK(std::equal(body.stream.events.begin(), body.stream.events.end(), g.stream.events.begin() + 12));

  p.tau = Q(1, 3);
  CHECK(prefix_size(p) == 6);
  p.tau = Q(1, 7);
  CHECK(prefix_size(p) == 2);  // ceil(12 / 6)
  p.tau = Q(1, 5);
  CHECK(prefix_size(p) == 3);  // ceil(12 / 4)
}

TEST_CASE("hypermatching within every block") {
  auto p = params(31, Q(1, 3), 6, Dist::uniform(3), 3);
  const Generated g = gen_streaming_rmd(p);
  const std::size_t m = block_size(p);
  CHECK(m == 10);
  for (std::size_t t = 0; t < p.T; ++t) {
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < m; ++i) {
      for (auto j : g.stream.events[t * m + i].constraint.indices) CHECK(seen.insert(j).second);
    }
  }
}

TEST_CASE("planted value is the mean of f over the masks") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = params(20, Q(1, 2), 3, Dist(2, {Q(1, 4), Q(1, 8), Q(1, 8), Q(1, 2)}), seed);
    const Generated g = gen_streaming_rmd(p);
    Rational sum = 0;
    for (unsigned m : g.masks) sum += kAnd.at(m) ? 1 : 0;
    CHECK(value(kAnd, to_instance(g.stream), g.x_star) == sum / static_cast<long>(g.masks.size()));
    for (std::size_t i = 0; i < g.masks.size(); ++i) {
      CHECK(recovered_mask(g.stream.events[i].constraint, g.x_star, 2) == g.masks[i]);
    }
  }
}

TEST_CASE("recovered masks follow the mask distribution") {
  const Dist d(2, {Q(1, 2), Q(1, 4), Q(1, 8), Q(1, 8)});
  auto p = params(200, Q(1, 2), 40, d, 2024);
  const Generated g = gen_streaming_rmd(p);
  std::vector<double> count(4, 0);
  for (const auto& e : g.stream.events) count[recovered_mask(e.constraint, g.x_star, 2)] += 1;
  const double total = static_cast<double>(g.stream.events.size());
  double chi2 = 0;
  for (unsigned b = 0; b < 4; ++b) {
    const double expect = total * d.p[b].get_d();
    chi2 += (count[b] - expect) * (count[b] - expect) / expect;
  }
  // 3 degrees of freedom, p = 0.001
  CHECK(chi2 < 16.27);
}

TEST_CASE("sampler draws supported points in proportion") {
  const Dist d(2, {Q(0), Q(1, 3), Q(0), Q(2, 3)});
  DistSampler s(d);
  std::mt19937_64 rng(1);
  int hits = 0;
  for (int i = 0; i < 3000; ++i) {
    const unsigned x = s(rng);
    CHECK((x == 1 || x == 3));
    hits += x == 3;
  }
  CHECK(hits > 1800);
  CHECK(hits < 2200);
}

TEST_CASE("parameter validation") {
  auto p = params(10, Q(1, 2), 1, Dist::uniform(2));
  p.alpha_m = Q(3, 5);
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.alpha_m = Q(1, 20);
  CHECK_THROWS_AS(validate(p), std::invalid_argument);  // floor(n/20) = 0
  p.alpha_m = Q(1, 2);
  p.tau = Q(1, 2);
  CHECK_THROWS_AS(validate(p), std::invalid_argument);  // no pad_dist
  p.tau = 1;
  p.pad_dist = Dist::uniform(2);
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.tau = 0;
  p.mask_dist = Dist::uniform(3);
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.mask_dist = Dist::uniform(2);
  p.T = 0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("NO-side trend: fewer instances beat beta as T grows") {
  // D_N = uniform is in S_{1/4}^N for 2AND; opt of a random instance concentrates toward it.
  const Rational beta = Q(1, 4), eps = Q(1, 5);
  std::vector<int> over;
  for (std::size_t T : {1, 4, 12}) {
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto p = params(12, Q(1, 2), T, Dist::uniform(2), seed);
      if (opt_value(kAnd, to_instance(gen_streaming_rmd(p).stream)).first > beta + eps) ++bad;
    }
    over.push_back(bad);
  }
  CHECK(over[0] >= over[1]);
  CHECK(over[1] >= over[2]);
  CHECK(over[0] > over[2]);
}
