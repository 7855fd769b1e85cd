#include <doctest.h>

#include "cspstream/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace cspstream;

namespace {

double within_rate(const std::vector<std::pair<std::size_t, std::int64_t>>& x, std::size_t n, double eps, int seeds) {
  double l1 = 0;
  for (const auto& [i, v] : x) l1 += std::abs(static_cast<double>(v));
  int ok = 0;
  for (int s = 0; s < seeds; ++s) {
    L1Sketch sk(n, eps, static_cast<std::uint64_t>(s) * 7919 + 1);
    for (const auto& [i, v] : x) sk.update(i, v);
    const double e = sk.estimate();
    if (e >= (1 - eps) * l1 && e <= (1 + eps) * l1) ++ok;
  }
  return static_cast<double>(ok) / seeds;
}

}  // namespace

TEST_CASE("row count") {
  CHECK(L1Sketch::rows_for(0.5) == 192);
  CHECK(L1Sketch::rows_for(0.1) == 4800);
  CHECK(L1Sketch::rows_for(0.2) == 1200);
  CHECK(L1Sketch(5, 0.5, 1).rows() == 192);
  CHECK_THROWS_AS(L1Sketch(5, 0.6, 1), std::invalid_argument);
  CHECK_THROWS_AS(L1Sketch(5, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(L1Sketch(0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("determinism and index checks") {
  L1Sketch a(10, 0.5, 42), b(10, 0.5, 42);
  for (std::size_t i = 1; i <= 10; ++i) {
    a.update(i, static_cast<std::int64_t>(i) - 4);
    b.update(i, static_cast<std::int64_t>(i) - 4);
  }
  CHECK(a.accumulators() == b.accumulators());
  CHECK(a.estimate() == b.estimate());
  CHECK(a.entry(3, 7) == b.entry(3, 7));
  CHECK(L1Sketch(10, 0.5, 43).entry(3, 7) != a.entry(3, 7));
  CHECK_THROWS_AS(a.update(0, 1), std::out_of_range);
  CHECK_THROWS_AS(a.update(11, 1), std::out_of_range);
}

TEST_CASE("zero vector and cancellation") {
  L1Sketch s(4, 0.5, 9);
  CHECK(s.estimate() == 0);
  s.update(1, 5);
  s.update(1, -5);
  CHECK(s.estimate() == 0);
  for (const auto& a : s.accumulators()) CHECK(a == 0);
  s.update(2, 3);
  const auto snapshot = s.accumulators();
  s.update(4, 1000000);
  s.update(4, -1000000);
  CHECK(s.accumulators() == snapshot);
}

TEST_CASE("order of updates does not matter, and merge is concatenation") {
  std::mt19937_64 rng(1);
  std::vector<std::pair<std::size_t, std::int64_t>> ups;
  for (int i = 0; i < 300; ++i) ups.push_back({1 + rng() % 50, static_cast<std::int64_t>(rng() % 21) - 10});
  L1Sketch fwd(50, 0.3, 77), rev(50, 0.3, 77), left(50, 0.3, 77), right(50, 0.3, 77);
  for (const auto& [i, v] : ups) fwd.update(i, v);
  for (auto it = ups.rbegin(); it != ups.rend(); ++it) rev.update(it->first, it->second);
  for (std::size_t t = 0; t < ups.size(); ++t) (t % 2 ? left : right).update(ups[t].first, ups[t].second);
  CHECK(fwd.accumulators() == rev.accumulators());
  left.merge(right);
  CHECK(left.accumulators() == fwd.accumulators());
  CHECK_THROWS_AS(left.merge(L1Sketch(50, 0.3, 78)), std::invalid_argument);
}

TEST_CASE("entries look standard Cauchy") {
  L1Sketch s(1000, 0.5, 5);
  std::vector<double> mags;
  for (std::size_t i = 1; i <= 1000; ++i) {
    for (std::size_t r = 0; r < 20; ++r) mags.push_back(std::abs(s.entry(i, r)));
  }
  std::nth_element(mags.begin(), mags.begin() + static_cast<long>(mags.size() / 2), mags.end());
  // median of |Cauchy| is 1
  CHECK(mags[mags.size() / 2] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("accuracy on small vectors") {
  CHECK(within_rate({{3, 7}}, 5, 0.5, 300) >= 2.0 / 3.0);
  CHECK(within_rate({{1, 10}, {2, -3}}, 5, 0.5, 300) >= 2.0 / 3.0);
  std::mt19937_64 rng(4);
  std::vector<std::pair<std::size_t, std::int64_t>> x;
  for (std::size_t i = 1; i <= 1000; ++i) x.push_back({i, static_cast<std::int64_t>(rng() % 201) - 100});
  CHECK(within_rate(x, 1000, 0.5, 40) >= 2.0 / 3.0);
}
