#include <doctest.h>

#include "cspstream/core.hpp"
#include "helpers.hpp"

using namespace cspstream;
using testing::Q;

namespace {

const TruthTable kAnd = TruthTable::from_bitstring("0001", 2);
const TruthTable kXor = TruthTable::from_bitstring("0110", 2);

Constraint C(std::vector<std::size_t> ids, SignVec b) { return Constraint{std::move(ids), std::move(b)}; }

// Plain enumeration over all 2^n assignments.
Rational naive_opt(const TruthTable& f, const Instance& psi) {
  Rational best = -1;
  for (std::uint64_t m = 0; m < (1ull << psi.n); ++m) {
    Assignment s(psi.n);
    for (std::size_t i = 0; i < psi.n; ++i) s[i] = (m >> i) & 1 ? 1 : -1;
    best = std::max(best, value(f, psi, s));
  }
  return best;
}

}  // namespace

TEST_CASE("encoding puts the first coordinate in the top bit") {
  CHECK(encode({-1, -1}) == 0);
  CHECK(encode({-1, 1}) == 1);
  CHECK(encode({1, -1}) == 2);
  CHECK(encode({1, 1}) == 3);
  for (int k = 1; k <= 6; ++k) {
    for (unsigned i = 0; i < (1u << k); ++i) CHECK(encode(decode(i, k)) == i);
  }
  CHECK(odot(encode({1, -1}), encode({-1, -1}), 2) == encode({-1, 1}));
}

TEST_CASE("eval_f") {
  CHECK(eval_f(kAnd, {1, 1}) == 1);
  CHECK(eval_f(kAnd, {-1, 1}) == 0);
  CHECK_THROWS_AS(eval_f(kAnd, {1}), std::invalid_argument);
  for (const std::string bits : {"0110", "10010110", "0001011101111111"}) {
    const int k = bits.size() == 4 ? 2 : bits.size() == 8 ? 3 : 4;
    const TruthTable f = TruthTable::from_bitstring(bits, k);
    std::string back;
    for (unsigned i = 0; i < f.size(); ++i) back += eval_f(f, decode(i, k)) ? '1' : '0';
    CHECK(back == bits);
    CHECK(f.bitstring() == bits);
  }
  CHECK_THROWS(TruthTable::from_bitstring("011", 2));
  CHECK_THROWS(TruthTable::from_bitstring("0120", 2));
  CHECK_THROWS(TruthTable(7, 0));
}

TEST_CASE("rho") {
  CHECK(rho(kAnd) == Q(1, 4));
  CHECK(rho(kXor) == Q(1, 2));
  CHECK(rho(TruthTable::from_bitstring("1111", 2)) == 1);
  CHECK(to_string(rho(TruthTable::from_bitstring("00111111", 3))) == "3/4");
}

TEST_CASE("constraint_value") {
  CHECK(constraint_value(kAnd, C({0, 1}, {1, 1}), {1, 1, -1}) == 1);
  CHECK(constraint_value(kAnd, C({0, 1}, {-1, -1}), {-1, -1, 1}) == 1);
  CHECK(constraint_value(kAnd, C({0, 2}, {1, 1}), {1, 1, -1}) == 0);
  CHECK_THROWS_AS(constraint_value(kAnd, C({0, 3}, {1, 1}), {1, 1, -1}), std::out_of_range);
  CHECK_THROWS_AS(validate(C({1, 1}, {1, 1}), 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(validate(C({0, 1}, {1, 0}), 3, 2), std::invalid_argument);
}

TEST_CASE("value and opt_value examples") {
  Instance one{2, 2, {{C({0, 1}, {1, 1}), Q(1)}}};
  CHECK(value(kAnd, one, {1, 1}) == 1);
  CHECK(opt_value(kAnd, one).first == 1);

  Instance two{2, 2, {{C({0, 1}, {1, 1}), Q(1)}, {C({0, 1}, {-1, 1}), Q(1)}}};
  CHECK(value(kAnd, two, {1, 1}) == Q(1, 2));
  auto [v, sigma] = opt_value(kAnd, two);
  CHECK(v == Q(1, 2));
  CHECK(value(kAnd, two, sigma) == v);

  Instance tri{3, 2, {{C({0, 1}, {1, 1}), Q(1)}, {C({1, 2}, {1, 1}), Q(1)}, {C({0, 2}, {1, 1}), Q(1)}}};
  CHECK(opt_value(kXor, tri).first == Q(2, 3));

  Instance empty{3, 2, {}};
  CHECK_THROWS_AS(value(kAnd, empty, {1, 1, 1}), ZeroWeightError);
  CHECK_THROWS_AS(opt_value(kAnd, empty), ZeroWeightError);
  Instance big{27, 2, {{C({0, 1}, {1, 1}), Q(1)}}};
  CHECK_THROWS_AS(opt_value(kAnd, big), TooLargeError);
}

TEST_CASE("value is scale invariant and opt dominates random assignments") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 2;
    const TruthTable f(k, rng() & ((1ull << (1u << k)) - 1));
    Instance psi = testing::random_instance(8, k, 10, rng);
    Instance scaled = psi;
    for (auto& wc : scaled.constraints) wc.weight *= 3;
    const Rational opt = opt_value(f, psi).first;
    CHECK(opt == naive_opt(f, psi));
    for (int s = 0; s < 100; ++s) {
      const Assignment sigma = testing::random_assignment(psi.n, rng);
      const Rational v = value(f, psi, sigma);
      CHECK(v == value(f, scaled, sigma));
      CHECK(v <= opt);
    }
  }
}

TEST_CASE("opt_value is invariant under flips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + trial % 3;
    const std::size_t n = 6 + static_cast<std::size_t>(trial % 7);
    const TruthTable f(k, rng() & ((1ull << (1u << k)) - 1));
    const Instance psi = testing::random_instance(n, k, 12, rng);
    const Assignment a = testing::random_assignment(n, rng);
    const Instance flipped = flip(psi, a);
    CHECK(opt_value(f, psi).first == opt_value(f, flipped).first);
    // val_{psi^a}(sigma (.) a) = val_psi(sigma)
    const Assignment sigma = testing::random_assignment(n, rng);
    Assignment sa(n);
    for (std::size_t i = 0; i < n; ++i) sa[i] = sigma[i] * a[i];
    CHECK(value(f, flipped, sa) == value(f, psi, sigma));
  }
}

TEST_CASE("brute force handles rational weights") {
  Instance psi{3, 2, {{C({0, 1}, {1, 1}), Q(1, 3)}, {C({0, 1}, {-1, -1}), Q(2, 3)}, {C({1, 2}, {1, -1}), Q(1, 7)}}};
  CHECK(opt_value(kAnd, psi).first == naive_opt(kAnd, psi));
}
