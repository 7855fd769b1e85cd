#pragma once

#include "cspstream/core.hpp"
#include "cspstream/dist.hpp"

#include <random>

namespace testing {

using cspstream::Rational;

inline Rational Q(long p, long q = 1) { return cspstream::frac(p, q); }

inline cspstream::Assignment random_assignment(std::size_t n, std::mt19937_64& rng) {
  cspstream::Assignment a(n);
  for (auto& x : a) x = (rng() & 1) ? 1 : -1;
  return a;
}

inline cspstream::Constraint random_constraint(std::size_t n, int k, std::mt19937_64& rng) {
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  cspstream::Constraint c;
  for (int t = 0; t < k; ++t) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(t), n - 1);
    std::swap(ids[static_cast<std::size_t>(t)], ids[pick(rng)]);
    c.indices.push_back(ids[static_cast<std::size_t>(t)]);
    c.signs.push_back((rng() & 1) ? 1 : -1);
  }
  return c;
}

/// m constraints with integer weights in [1, max_w].
inline cspstream::Instance random_instance(std::size_t n, int k, std::size_t m, std::mt19937_64& rng, long max_w = 3) {
  cspstream::Instance psi;
  psi.n = n;
  psi.k = k;
  std::uniform_int_distribution<long> w(1, max_w);
  for (std::size_t i = 0; i < m; ++i) psi.constraints.push_back({random_constraint(n, k, rng), Rational(w(rng))});
  return psi;
}

/// Random rational table with small denominators; about a third of entries zero.
inline std::vector<Rational> random_table(int k, std::mt19937_64& rng, long max_num = 9) {
  std::uniform_int_distribution<long> num(0, max_num);
  std::vector<Rational> v(std::size_t{1} << k);
  for (auto& x : v) x = (rng() % 3 == 0) ? Rational(0) : Rational(num(rng));
  return v;
}

inline cspstream::Dist random_dist(int k, std::mt19937_64& rng) {
  std::vector<Rational> v = random_table(k, rng);
  Rational s = 0;
  for (const auto& x : v) s += x;
  if (s == 0) {
    v[0] = 1;
    s = 1;
  }
  for (auto& x : v) x /= s;
  return cspstream::Dist(k, v);
}

}  // namespace testing
