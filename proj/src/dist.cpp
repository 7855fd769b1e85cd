#include "cspstream/dist.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cspstream {

namespace {

void check_arity(int k) {
  if (k < 1 || k > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
}

void check_same_arity(const Dist& d, const TruthTable& f) {
  if (d.k != f.arity()) throw std::invalid_argument("distribution and function arities differ");
}

}  // namespace

Dist Dist::uniform(int k) {
  check_arity(k);
  const unsigned size = 1u << k;
  return Dist(k, std::vector<Rational>(size, Rational(1, size)));
}

Dist Dist::point_mass(int k, unsigned index) {
  check_arity(k);
  if (index >= (1u << k)) throw std::out_of_range("point index outside {-1,1}^k");
  std::vector<Rational> p(1u << k, Rational(0));
  p[index] = 1;
  return Dist(k, std::move(p));
}

void validate(const Dist& d) {
  check_arity(d.k);
  if (d.p.size() != (std::size_t{1} << d.k)) throw std::invalid_argument("distribution must have 2^k entries");
  Rational s = 0;
  for (const auto& v : d.p) {
    if (v < 0) throw std::invalid_argument("negative probability");
    s += v;
  }
  if (s != 1) throw std::invalid_argument("probabilities sum to " + to_string(s) + ", not 1");
}

MarginalVector marginals(int k, const std::vector<Rational>& values) {
  MarginalVector mu(static_cast<std::size_t>(k), Rational(0));
  for (unsigned a = 0; a < values.size(); ++a) {
    if (values[a] == 0) continue;
    for (int t = 0; t < k; ++t) {
      if (a & coord_bit(t, k)) {
        mu[static_cast<std::size_t>(t)] += values[a];
      } else {
        mu[static_cast<std::size_t>(t)] -= values[a];
      }
    }
  }
  return mu;
}

Rational expect_f(const Dist& d, const TruthTable& f) {
  check_same_arity(d, f);
  Rational s = 0;
  for (unsigned a = 0; a < d.p.size(); ++a) {
    if (f.at(a)) s += d.p[a];
  }
  return s;
}

std::vector<Poly> bern_basis(const TruthTable& f) {
  const int k = f.arity();
  // p^w (1-p)^(k-w) for each weight w
  std::vector<Poly> mono(static_cast<std::size_t>(k + 1));
  const Poly p({Rational(0), Rational(1)});
  const Poly q({Rational(1), Rational(-1)});
  for (int w = 0; w <= k; ++w) {
    Poly term({Rational(1)});
    for (int i = 0; i < w; ++i) term = term * p;
    for (int i = w; i < k; ++i) term = term * q;
    mono[static_cast<std::size_t>(w)] = term;
  }
  std::vector<Poly> out(f.size());
  for (unsigned b = 0; b < f.size(); ++b) {
    std::vector<Rational> count(static_cast<std::size_t>(k + 1), Rational(0));
    for (unsigned a = 0; a < f.size(); ++a) {
      if (f.at(odot(b, a, k))) count[static_cast<std::size_t>(__builtin_popcount(a))] += 1;
    }
    Poly h;
    for (int w = 0; w <= k; ++w) {
      if (count[static_cast<std::size_t>(w)] != 0) h += count[static_cast<std::size_t>(w)] * mono[static_cast<std::size_t>(w)];
    }
    out[b] = h;
  }
  return out;
}

Poly bern_poly(const std::vector<Rational>& weights, const std::vector<Poly>& basis) {
  Poly g;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (weights[b] != 0) g += weights[b] * basis[b];
  }
  return g;
}

Poly bern_poly(const Dist& d, const TruthTable& f) {
  check_same_arity(d, f);
  return bern_poly(d.p, bern_basis(f));
}

bool in_S_Y(const Dist& d, const TruthTable& f, const Rational& gamma) { return expect_f(d, f) >= gamma; }

bool in_S_N(const Dist& d, const TruthTable& f, const Rational& beta, const Rational& tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  return max_on_unit_interval(bern_poly(d, f)).bound <= beta + tol;
}

Dist induced_distribution(const Instance& psi, const Assignment& a) {
  validate(psi);
  if (a.size() != psi.n) throw std::invalid_argument("assignment length does not match n");
  const Rational W = psi.total_weight();
  if (W == 0) throw ZeroWeightError();
  std::vector<Rational> p(std::size_t{1} << psi.k, Rational(0));
  for (const auto& wc : psi.constraints) p[pattern_index(wc.constraint, a)] += wc.weight;
  for (auto& v : p) v /= W;
  return Dist(psi.k, std::move(p));
}

std::vector<Rational> canonical_function(int k, const Rational& mu0, const MarginalVector& mu) {
  check_arity(k);
  if (static_cast<int>(mu.size()) != k) throw std::invalid_argument("marginal vector length must equal k");
  for (const auto& m : mu) {
    if (abs(m) > mu0) throw std::invalid_argument("marginal outside [-mu0, mu0]");
  }
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return mu[static_cast<std::size_t>(x)] < mu[static_cast<std::size_t>(y)]; });
  std::vector<Rational> out(1u << k, Rational(0));
  // Chain point i is +1 on the i largest coordinates. Its mass is
  // (M_{k-i+1} - M_{k-i}) / 2 with sorted marginals M and M_0 = -mu0, M_{k+1} = mu0.
  auto sorted = [&](int j) -> Rational {
    if (j == 0) return -mu0;
    if (j == k + 1) return mu0;
    return mu[static_cast<std::size_t>(order[static_cast<std::size_t>(j - 1)])];
  };
  unsigned point = 0;
  for (int i = 0; i <= k; ++i) {
    if (i > 0) point |= coord_bit(order[static_cast<std::size_t>(k - i)], k);
    out[point] += (sorted(k - i + 1) - sorted(k - i)) / 2;
  }
  return out;
}

Dist canonical(const MarginalVector& mu) {
  const int k = static_cast<int>(mu.size());
  return Dist(k, canonical_function(k, Rational(1), mu));
}

PaddedDecomposition decompose_padded_pair_k2(const Dist& dy_in, const Dist& dn_in) {
  if (dy_in.k != 2 || dn_in.k != 2) throw std::invalid_argument("decompose_padded_pair_k2 needs k = 2");
  validate(dy_in);
  validate(dn_in);
  if (marginals(dy_in) != marginals(dn_in)) throw std::invalid_argument("marginals of D_Y and D_N differ");

  constexpr unsigned mm = 0, mp = 1, pm = 2, pp = 3;  // (-1,-1), (-1,1), (1,-1), (1,1)
  const Dist half_equal(2, {Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)});
  const Dist half_opposite(2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)});

  Rational delta = dy_in.p[pp] - dn_in.p[pp];
  const bool swapped = delta < 0;
  const Dist& dy = swapped ? dn_in : dy_in;
  if (swapped) delta = -delta;

  PaddedDecomposition out;
  out.tau = 1 - 2 * delta;
  out.dy_prime = swapped ? half_opposite : half_equal;
  out.dn_prime = swapped ? half_equal : half_opposite;
  if (out.tau == 0) {
    out.d0 = canonical(MarginalVector(2, Rational(0)));
    return out;
  }
  std::vector<Rational> d0(4);
  d0[pp] = (dy.p[pp] - delta) / out.tau;
  d0[pm] = dy.p[pm] / out.tau;
  d0[mp] = dy.p[mp] / out.tau;
  d0[mm] = (dy.p[mm] - delta) / out.tau;
  out.d0 = Dist(2, std::move(d0));
  return out;
}

}  // namespace cspstream
