#include "cspstream/polarize.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cspstream {

void validate(const NonnegFn& a) {
  if (a.k < 1 || a.k > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
  if (a.values.size() != (std::size_t{1} << a.k)) throw std::invalid_argument("function must have 2^k values");
  for (const auto& v : a.values) {
    if (v < 0) throw std::invalid_argument("function values must be nonnegative");
  }
}

Rational potential(const NonnegFn& a) {
  Rational s = 0;
  for (unsigned b = 0; b < a.values.size(); ++b) {
    if (a.values[b] == 0) continue;
    const long sum = 2L * __builtin_popcount(b) - a.k;
    s += a.values[b] * (sum * sum);
  }
  return s;
}

NonnegFn polarize_step(const NonnegFn& a, unsigned u, unsigned v) {
  validate(a);
  if (u >= a.values.size() || v >= a.values.size()) throw std::out_of_range("point outside {-1,1}^k");
  if (comparable(u, v)) throw std::invalid_argument("polarization needs an incomparable pair");
  NonnegFn out = a;
  const Rational eps = std::min(a.values[u], a.values[v]);
  if (eps == 0) return out;
  out.values[u] -= eps;
  out.values[v] -= eps;
  out.values[u | v] += eps;
  out.values[u & v] += eps;
  return out;
}

bool is_chain_supported(const NonnegFn& a) {
  std::vector<unsigned> supp;
  for (unsigned b = 0; b < a.values.size(); ++b) {
    if (a.values[b] != 0) supp.push_back(b);
  }
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      if (!comparable(supp[i], supp[j])) return false;
    }
  }
  return true;
}

NonnegFn canonical_endpoint(const NonnegFn& a) {
  validate(a);
  return NonnegFn{a.k, canonical_function(a.k, total_mass(a), marginals(a.k, a.values))};
}

unsigned long long polarization_bound(int k) {
  if (k < 2) throw std::invalid_argument("polarization bound needs k >= 2");
  unsigned long long n = 1;
  for (int j = 3; j <= k; ++j) n = static_cast<unsigned long long>(j * j + 3) * (1 + n);
  return n;
}

namespace {

class Polarizer {
 public:
  Polarizer(NonnegFn a) : a_(std::move(a)), k_(a_.k) {}

  PolarizationTrace run() {
    std::vector<int> free(static_cast<std::size_t>(k_));
    std::iota(free.begin(), free.end(), 0);
    recurse(0, free);
    return PolarizationTrace{std::move(steps_), std::move(a_)};
  }

 private:
  unsigned bit(int coord) const { return coord_bit(coord, k_); }

  unsigned global(unsigned base, const std::vector<int>& free, unsigned local) const {
    const std::size_t d = free.size();
    unsigned g = base;
    for (std::size_t t = 0; t < d; ++t) {
      if (local & (1u << t)) g |= bit(free[t]);
    }
    return g;
  }

  void apply(unsigned u, unsigned v) {
    const Rational eps = std::min(a_.values[u], a_.values[v]);
    if (eps == 0) return;
    PolarizationStep s;
    s.u = u;
    s.v = v;
    s.eps = eps;
    s.phi_before = potential(a_);
    a_ = polarize_step(a_, u, v);
    s.phi_after = potential(a_);
    steps_.push_back(std::move(s));
  }

  // Chain through the subcube (base, free): point i is +1 on the i coordinates
  // with the largest marginals. Returned as local masks.
  std::vector<unsigned> chain(unsigned base, const std::vector<int>& free) const {
    const std::size_t d = free.size();
    std::vector<Rational> mu(d, Rational(0));
    for (unsigned loc = 0; loc < (1u << d); ++loc) {
      const Rational& v = a_.values[global(base, free, loc)];
      if (v == 0) continue;
      for (std::size_t t = 0; t < d; ++t) {
        if (loc & (1u << t)) {
          mu[t] += v;
        } else {
          mu[t] -= v;
        }
      }
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return mu[x] < mu[y]; });
    std::vector<unsigned> pts{0};
    unsigned cur = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      cur |= 1u << order[d - i];
      pts.push_back(cur);
    }
    for (unsigned loc = 0; loc < (1u << d); ++loc) {
      if (a_.values[global(base, free, loc)] != 0 && std::find(pts.begin(), pts.end(), loc) == pts.end()) {
        throw std::logic_error("subcube is not supported on its canonical chain");
      }
    }
    return pts;
  }

  void recurse(unsigned base, const std::vector<int>& free) {
    const std::size_t d = free.size();
    if (d == 2) {
      apply(base | bit(free[1]), base | bit(free[0]));
      return;
    }
    const int last = free[d - 1];
    const std::vector<int> sub(free.begin(), free.end() - 1);
    const unsigned lo_base = base, hi_base = base | bit(last);
    recurse(lo_base, sub);
    recurse(hi_base, sub);

    const unsigned full = (1u << (d - 1)) - 1u;
    const std::vector<unsigned> b_chain = chain(hi_base, sub);
    for (;;) {
      const std::vector<unsigned> a_chain = chain(lo_base, sub);
      bool found = false;
      for (std::size_t i = 0; i < a_chain.size() && !found; ++i) {
        const unsigned ga = global(lo_base, sub, a_chain[i]);
        if (a_.values[ga] == 0) continue;
        for (std::size_t j = 0; j + 1 < b_chain.size(); ++j) {
          const unsigned gb = global(hi_base, sub, b_chain[j]);
          if ((a_chain[i] | b_chain[j]) != full || a_.values[gb] == 0) continue;
          apply(ga, gb);
          recurse(lo_base, sub);
          found = true;
          break;
        }
      }
      if (!found) break;
    }

    // Clean-up: every support point other than the top has some coordinate at -1.
    const unsigned top_local = (1u << d) - 1u;
    for (std::size_t l = 0; l < d; ++l) {
      bool ok = true;
      for (unsigned loc = 0; loc < (1u << d) && ok; ++loc) {
        if (loc == top_local || a_.values[global(base, free, loc)] == 0) continue;
        if (loc & (1u << l)) ok = false;
      }
      if (!ok) continue;
      std::vector<int> rest;
      for (std::size_t t = 0; t < d; ++t) {
        if (t != l) rest.push_back(free[t]);
      }
      recurse(base, rest);
      return;
    }
    throw std::logic_error("clean-up coordinate not found");
  }

  NonnegFn a_;
  int k_;
  std::vector<PolarizationStep> steps_;
};

}  // namespace

PolarizationTrace polarize_full(const NonnegFn& a) {
  validate(a);
  if (a.k < 2) throw std::invalid_argument("polarize_full needs k >= 2");
  return Polarizer(a).run();
}

}  // namespace cspstream
