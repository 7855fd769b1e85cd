#pragma once

// Potential, polarization operator, chains, and the recursive Polarize procedure.

#include "cspstream/dist.hpp"

namespace cspstream {

/// Nonnegative function on {-1,1}^k (not necessarily normalized).
struct NonnegFn {
  int k = 0;
  std::vector<Rational> values;

  bool operator==(const NonnegFn&) const = default;
};

void validate(const NonnegFn& a);

inline NonnegFn as_function(const Dist& d) { return NonnegFn{d.k, d.p}; }

/// sum_b A(b) (sum_j b_j)^2.
Rational potential(const NonnegFn& a);

inline Rational total_mass(const NonnegFn& a) {
  Rational s = 0;
  for (const auto& v : a.values) s += v;
  return s;
}

/// u <= v componentwise (as indices).
inline bool leq(unsigned u, unsigned v) { return (u & ~v) == 0; }
inline bool comparable(unsigned u, unsigned v) { return leq(u, v) || leq(v, u); }

/// Moves eps = min(A(u), A(v)) from {u, v} to {u or v, u and v}. Throws if u, v are comparable.
NonnegFn polarize_step(const NonnegFn& a, unsigned u, unsigned v);

bool is_chain_supported(const NonnegFn& a);

struct PolarizationStep {
  unsigned u = 0;
  unsigned v = 0;
  Rational eps;
  Rational phi_before;
  Rational phi_after;
};

struct PolarizationTrace {
  std::vector<PolarizationStep> steps;  // only steps that moved mass
  NonnegFn final;
};

/// k >= 2.
PolarizationTrace polarize_full(const NonnegFn& a);

/// mu0(A) * canonical(mu(A) / mu0(A)).
NonnegFn canonical_endpoint(const NonnegFn& a);

/// N(2) = 1, N(k) = (k^2 + 3)(1 + N(k - 1)).
unsigned long long polarization_bound(int k);

}  // namespace cspstream
