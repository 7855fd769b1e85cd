#pragma once

// Distributions over {-1,1}^k and the polynomials g_D(p).

#include "cspstream/core.hpp"
#include "cspstream/poly.hpp"

#include <vector>

namespace cspstream {

/// Probability vector over {-1,1}^k, indexed like TruthTable.
struct Dist {
  int k = 0;
  std::vector<Rational> p;

  Dist() = default;
  Dist(int k_, std::vector<Rational> p_) : k(k_), p(std::move(p_)) {}

  static Dist uniform(int k);
  static Dist point_mass(int k, unsigned index);

  bool operator==(const Dist& o) const { return k == o.k && p == o.p; }
};

/// Throws std::invalid_argument unless entries are nonnegative and sum to exactly 1.
void validate(const Dist& d);

using MarginalVector = std::vector<Rational>;

/// mu_j = sum_a a_j A(a). Works for any nonnegative table, not only distributions.
MarginalVector marginals(int k, const std::vector<Rational>& values);
inline MarginalVector marginals(const Dist& d) { return marginals(d.k, d.p); }

Rational expect_f(const Dist& d, const TruthTable& f);

/// h_b(p) = sum_a f(b (.) a) p^{#a=1} (1-p)^{#a=-1} for every pattern b.
std::vector<Poly> bern_basis(const TruthTable& f);

/// g_D(p) = sum_b D(b) h_b(p).
Poly bern_poly(const Dist& d, const TruthTable& f);
Poly bern_poly(const std::vector<Rational>& weights, const std::vector<Poly>& basis);

bool in_S_Y(const Dist& d, const TruthTable& f, const Rational& gamma);
bool in_S_N(const Dist& d, const TruthTable& f, const Rational& beta, const Rational& tol = 0);

/// D(Psi^a): weight of each pattern a|_j (.) b over all constraints, normalized.
Dist induced_distribution(const Instance& psi, const Assignment& a);

/// Chain-supported table with total mass mu0 and (unnormalized) marginals mu.
/// Coordinates are ordered by a stable ascending sort of mu.
std::vector<Rational> canonical_function(int k, const Rational& mu0, const MarginalVector& mu);

/// Canonical distribution D_mu.
Dist canonical(const MarginalVector& mu);

struct PaddedDecomposition {
  Rational tau;
  Dist d0;
  Dist dy_prime;
  Dist dn_prime;
};

/// k = 2 only: D_Y = tau D0 + (1-tau) D'_Y, D_N = tau D0 + (1-tau) D'_N with
/// zero-marginal D'_Y, D'_N.
PaddedDecomposition decompose_padded_pair_k2(const Dist& dy, const Dist& dn);

}  // namespace cspstream
