#pragma once

// Does K_gamma^Y(f) meet K_beta^N(f)? Cutting-plane LPs over (D_Y, D_N).

#include "cspstream/dist.hpp"
#include "cspstream/lp.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace cspstream {

/// 10^-9.
Rational default_tol();

struct DecideOptions {
  Rational tol = default_tol();
  std::size_t max_cuts = 10000;
  bool with_hyperplane = true;
};

class IndeterminateError : public std::runtime_error {
 public:
  IndeterminateError(const std::string& what, Rational slack) : std::runtime_error(what), last_slack(std::move(slack)) {}
  Rational last_slack;
};

/// Raised when a hyperplane with positive margin cannot be found after an Easy verdict.
class InconsistentError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct HardWitness {
  Dist dy;
  Dist dn;
  MarginalVector mu;
  Rational slack;  // beta - certified max of g_{D_N}; may be down to -tol
};

struct Hyperplane {
  std::vector<Rational> lambda;
  Rational tau_y;
  Rational tau_n;
};

enum class VerdictTag { Hard, Easy };

struct SeparationVerdict {
  VerdictTag tag = VerdictTag::Hard;
  HardWitness hard;  // valid when tag == Hard
  Hyperplane easy;   // valid when tag == Easy and hyperplane extraction was requested
  std::vector<Rational> cuts;
  std::size_t lp_solves = 0;
};

/// Requires 0 <= beta < gamma <= 1 and k <= 6.
SeparationVerdict decide(const TruthTable& f, const Rational& gamma, const Rational& beta,
                         const DecideOptions& opts = {});

/// Same loop without the beta < gamma precondition. nullopt means disjoint.
std::optional<HardWitness> intersects(const TruthTable& f, const Rational& gamma, const Rational& beta,
                                      const DecideOptions& opts = {});

Hyperplane extract_hyperplane(const TruthTable& f, const Rational& gamma, const Rational& beta,
                              const DecideOptions& opts = {});

/// min over S_gamma^Y of <lambda, mu(D)>; nullopt if S_gamma^Y is empty.
std::optional<Rational> tau_y_of(const TruthTable& f, const Rational& gamma, const std::vector<Rational>& lambda);

/// Upper bound on max over S_beta^N of <lambda, mu(D)> (value of a cutting-plane
/// relaxation); nullopt if S_beta^N is empty.
std::optional<Rational> tau_n_of(const TruthTable& f, const Rational& beta, const std::vector<Rational>& lambda,
                                 const DecideOptions& opts = {}, std::vector<Rational> cuts = {});

/// Distribution on f^{-1}(1) with zero marginals, if one exists.
std::optional<Dist> supports_one_wise(const TruthTable& f);

bool resistance(const TruthTable& f, const DecideOptions& opts = {});

struct RatioResult {
  Rational alpha;
  Rational beta_min;
  std::size_t decide_calls = 0;
};

/// alpha = max(rho, inf_beta sup_{gamma Easy} beta/gamma). grid_step must be 1/M.
RatioResult approx_ratio(const TruthTable& f, const Rational& grid_step = Rational(1, 720),
                         const DecideOptions& opts = {});

/// sup over Easy gamma of beta/gamma by bisection on gamma; nullopt when no gamma <= 1 is Easy.
std::optional<Rational> ratio_at_beta(const TruthTable& f, const Rational& beta, const Rational& width,
                                      const DecideOptions& opts = {});

struct PaddedPair {
  Rational tau;
  Dist d0;
  Dist dy_prime;
  Dist dn_prime;
};

std::optional<PaddedPair> exists_padded_onewise_pair(const TruthTable& f, const Rational& gamma,
                                                     const Rational& beta, const DecideOptions& opts = {});

/// max E_D[f] over D with marginals mu; nullopt if no such D.
std::optional<Rational> max_gamma_at_marginal(const TruthTable& f, const MarginalVector& mu);

struct BetaBracket {
  Rational lower;
  Rational upper;
  Dist witness;
};

/// min over D with marginals mu of max_p g_D(p), bracketed to `precision`.
BetaBracket min_beta_at_marginal(const TruthTable& f, const MarginalVector& mu, const Rational& precision);

}  // namespace cspstream
