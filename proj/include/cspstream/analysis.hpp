#pragma once

// Max-2AND curves and ratio sweeps.

#include "cspstream/separability.hpp"

#include <ostream>

namespace cspstream {

struct CurveRow {
  Rational mu;
  Rational gamma;  // (1 + mu) / 2
  Rational beta;   // mu if mu >= 1/3, else (1 - mu)^2 / (4 (1 - 2 mu))
  Rational ratio;
  Rational oracle_gamma;  // LP: max E[f] at marginals (mu, mu)
  Rational oracle_beta;   // cutting-plane min over D of max_p g_D(p), upper end of the bracket
  Rational oracle_beta_lower;
};

TruthTable two_and();

Rational two_and_gamma(const Rational& mu);
Rational two_and_beta(const Rational& mu);

/// mu = 0, step, 2 step, ..., 1 (step must divide 1).
std::vector<CurveRow> two_and_curves(const Rational& grid_step, const Rational& oracle_precision = Rational(1, 1000000000));

struct RatioPoint {
  Rational beta;
  std::optional<Rational> alpha;  // nullopt: no Easy gamma
};

std::vector<RatioPoint> ratio_curve(const TruthTable& f, const std::vector<Rational>& beta_grid,
                                    const Rational& width = Rational(1, 10000000), const DecideOptions& opts = {});

/// Header `mu,gamma,beta,ratio,oracle_beta`, 12 significant digits.
void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows);

/// Header `beta,alpha`.
void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& pts);

std::string format_double(double v);

}  // namespace cspstream
