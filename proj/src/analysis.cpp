#include "cspstream/analysis.hpp"

#include <cstdio>

namespace cspstream {

TruthTable two_and() { return TruthTable::from_bitstring("0001", 2); }

Rational two_and_gamma(const Rational& mu) { return (1 + mu) / 2; }

Rational two_and_beta(const Rational& mu_in) {
  const Rational mu = abs(mu_in);
  if (mu >= Rational(1, 3)) return mu;
  return (1 - mu) * (1 - mu) / (4 * (1 - 2 * mu));
}

std::vector<CurveRow> two_and_curves(const Rational& grid_step, const Rational& oracle_precision) {
  if (grid_step <= 0 || grid_step > 1) throw std::invalid_argument("grid_step must be in (0, 1]");
  const Rational steps = 1 / grid_step;
  if (steps.get_den() != 1) throw std::invalid_argument("grid_step must divide 1");
  const long count = steps.get_num().get_si();
  const TruthTable f = two_and();
  std::vector<CurveRow> rows;
  for (long i = 0; i <= count; ++i) {
    CurveRow r;
    r.mu = grid_step * i;
    r.gamma = two_and_gamma(r.mu);
    r.beta = two_and_beta(r.mu);
    r.ratio = r.beta / r.gamma;
    const MarginalVector mu{r.mu, r.mu};
    r.oracle_gamma = max_gamma_at_marginal(f, mu).value();
    BetaBracket b = min_beta_at_marginal(f, mu, oracle_precision);
    r.oracle_beta = b.upper;
    r.oracle_beta_lower = b.lower;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<RatioPoint> ratio_curve(const TruthTable& f, const std::vector<Rational>& beta_grid,
                                    const Rational& width, const DecideOptions& opts) {
  std::vector<RatioPoint> out;
  for (const auto& beta : beta_grid) {
    if (beta <= 0 || beta > 1) throw std::invalid_argument("beta grid values must be in (0, 1]");
    out.push_back({beta, ratio_at_beta(f, beta, width, opts)});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "mu,gamma,beta,ratio,oracle_beta\n";
  for (const auto& r : rows) {
    out << format_double(r.mu.get_d()) << ',' << format_double(r.gamma.get_d()) << ','
        << format_double(r.beta.get_d()) << ',' << format_double(r.ratio.get_d()) << ','
        << format_double(r.oracle_beta.get_d()) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& pts) {
  out << "beta,alpha\n";
  for (const auto& p : pts) {
    out << format_double(p.beta.get_d()) << ',' << (p.alpha ? format_double(p.alpha->get_d()) : "nan") << '\n';
  }
}

}  // namespace cspstream
