#include "cspstream/separability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace cspstream {

using lp::LinearProgram;
using lp::LpStatus;
using lp::Relation;
using lp::Sense;

Rational default_tol() { return Rational(1, 1000000000); }

namespace {

std::vector<Rational> initial_cuts() {
  return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

// h_b(p) for every b, cached per cut point.
class BernTable {
 public:
  explicit BernTable(const TruthTable& f) : basis_(bern_basis(f)) {}

  const std::vector<Poly>& basis() const { return basis_; }

  std::vector<Rational> at(const Rational& p) const {
    std::vector<Rational> v(basis_.size());
    for (std::size_t b = 0; b < basis_.size(); ++b) v[b] = basis_[b](p);
    return v;
  }

 private:
  std::vector<Poly> basis_;
};

std::vector<Rational> slice(const std::vector<Rational>& x, std::size_t from, std::size_t len) {
  return std::vector<Rational>(x.begin() + static_cast<long>(from), x.begin() + static_cast<long>(from + len));
}

int sign_of(unsigned a, int t, int k) { return (a & coord_bit(t, k)) ? 1 : -1; }

// Adds a row sum_a a_t * x[offset + a] * scale for each t, equal to rhs[t].
void add_marginal_rows(LinearProgram& lp, int k, std::size_t offset, const std::vector<Rational>& rhs,
                       std::size_t other_offset = SIZE_MAX) {
  const unsigned N = 1u << k;
  for (int t = 0; t < k; ++t) {
    std::vector<Rational> row(lp.num_vars(), Rational(0));
    for (unsigned a = 0; a < N; ++a) {
      row[offset + a] = sign_of(a, t, k);
      if (other_offset != SIZE_MAX) row[other_offset + a] = -sign_of(a, t, k);
    }
    lp.add_row(std::move(row), Relation::Equal, rhs[static_cast<std::size_t>(t)]);
  }
}

void add_mass_row(LinearProgram& lp, const std::vector<std::size_t>& offsets, unsigned N, const Rational& rhs) {
  std::vector<Rational> row(lp.num_vars(), Rational(0));
  for (std::size_t off : offsets) {
    for (unsigned a = 0; a < N; ++a) row[off + a] = 1;
  }
  lp.add_row(std::move(row), Relation::Equal, rhs);
}

struct CutOutcome {
  bool feasible = false;
  lp::LpOutcome lp;
  std::vector<Rational> no_side;  // weights entering g
  UnitMax gmax;
  std::size_t solves = 0;
};

// Generic cutting-plane loop. `build` receives the cut values h(p_j) and returns
// the LP; `no_side` extracts the weights whose polynomial must stay below beta.
CutOutcome cut_loop(const BernTable& table, const Rational& beta, const DecideOptions& opts,
                    std::vector<Rational>& cuts,
                    const std::function<LinearProgram(const std::vector<std::vector<Rational>>&)>& build,
                    const std::function<std::vector<Rational>(const std::vector<Rational>&)>& no_side) {
  std::vector<std::vector<Rational>> values;
  for (const auto& p : cuts) values.push_back(table.at(p));
  CutOutcome out;
  for (;;) {
    LinearProgram lp = build(values);
    out.lp = lp::solve(lp);
    ++out.solves;
    if (out.lp.status != LpStatus::Optimal) {
      out.feasible = false;
      return out;
    }
    out.no_side = no_side(out.lp.primal);
    out.gmax = max_on_unit_interval(bern_poly(out.no_side, table.basis()));
    if (out.gmax.bound <= beta + opts.tol) {
      out.feasible = true;
      return out;
    }
    if (cuts.size() >= opts.max_cuts) {
      throw IndeterminateError("cut limit reached", beta - out.gmax.bound);
    }
    const Rational& p = out.gmax.argmax;
    if (std::find(cuts.begin(), cuts.end(), p) != cuts.end()) {
      throw IndeterminateError("cutting plane stalled at a repeated cut", beta - out.gmax.bound);
    }
    cuts.push_back(p);
    values.push_back(table.at(p));
  }
}

// Joint LP over (D_Y, D_N). Row layout: 0,1 masses; 2..2+k marginal matching;
// 2+k expectation; then one row per cut.
LinearProgram joint_lp(const TruthTable& f, const Rational& gamma, const Rational& beta,
                       const std::vector<std::vector<Rational>>& values) {
  const int k = f.arity();
  const unsigned N = f.size();
  LinearProgram lp(2 * N, Sense::Minimize);
  add_mass_row(lp, {0}, N, Rational(1));
  add_mass_row(lp, {N}, N, Rational(1));
  add_marginal_rows(lp, k, 0, std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)), N);
  std::vector<Rational> ef(2 * N, Rational(0));
  for (unsigned a = 0; a < N; ++a) ef[a] = f.at(a) ? 1 : 0;
  lp.add_row(std::move(ef), Relation::GreaterEq, gamma);
  for (const auto& h : values) {
    std::vector<Rational> row(2 * N, Rational(0));
    for (unsigned b = 0; b < N; ++b) {
      row[N + b] = h[b];
      lp.objective[N + b] += h[b];
    }
    lp.add_row(std::move(row), Relation::LessEq, beta);
  }
  return lp;
}

struct JointResult {
  std::optional<HardWitness> witness;
  std::vector<Rational> farkas;
  std::vector<Rational> cuts;
  std::size_t solves = 0;
};

JointResult run_joint(const TruthTable& f, const Rational& gamma, const Rational& beta, const DecideOptions& opts) {
  if (opts.tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  const int k = f.arity();
  const unsigned N = f.size();
  const BernTable table(f);
  JointResult res;
  res.cuts = initial_cuts();
  CutOutcome out = cut_loop(
      table, beta, opts, res.cuts,
      [&](const std::vector<std::vector<Rational>>& values) { return joint_lp(f, gamma, beta, values); },
      [&](const std::vector<Rational>& x) { return slice(x, N, N); });
  res.solves = out.solves;
  if (!out.feasible) {
    res.farkas = out.lp.farkas;
    return res;
  }
  HardWitness w;
  w.dy = Dist(k, slice(out.lp.primal, 0, N));
  w.dn = Dist(k, out.no_side);
  w.mu = marginals(w.dy);
  w.slack = beta - out.gmax.bound;
  res.witness = std::move(w);
  return res;
}

bool s_y_empty(const TruthTable& f, const Rational& gamma) {
  if (gamma > 1) return true;
  if (gamma <= 0) return false;
  return f.bits() == 0;
}

Rational relative_margin(const Rational& ty, const Rational& tn) {
  Rational den = abs(ty) + abs(tn);
  if (den == 0) return Rational(0);
  return (ty - tn) / den;
}

struct Scored {
  std::vector<Rational> lambda;
  Rational ty, tn;
};

std::optional<Scored> score(const TruthTable& f, const Rational& gamma, const Rational& beta,
                            const std::vector<Rational>& lambda, const DecideOptions& opts,
                            const std::vector<Rational>& cuts) {
  auto ty = tau_y_of(f, gamma, lambda);
  auto tn = tau_n_of(f, beta, lambda, opts, cuts);
  if (!ty || !tn) return std::nullopt;
  return Scored{lambda, *ty, *tn};
}

// Small-integer direction close to lambda.
std::vector<Rational> integer_direction(const std::vector<Rational>& lambda, unsigned long max_den) {
  Rational top = 0;
  for (const auto& v : lambda) top = std::max(top, abs(v));
  std::vector<Rational> approx;
  BigInt den = 1;
  for (const auto& v : lambda) {
    Rational a = approximate(Rational(v / top).get_d(), max_den);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    approx.push_back(a);
  }
  BigInt g = 0;
  for (auto& a : approx) {
    a *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num_mpz_t());
  }
  if (g == 0) return approx;
  for (auto& a : approx) a /= g;
  return approx;
}

Hyperplane hyperplane_from(const TruthTable& f, const Rational& gamma, const Rational& beta,
                           const std::vector<Rational>& farkas, const std::vector<Rational>& cuts,
                           const DecideOptions& opts) {
  const int k = f.arity();
  const std::size_t K = static_cast<std::size_t>(k);
  if (s_y_empty(f, gamma)) return Hyperplane{std::vector<Rational>(K, Rational(0)), Rational(1), Rational(0)};
  if (beta < rho(f)) return Hyperplane{std::vector<Rational>(K, Rational(0)), Rational(0), Rational(-1)};

  std::optional<Scored> best;
  if (farkas.size() >= 2 + K) {
    std::vector<Rational> lambda(farkas.begin() + 2, farkas.begin() + 2 + static_cast<long>(K));
    if (std::any_of(lambda.begin(), lambda.end(), [](const Rational& v) { return v != 0; })) {
      auto s = score(f, gamma, beta, lambda, opts, cuts);
      if (s && s->ty > s->tn) best = s;
    }
  }

  if (best) {
    // Prefer a short integer direction with comparable relative margin.
    const Rational target = relative_margin(best->ty, best->tn) / 2;
    for (unsigned long den : {1ul, 2ul, 3ul, 4ul, 6ul, 8ul, 12ul, 16ul, 32ul, 64ul}) {
      auto cand = integer_direction(best->lambda, den);
      if (std::all_of(cand.begin(), cand.end(), [](const Rational& v) { return v == 0; })) continue;
      if (cand == best->lambda) break;
      auto s = score(f, gamma, beta, cand, opts, cuts);
      if (s && s->ty > s->tn && relative_margin(s->ty, s->tn) >= target) {
        best = s;
        break;
      }
    }
  }
  if (!best || k <= 4) {
    // Small integer directions; a wider margin means a cheaper sketch downstream.
    const int R = k <= 3 ? 2 : 1;
    std::vector<int> v(K, -R);
    Rational best_rel = best ? relative_margin(best->ty, best->tn) : Rational(0);
    for (;;) {
      if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) {
        std::vector<Rational> lambda(v.begin(), v.end());
        auto s = score(f, gamma, beta, lambda, opts, cuts);
        if (s && s->ty > s->tn && (!best || relative_margin(s->ty, s->tn) > best_rel)) {
          best_rel = relative_margin(s->ty, s->tn);
          best = s;
        }
      }
      std::size_t i = 0;
      while (i < K && v[i] == R) v[i++] = -R;
      if (i == K) break;
      ++v[i];
    }
  }
  if (!best) throw InconsistentError("no separating direction found for an Easy verdict");
  return Hyperplane{best->lambda, best->ty, best->tn};
}

void check_decide_args(const TruthTable& f, const Rational& gamma, const Rational& beta) {
  if (f.arity() < 1 || f.arity() > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
  if (!(0 <= beta && beta < gamma && gamma <= 1)) {
    throw std::invalid_argument("decide requires 0 <= beta < gamma <= 1");
  }
}

}  // namespace

std::optional<HardWitness> intersects(const TruthTable& f, const Rational& gamma, const Rational& beta,
                                      const DecideOptions& opts) {
  if (s_y_empty(f, gamma) || beta < rho(f)) return std::nullopt;
  return run_joint(f, gamma, beta, opts).witness;
}

SeparationVerdict decide(const TruthTable& f, const Rational& gamma, const Rational& beta,
                         const DecideOptions& opts) {
  check_decide_args(f, gamma, beta);
  SeparationVerdict v;
  if (s_y_empty(f, gamma) || beta < rho(f)) {
    v.tag = VerdictTag::Easy;
    if (opts.with_hyperplane) v.easy = hyperplane_from(f, gamma, beta, {}, {}, opts);
    return v;
  }
  JointResult r = run_joint(f, gamma, beta, opts);
  v.cuts = r.cuts;
  v.lp_solves = r.solves;
  if (r.witness) {
    v.tag = VerdictTag::Hard;
    v.hard = std::move(*r.witness);
    return v;
  }
  v.tag = VerdictTag::Easy;
  if (opts.with_hyperplane) v.easy = hyperplane_from(f, gamma, beta, r.farkas, r.cuts, opts);
  return v;
}

Hyperplane extract_hyperplane(const TruthTable& f, const Rational& gamma, const Rational& beta,
                              const DecideOptions& opts) {
  DecideOptions o = opts;
  o.with_hyperplane = true;
  SeparationVerdict v = decide(f, gamma, beta, o);
  if (v.tag != VerdictTag::Easy) throw std::invalid_argument("extract_hyperplane needs an Easy pair");
  return v.easy;
}

std::optional<Rational> tau_y_of(const TruthTable& f, const Rational& gamma, const std::vector<Rational>& lambda) {
  const int k = f.arity();
  const unsigned N = f.size();
  if (lambda.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("lambda must have k entries");
  LinearProgram lp(N, Sense::Minimize);
  for (unsigned a = 0; a < N; ++a) {
    Rational s = 0;
    for (int t = 0; t < k; ++t) s += sign_of(a, t, k) * lambda[static_cast<std::size_t>(t)];
    lp.objective[a] = s;
  }
  add_mass_row(lp, {0}, N, Rational(1));
  std::vector<Rational> ef(N);
  for (unsigned a = 0; a < N; ++a) ef[a] = f.at(a) ? 1 : 0;
  lp.add_row(std::move(ef), Relation::GreaterEq, gamma);
  auto out = lp::solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return out.objective;
}

std::optional<Rational> tau_n_of(const TruthTable& f, const Rational& beta, const std::vector<Rational>& lambda,
                                 const DecideOptions& opts, std::vector<Rational> cuts) {
  const int k = f.arity();
  const unsigned N = f.size();
  if (lambda.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("lambda must have k entries");
  if (beta < rho(f)) return std::nullopt;
  if (cuts.empty()) cuts = initial_cuts();
  std::vector<Rational> obj(N);
  for (unsigned a = 0; a < N; ++a) {
    Rational s = 0;
    for (int t = 0; t < k; ++t) s += sign_of(a, t, k) * lambda[static_cast<std::size_t>(t)];
    obj[a] = s;
  }
  const BernTable table(f);
  DecideOptions o = opts;
  o.max_cuts = cuts.size() + 64;
  auto build = [&](const std::vector<std::vector<Rational>>& values) {
    LinearProgram lp(N, Sense::Maximize);
    lp.objective = obj;
    add_mass_row(lp, {0}, N, Rational(1));
    for (const auto& h : values) lp.add_row(h, Relation::LessEq, beta);
    return lp;
  };
  try {
    CutOutcome out = cut_loop(table, beta, o, cuts, build, [](const std::vector<Rational>& x) { return x; });
    if (out.lp.status != LpStatus::Optimal) return std::nullopt;
    return out.lp.objective;
  } catch (const IndeterminateError&) {
    // The last relaxation is still an upper bound; re-solve it.
    std::vector<std::vector<Rational>> values;
    for (const auto& p : cuts) values.push_back(table.at(p));
    auto out = lp::solve(build(values));
    if (out.status != LpStatus::Optimal) return std::nullopt;
    return out.objective;
  }
}

std::optional<Dist> supports_one_wise(const TruthTable& f) {
  const int k = f.arity();
  const unsigned N = f.size();
  LinearProgram lp(N, Sense::Maximize);
  for (unsigned a = 0; a < N; ++a) {
    if (!f.at(a)) lp.bounds[a] = lp::Bounds{Rational(0), Rational(0)};
  }
  add_mass_row(lp, {0}, N, Rational(1));
  add_marginal_rows(lp, k, 0, std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)));
  auto out = lp::solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return Dist(k, out.primal);
}

bool resistance(const TruthTable& f, const DecideOptions& opts) {
  return intersects(f, Rational(1), rho(f), opts).has_value();
}

namespace {

bool easy(const TruthTable& f, const Rational& gamma, const Rational& beta, const DecideOptions& opts,
          std::size_t& calls) {
  ++calls;
  return !intersects(f, gamma, beta, opts).has_value();
}

// Smallest Easy gamma in (lo, hi], assuming hi is Easy, to within width.
Rational bisect_gamma(const TruthTable& f, const Rational& beta, Rational lo, Rational hi, const Rational& width,
                      const DecideOptions& opts, std::size_t& calls) {
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (easy(f, mid, beta, opts, calls)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

RatioResult approx_ratio(const TruthTable& f, const Rational& grid_step, const DecideOptions& opts) {
  if (grid_step <= 0 || grid_step.get_num() != 1) throw std::invalid_argument("grid_step must be 1/M");
  const long M = grid_step.get_den().get_si();
  const Rational r = rho(f);
  RatioResult res;
  res.alpha = r;
  res.beta_min = r;

  // Two-pointer sweep: the smallest Easy gamma is nondecreasing in beta.
  BigInt i0z;
  {
    Rational x = r * M;
    mpz_cdiv_q(i0z.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  }
  const long i0 = i0z.get_si();
  struct Row {
    long i, j;
    Rational alpha;
  };
  std::vector<Row> rows;
  long j = 0;
  bool empty_sup = false;
  for (long i = i0; i < M; ++i) {
    const Rational beta = frac(i, M);
    j = std::max(j, i + 1);
    while (j <= M && !easy(f, frac(j, M), beta, opts, res.decide_calls)) ++j;
    if (j > M) {
      empty_sup = true;
      break;
    }
    Rational a = frac(i, j);
    rows.push_back({i, j, a});
  }
  // Some beta >= rho has no Easy gamma: nothing beats rho.
  if (empty_sup) return res;
  if (rows.empty()) {
    res.alpha = 1;
    return res;
  }

  // Refine gamma* where the grid value could still be the infimum.
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.alpha < b.alpha; });
  Rational width = grid_step;
  while (width > Rational(1, 10000000)) width /= 2;
  std::optional<Rational> best;
  Rational best_beta;
  for (const auto& row : rows) {
    if (best && row.alpha >= *best) break;
    const Rational beta = frac(row.i, M);
    Rational lo = std::max(beta, frac(row.j - 1, M));
    Rational g = bisect_gamma(f, beta, lo, frac(row.j, M), width, opts, res.decide_calls);
    Rational a = beta / g;
    if (!best || a < *best) {
      best = a;
      best_beta = beta;
    }
  }
  res.alpha = std::max(r, *best);
  res.beta_min = best_beta;
  return res;
}

std::optional<Rational> ratio_at_beta(const TruthTable& f, const Rational& beta, const Rational& width,
                                      const DecideOptions& opts) {
  if (beta < rho(f)) return Rational(1);
  std::size_t calls = 0;
  if (!easy(f, Rational(1), beta, opts, calls)) return std::nullopt;
  if (beta >= 1) return std::nullopt;
  Rational g = bisect_gamma(f, beta, beta, Rational(1), width, opts, calls);
  return beta / g;
}

std::optional<PaddedPair> exists_padded_onewise_pair(const TruthTable& f, const Rational& gamma,
                                                     const Rational& beta, const DecideOptions& opts) {
  check_decide_args(f, gamma, beta);
  if (s_y_empty(f, gamma) || beta < rho(f)) return std::nullopt;
  const int k = f.arity();
  const unsigned N = f.size();
  const std::size_t E0 = 0, FY = N, FN = 2 * N;
  const BernTable table(f);
  auto build = [&](const std::vector<std::vector<Rational>>& values) {
    LinearProgram lp(3 * N, Sense::Minimize);
    add_mass_row(lp, {E0, FY}, N, Rational(1));
    add_mass_row(lp, {E0, FN}, N, Rational(1));
    const std::vector<Rational> zero(static_cast<std::size_t>(k), Rational(0));
    add_marginal_rows(lp, k, FY, zero);
    add_marginal_rows(lp, k, FN, zero);
    std::vector<Rational> ef(3 * N, Rational(0));
    for (unsigned a = 0; a < N; ++a) {
      if (f.at(a)) ef[E0 + a] = ef[FY + a] = 1;
    }
    lp.add_row(std::move(ef), Relation::GreaterEq, gamma);
    for (const auto& h : values) {
      std::vector<Rational> row(3 * N, Rational(0));
      for (unsigned b = 0; b < N; ++b) {
        row[E0 + b] = row[FN + b] = h[b];
        lp.objective[E0 + b] += h[b];
        lp.objective[FN + b] += h[b];
      }
      lp.add_row(std::move(row), Relation::LessEq, beta);
    }
    return lp;
  };
  auto no_side = [&](const std::vector<Rational>& x) {
    std::vector<Rational> w(N);
    for (unsigned b = 0; b < N; ++b) w[b] = x[E0 + b] + x[FN + b];
    return w;
  };
  std::vector<Rational> cuts = initial_cuts();
  CutOutcome out = cut_loop(table, beta, opts, cuts, build, no_side);
  if (!out.feasible) return std::nullopt;

  const auto& x = out.lp.primal;
  PaddedPair pair;
  pair.tau = 0;
  for (unsigned a = 0; a < N; ++a) pair.tau += x[E0 + a];
  const Dist zero_marg = canonical(MarginalVector(static_cast<std::size_t>(k), Rational(0)));
  auto normalized = [&](std::size_t off, const Rational& mass) {
    if (mass == 0) return zero_marg;
    std::vector<Rational> p(N);
    for (unsigned a = 0; a < N; ++a) p[a] = x[off + a] / mass;
    return Dist(k, std::move(p));
  };
  pair.d0 = normalized(E0, pair.tau);
  pair.dy_prime = normalized(FY, 1 - pair.tau);
  pair.dn_prime = normalized(FN, 1 - pair.tau);
  return pair;
}

std::optional<Rational> max_gamma_at_marginal(const TruthTable& f, const MarginalVector& mu) {
  const int k = f.arity();
  const unsigned N = f.size();
  if (mu.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("marginal vector must have k entries");
  LinearProgram lp(N, Sense::Maximize);
  for (unsigned a = 0; a < N; ++a) lp.objective[a] = f.at(a) ? 1 : 0;
  add_mass_row(lp, {0}, N, Rational(1));
  add_marginal_rows(lp, k, 0, mu);
  auto out = lp::solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return out.objective;
}

BetaBracket min_beta_at_marginal(const TruthTable& f, const MarginalVector& mu, const Rational& precision) {
  const int k = f.arity();
  const unsigned N = f.size();
  if (mu.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("marginal vector must have k entries");
  const BernTable table(f);
  std::vector<Rational> cuts = initial_cuts();
  std::vector<std::vector<Rational>> values;
  for (const auto& p : cuts) values.push_back(table.at(p));
  const std::size_t T = N;  // index of the free variable t
  for (std::size_t iter = 0; iter < 10000; ++iter) {
    LinearProgram lp(N + 1, Sense::Minimize);
    lp.set_free(T);
    lp.objective[T] = 1;
    add_mass_row(lp, {0}, N, Rational(1));
    add_marginal_rows(lp, k, 0, mu);
    for (const auto& h : values) {
      std::vector<Rational> row(N + 1, Rational(0));
      for (unsigned b = 0; b < N; ++b) row[b] = h[b];
      row[T] = -1;
      lp.add_row(std::move(row), Relation::LessEq, Rational(0));
    }
    auto out = lp::solve(lp);
    if (out.status != LpStatus::Optimal) throw std::invalid_argument("no distribution has these marginals");
    std::vector<Rational> d = slice(out.primal, 0, N);
    UnitMax um = max_on_unit_interval(bern_poly(d, table.basis()));
    if (um.bound - out.objective <= precision) return BetaBracket{out.objective, um.bound, Dist(k, d)};
    if (std::find(cuts.begin(), cuts.end(), um.argmax) != cuts.end()) {
      return BetaBracket{out.objective, um.bound, Dist(k, d)};
    }
    cuts.push_back(um.argmax);
    values.push_back(table.at(um.argmax));
  }
  throw IndeterminateError("min_beta_at_marginal did not converge", Rational(0));
}

}  // namespace cspstream
