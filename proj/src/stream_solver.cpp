#include "cspstream/stream_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cspstream {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

std::pair<BiasVector, Rational> exact_bias(const Instance& psi, const std::vector<Rational>& lambda) {
  validate(psi);
  if (lambda.size() != static_cast<std::size_t>(psi.k)) throw std::invalid_argument("lambda must have k entries");
  BiasVector bias;
  bias.total_weight = psi.total_weight();
  if (bias.total_weight == 0) throw ZeroWeightError();
  bias.entries.assign(psi.n, Rational(0));
  for (const auto& wc : psi.constraints) {
    const auto& c = wc.constraint;
    for (std::size_t t = 0; t < c.indices.size(); ++t) {
      bias.entries[c.indices[t]] += lambda[t] * wc.weight * c.signs[t];
    }
  }
  Rational B = 0;
  for (auto& v : bias.entries) {
    v /= bias.total_weight;
    B += abs(v);
  }
  return {std::move(bias), B};
}

ClassifierConfig make_config(const Hyperplane& h, std::uint64_t seed, std::size_t repetitions) {
  ClassifierConfig cfg;
  cfg.lambda = h.lambda;
  cfg.tau_y = h.tau_y;
  cfg.tau_n = h.tau_n;
  cfg.seed = seed;
  cfg.repetitions = repetitions;
  if (h.tau_n > 0) {
    Rational eps = (h.tau_y - h.tau_n) / (2 * (h.tau_y + h.tau_n));
    cfg.epsilon = eps.get_d();
    cfg.threshold = h.tau_n * (1 + eps);
  } else if (h.tau_n == 0) {
    cfg.epsilon = 0.25;
    cfg.threshold = h.tau_y / 2;
  } else {
    cfg.epsilon = 0.25;
    cfg.threshold = (h.tau_y + h.tau_n) / 2;
  }
  validate(cfg);
  return cfg;
}

void validate(const ClassifierConfig& cfg) {
  if (!(cfg.tau_y > cfg.tau_n)) throw std::invalid_argument("classifier needs tau_Y > tau_N");
  if (!(cfg.epsilon > 0)) throw std::invalid_argument("classifier needs epsilon > 0");
  if (cfg.repetitions == 0) throw std::invalid_argument("classifier needs at least one repetition");
  if (cfg.lambda.empty()) throw std::invalid_argument("classifier needs lambda");
}

ClassifyResult classify_exact(const Instance& psi, const ClassifierConfig& cfg) {
  validate(cfg);
  auto [bias, B] = exact_bias(psi, cfg.lambda);
  ClassifyResult r;
  r.answer = B > cfg.threshold ? Answer::Yes : Answer::No;
  r.b_estimate = B.get_d();
  r.threshold = cfg.threshold.get_d();
  return r;
}

StreamClassifier::StreamClassifier(std::size_t n, int k, const ClassifierConfig& cfg)
    : n_(n), k_(k), cfg_(cfg), sketch_eps_(std::min(cfg.epsilon, 0.5)), den_(1), counter_(n, k) {
  validate(cfg_);
  if (cfg_.lambda.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("lambda must have k entries");
  for (const auto& v : cfg_.lambda) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
  for (const auto& v : cfg_.lambda) {
    BigInt s = v.get_num() * (den_ / v.get_den());
    if (!s.fits_slong_p()) throw std::overflow_error("scaled lambda does not fit in 64 bits");
    scaled_.push_back(s.get_si());
  }
  for (std::size_t r = 0; r < cfg_.repetitions; ++r) sketches_.emplace_back(n, sketch_eps_, derive_seed(cfg_.seed, r));
}

void StreamClassifier::feed(const StreamEvent& e) {
  counter_.apply(e);
  const std::int64_t w = e.insert ? 1 : -1;
  for (std::size_t t = 0; t < e.constraint.indices.size(); ++t) {
    const std::int64_t v = w * scaled_[t] * e.constraint.signs[t];
    if (v == 0) continue;
    for (auto& s : sketches_) s.update(e.constraint.indices[t] + 1, v);
  }
}

ClassifyResult StreamClassifier::finish() const {
  if (counter_.total() <= 0) throw ZeroWeightError();
  std::vector<double> est;
  for (const auto& s : sketches_) est.push_back(s.estimate());
  ClassifyResult r;
  r.b_estimate = median(est) / (den_.get_d() * static_cast<double>(counter_.total()));
  r.threshold = cfg_.threshold.get_d();
  r.answer = r.b_estimate > r.threshold ? Answer::Yes : Answer::No;
  r.events = counter_.events();
  return r;
}

ClassifyResult classify_stream(const Stream& s, const ClassifierConfig& cfg) {
  StreamClassifier c(s.n, s.k, cfg);
  for (const auto& e : s.events) c.feed(e);
  return c.finish();
}

ValueEstimate estimate_value(const Stream& s, const TruthTable& f, const Rational& eps, std::uint64_t seed,
                             bool exact, const DecideOptions& opts) {
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("epsilon must be in (0, 1]");
  if (s.k != f.arity()) throw std::invalid_argument("stream arity does not match f");
  const Rational r = rho(f);
  ValueEstimate out;
  out.beta_prime = r;
  if (r == 0 || r == 1) {
    // rho = 0: tau = 0 and there is no grid; rho = 1: every value is 1.
    if (r == 0) throw std::invalid_argument("estimate_value needs rho(f) > 0");
    to_instance(s);
    return out;
  }
  const Rational tau = eps * r / 2;

  // Rows beta = i tau in [rho, 1), each paired with its smallest Easy gamma = j tau <= 1.
  struct Row {
    Rational beta;
    ClassifierConfig cfg;
  };
  std::vector<Row> rows;
  BigInt first;
  {
    Rational x = r / tau;
    mpz_cdiv_q(first.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  }
  long j = 0;
  for (long i = first.get_si();; ++i) {
    const Rational beta = tau * i;
    if (beta >= 1) break;
    j = std::max(j, i + 1);
    while (tau * j <= 1 && intersects(f, tau * j, beta, opts)) ++j;
    if (tau * j > 1) break;
    Hyperplane h = extract_hyperplane(f, tau * j, beta, opts);
    rows.push_back({beta, make_config(h, derive_seed(seed, static_cast<std::uint64_t>(i)))});
  }
  out.distinguishers = rows.size();

  std::vector<Answer> answers;
  if (exact) {
    const Instance psi = to_instance(s);
    for (const auto& row : rows) answers.push_back(classify_exact(psi, row.cfg).answer);
  } else {
    std::size_t cells = 0;
    for (const auto& row : rows) cells += L1Sketch::rows_for(std::min(row.cfg.epsilon, 0.5)) * row.cfg.repetitions;
    if (cells > kMaxSketchCells) {
      throw TooLargeError("sketches for this grid need " + std::to_string(cells) +
                          " accumulators; use a larger epsilon or the exact mode");
    }
    std::vector<StreamClassifier> cls;
    for (const auto& row : rows) cls.emplace_back(s.n, s.k, row.cfg);
    TurnstileCounter check(s.n, s.k);
    for (const auto& e : s.events) {
      check.apply(e);
      for (auto& c : cls) c.feed(e);
    }
    if (check.total() <= 0) throw ZeroWeightError();
    for (const auto& c : cls) answers.push_back(c.finish().answer);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (answers[i] == Answer::Yes) {
      ++out.accepted;
      out.beta_prime = std::max(out.beta_prime, rows[i].beta);
    }
  }
  return out;
}

}  // namespace cspstream
