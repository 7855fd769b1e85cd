#pragma once

// Bias-based streaming classifier and the multi-distinguisher value estimator.

#include "cspstream/separability.hpp"
#include "cspstream/sketch.hpp"
#include "cspstream/stream.hpp"

#include <memory>

namespace cspstream {

struct BiasVector {
  std::vector<Rational> entries;  // length n
  Rational total_weight;
};

/// bias_l = (1/W) sum_{i,t: j(i)_t = l} lambda_t w_i b(i)_t, and its l1 norm B.
std::pair<BiasVector, Rational> exact_bias(const Instance& psi, const std::vector<Rational>& lambda);

enum class Answer { No, Yes };

struct ClassifierConfig {
  std::vector<Rational> lambda;
  Rational tau_y;
  Rational tau_n;
  double epsilon = 0.25;
  Rational threshold;  // YES iff B > threshold
  std::size_t repetitions = 9;
  std::uint64_t seed = 0;
};

/// Thresholds from a separating hyperplane:
///   tau_N > 0:  eps = (tau_Y - tau_N) / (2 (tau_Y + tau_N)), threshold tau_N (1 + eps)
///   tau_N = 0:  eps = 1/4, threshold tau_Y / 2
///   tau_N < 0:  eps = 1/4, threshold (tau_Y + tau_N) / 2
ClassifierConfig make_config(const Hyperplane& h, std::uint64_t seed, std::size_t repetitions = 9);

void validate(const ClassifierConfig& cfg);

struct ClassifyResult {
  Answer answer = Answer::No;
  double b_estimate = 0;  // B~ (sketch) or B (exact)
  double threshold = 0;
  std::size_t events = 0;
};

/// Exact-bias reference.
ClassifyResult classify_exact(const Instance& psi, const ClassifierConfig& cfg);

/// One-pass sketch classifier over a dynamic stream.
class StreamClassifier {
 public:
  StreamClassifier(std::size_t n, int k, const ClassifierConfig& cfg);

  /// Throws TurnstileError on a strict-turnstile violation.
  void feed(const StreamEvent& e);

  /// Throws ZeroWeightError if the stream ends empty.
  ClassifyResult finish() const;

  double sketch_epsilon() const { return sketch_eps_; }

 private:
  std::size_t n_;
  int k_;
  ClassifierConfig cfg_;
  double sketch_eps_;
  std::vector<std::int64_t> scaled_;  // lambda * den
  BigInt den_;
  std::vector<L1Sketch> sketches_;
  TurnstileCounter counter_;
};

ClassifyResult classify_stream(const Stream& s, const ClassifierConfig& cfg);

struct ValueEstimate {
  Rational beta_prime;
  std::size_t distinguishers = 0;
  std::size_t accepted = 0;
};

/// Upper bound on sketch accumulators estimate_value will allocate (16 bytes each).
constexpr std::size_t kMaxSketchCells = std::size_t{1} << 26;

/// beta' = max(rho, largest beta whose distinguisher says YES), over the grid of
/// multiples of tau = eps rho / 2. One distinguisher per beta, at its smallest Easy gamma.
/// Sketch size follows each hyperplane's relative margin, which shrinks near the
/// boundary; throws TooLargeError past kMaxSketchCells.
ValueEstimate estimate_value(const Stream& s, const TruthTable& f, const Rational& eps, std::uint64_t seed,
                             bool exact = false, const DecideOptions& opts = {});

}  // namespace cspstream
