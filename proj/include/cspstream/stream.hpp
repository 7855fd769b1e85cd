#pragma once

// Dynamic constraint streams and the strict-turnstile rule.

#include "cspstream/core.hpp"

#include <map>
#include <stdexcept>

namespace cspstream {

struct StreamEvent {
  bool insert = true;
  Constraint constraint;  // 0-based indices

  bool operator==(const StreamEvent&) const = default;
};

struct Stream {
  std::size_t n = 0;
  int k = 0;
  std::vector<StreamEvent> events;

  bool operator==(const Stream&) const = default;
};

class TurnstileError : public std::runtime_error {
 public:
  TurnstileError(const std::string& what, std::size_t event) : std::runtime_error(what), event_index(event) {}
  std::size_t event_index;
};

/// Tracks the running weight of every distinct constraint.
class TurnstileCounter {
 public:
  TurnstileCounter(std::size_t n, int k) : n_(n), k_(k) {}

  /// Throws TurnstileError (and leaves the state unchanged) if a delete would go negative.
  void apply(const StreamEvent& e);

  long long weight(const Constraint& c) const;
  long long total() const { return total_; }
  std::size_t events() const { return seen_; }

  /// Surviving constraints with positive weight, in order of first insertion.
  Instance instance() const;

 private:
  std::size_t n_;
  int k_;
  std::map<std::pair<std::vector<std::size_t>, SignVec>, std::pair<std::size_t, long long>> weights_;
  std::size_t next_order_ = 0;
  long long total_ = 0;
  std::size_t seen_ = 0;
};

/// Length of the longest strict-turnstile prefix (== events.size() when valid).
std::size_t valid_prefix(const Stream& s);

/// Psi(sigma): accumulated weights of the stream.
Instance to_instance(const Stream& s);

Stream from_instance(const Instance& psi);

}  // namespace cspstream
