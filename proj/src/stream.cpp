#include "cspstream/stream.hpp"

#include <algorithm>

namespace cspstream {

void TurnstileCounter::apply(const StreamEvent& e) {
  validate(e.constraint, n_, k_);
  auto key = std::make_pair(e.constraint.indices, e.constraint.signs);
  auto it = weights_.find(key);
  if (e.insert) {
    if (it == weights_.end()) {
      weights_.emplace(std::move(key), std::make_pair(next_order_++, 1LL));
    } else {
      ++it->second.second;
    }
    ++total_;
  } else {
    if (it == weights_.end() || it->second.second == 0) {
      throw TurnstileError("delete of a constraint with zero weight at event " + std::to_string(seen_ + 1), seen_);
    }
    --it->second.second;
    --total_;
  }
  ++seen_;
}

long long TurnstileCounter::weight(const Constraint& c) const {
  auto it = weights_.find(std::make_pair(c.indices, c.signs));
  return it == weights_.end() ? 0 : it->second.second;
}

Instance TurnstileCounter::instance() const {
  std::vector<std::pair<std::size_t, WeightedConstraint>> items;
  for (const auto& [key, val] : weights_) {
    if (val.second == 0) continue;
    items.push_back({val.first, WeightedConstraint{Constraint{key.first, key.second}, Rational(static_cast<long>(val.second))}});
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Instance psi;
  psi.n = n_;
  psi.k = k_;
  for (auto& it : items) psi.constraints.push_back(std::move(it.second));
  return psi;
}

std::size_t valid_prefix(const Stream& s) {
  TurnstileCounter c(s.n, s.k);
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    try {
      c.apply(s.events[i]);
    } catch (const TurnstileError&) {
      return i;
    }
  }
  return s.events.size();
}

Instance to_instance(const Stream& s) {
  TurnstileCounter c(s.n, s.k);
  for (const auto& e : s.events) c.apply(e);
  return c.instance();
}

Stream from_instance(const Instance& psi) {
  validate(psi);
  Stream s;
  s.n = psi.n;
  s.k = psi.k;
  for (const auto& wc : psi.constraints) {
    if (wc.weight.get_den() != 1) throw std::invalid_argument("stream form needs integer weights");
    const long count = wc.weight.get_num().get_si();
    for (long i = 0; i < count; ++i) s.events.push_back(StreamEvent{true, wc.constraint});
  }
  return s;
}

}  // namespace cspstream
