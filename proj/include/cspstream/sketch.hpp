#pragma once

// Cauchy-projection l1 sketch for strict-turnstile integer vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cspstream {

/// Projection entries are regenerated from (seed, i, row) on demand. They are
/// quantized to a fixed-point grid and accumulated in 128-bit integers, so
/// insert/delete cancel exactly and update order does not matter.
class L1Sketch {
 public:
  static constexpr int kFractionBits = 20;

  /// 0 < epsilon <= 1/2. Rows = ceil(48 / epsilon^2).
  L1Sketch(std::size_t n, double epsilon, std::uint64_t seed);

  static std::size_t rows_for(double epsilon);

  /// x_i += v, with 1 <= i <= n.
  void update(std::size_t i, std::int64_t v);

  /// Median over rows of |acc_r|.
  double estimate() const;

  /// Same (n, epsilon, seed) required.
  void merge(const L1Sketch& other);

  /// Projection entry C(seed, i, row) as used by update (after quantization).
  double entry(std::size_t i, std::size_t row) const;

  std::size_t dimension() const { return n_; }
  std::size_t rows() const { return acc_.size(); }
  double epsilon() const { return eps_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<__int128>& accumulators() const { return acc_; }

 private:
  std::int64_t quantized(std::size_t i, std::size_t row) const;

  std::size_t n_;
  double eps_;
  std::uint64_t seed_;
  std::vector<__int128> acc_;
};

}  // namespace cspstream
