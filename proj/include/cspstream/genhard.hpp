#pragma once

// RMD, streaming-RMD and padded streaming-RMD instance generators.

#include "cspstream/dist.hpp"
#include "cspstream/stream.hpp"

#include <optional>
#include <random>

namespace cspstream {

struct GenParams {
  std::size_t n = 0;
  int k = 2;
  Rational alpha_m;  // hyperedges per block = floor(alpha_m n)
  std::size_t T = 1;
  Dist mask_dist;
  std::optional<Dist> pad_dist;
  Rational tau = 0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on bad parameters.
void validate(const GenParams& p);

std::size_t block_size(const GenParams& p);

/// ceil(tau / (1 - tau) * block_size * T).
std::size_t prefix_size(const GenParams& p);

struct RmdBlock {
  Assignment x_star;
  std::vector<std::vector<std::size_t>> edges;  // 0-based, pairwise disjoint
  std::vector<unsigned> masks;                  // pattern index of b(i)
  std::vector<SignVec> z;                       // x_star|_e (.) b
};

/// Exact sampler for a rational distribution.
class DistSampler {
 public:
  explicit DistSampler(const Dist& d);
  unsigned operator()(std::mt19937_64& rng) const;

 private:
  std::vector<std::uint64_t> cumulative_;  // exact path, empty if it does not fit
  std::uint64_t total_ = 0;
  std::vector<double> weights_;
};

Assignment planted_assignment(const GenParams& p);

/// Block `index` (0-based) against a given x_star.
RmdBlock gen_rmd_block(const GenParams& p, const Assignment& x_star, std::size_t index);
RmdBlock gen_rmd_block(const GenParams& p);

struct Generated {
  Stream stream;
  Assignment x_star;
  std::vector<unsigned> masks;  // per event
  std::size_t prefix = 0;       // leading padding events
};

Generated gen_streaming_rmd(const GenParams& p);
Generated gen_padded(const GenParams& p);

/// Stream of a single block.
Generated gen_rmd(const GenParams& p);

}  // namespace cspstream
