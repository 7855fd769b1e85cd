#include "cspstream/genhard.hpp"

#include <algorithm>
#include <numeric>

namespace cspstream {

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kXStar = 1, kBlock = 2, kPrefix = 3;

SignVec apply_mask(const Assignment& x, const std::vector<std::size_t>& e, unsigned mask, int k) {
  SignVec z(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    const int b = (mask & coord_bit(t, k)) ? 1 : -1;
    z[static_cast<std::size_t>(t)] = x[e[static_cast<std::size_t>(t)]] * b;
  }
  return z;
}

}  // namespace

void validate(const GenParams& p) {
  if (p.k < 1 || p.k > kMaxArity) throw std::invalid_argument("k must be in [1, 6]");
  if (p.n == 0) throw std::invalid_argument("n must be positive");
  if (p.T == 0) throw std::invalid_argument("T must be positive");
  if (!(p.alpha_m > 0) || p.alpha_m * p.k > 1) throw std::invalid_argument("alpha_m must be in (0, 1/k]");
  if (p.mask_dist.k != p.k) throw std::invalid_argument("mask distribution arity differs from k");
  validate(p.mask_dist);
  if (p.tau < 0 || p.tau >= 1) throw std::invalid_argument("tau must be in [0, 1)");
  if (p.tau > 0) {
    if (!p.pad_dist) throw std::invalid_argument("tau > 0 needs a padding distribution");
    if (p.pad_dist->k != p.k) throw std::invalid_argument("padding distribution arity differs from k");
    validate(*p.pad_dist);
    if (p.n < static_cast<std::size_t>(p.k)) throw std::invalid_argument("n must be at least k");
  }
  if (block_size(p) == 0) throw std::invalid_argument("floor(alpha_m n) must be at least 1");
}

std::size_t block_size(const GenParams& p) {
  Rational x = p.alpha_m * static_cast<unsigned long>(p.n);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_ui();
}

std::size_t prefix_size(const GenParams& p) {
  if (p.tau == 0) return 0;
  Rational x = p.tau / (1 - p.tau) * static_cast<unsigned long>(block_size(p)) * static_cast<unsigned long>(p.T);
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_ui();
}

DistSampler::DistSampler(const Dist& d) {
  validate(d);
  BigInt den = 1;
  for (const auto& v : d.p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  if (den.fits_ulong_p()) {
    std::uint64_t acc = 0;
    for (const auto& v : d.p) {
      acc += BigInt(v.get_num() * (den / v.get_den())).get_ui();
      cumulative_.push_back(acc);
    }
    total_ = acc;
  }
  for (const auto& v : d.p) weights_.push_back(v.get_d());
}

unsigned DistSampler::operator()(std::mt19937_64& rng) const {
  if (!cumulative_.empty()) {
    std::uniform_int_distribution<std::uint64_t> u(0, total_ - 1);
    const std::uint64_t x = u(rng);
    return static_cast<unsigned>(std::upper_bound(cumulative_.begin(), cumulative_.end(), x) - cumulative_.begin());
  }
  std::discrete_distribution<unsigned> dd(weights_.begin(), weights_.end());
  return dd(rng);
}

Assignment planted_assignment(const GenParams& p) {
  auto rng = rng_for(p.seed, kXStar, 0);
  std::bernoulli_distribution coin(0.5);
  Assignment x(p.n);
  for (auto& v : x) v = coin(rng) ? 1 : -1;
  return x;
}

RmdBlock gen_rmd_block(const GenParams& p, const Assignment& x_star, std::size_t index) {
  validate(p);
  if (x_star.size() != p.n) throw std::invalid_argument("x_star length does not match n");
  auto rng = rng_for(p.seed, kBlock, index);
  const std::size_t m = block_size(p);
  std::vector<std::size_t> perm(p.n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  const DistSampler sample(p.mask_dist);
  RmdBlock block;
  block.x_star = x_star;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> e(perm.begin() + static_cast<long>(i * p.k),
                               perm.begin() + static_cast<long>((i + 1) * p.k));
    const unsigned mask = sample(rng);
    block.z.push_back(apply_mask(x_star, e, mask, p.k));
    block.edges.push_back(std::move(e));
    block.masks.push_back(mask);
  }
  return block;
}

RmdBlock gen_rmd_block(const GenParams& p) { return gen_rmd_block(p, planted_assignment(p), 0); }

namespace {

void append_block(Generated& g, const RmdBlock& b) {
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    g.stream.events.push_back(StreamEvent{true, Constraint{b.edges[i], b.z[i]}});
    g.masks.push_back(b.masks[i]);
  }
}

Generated empty_for(const GenParams& p) {
  Generated g;
  g.stream.n = p.n;
  g.stream.k = p.k;
  g.x_star = planted_assignment(p);
  return g;
}

}  // namespace

Generated gen_rmd(const GenParams& p) {
  validate(p);
  Generated g = empty_for(p);
  append_block(g, gen_rmd_block(p, g.x_star, 0));
  return g;
}

Generated gen_streaming_rmd(const GenParams& p) {
  validate(p);
  Generated g = empty_for(p);
  for (std::size_t t = 0; t < p.T; ++t) append_block(g, gen_rmd_block(p, g.x_star, t));
  return g;
}

Generated gen_padded(const GenParams& p) {
  validate(p);
  Generated g = empty_for(p);
  const std::size_t count = prefix_size(p);
  if (count > 0) {
    auto rng = rng_for(p.seed, kPrefix, 0);
    const DistSampler sample(*p.pad_dist);
    std::vector<std::size_t> ids(p.n);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
      // Partial Fisher-Yates: a uniformly random ordered tuple of distinct ids.
      for (int t = 0; t < p.k; ++t) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(t), p.n - 1);
        std::swap(ids[static_cast<std::size_t>(t)], ids[pick(rng)]);
      }
      std::vector<std::size_t> e(ids.begin(), ids.begin() + p.k);
      const unsigned mask = sample(rng);
      g.stream.events.push_back(StreamEvent{true, Constraint{e, apply_mask(g.x_star, e, mask, p.k)}});
      g.masks.push_back(mask);
    }
  }
  g.prefix = count;
  for (std::size_t t = 0; t < p.T; ++t) append_block(g, gen_rmd_block(p, g.x_star, t));
  return g;
}

}  // namespace cspstream
