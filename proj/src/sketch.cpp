#include "cspstream/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cspstream {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::int64_t kClamp = std::int64_t{1} << 50;  // |C| <= 2^30 after scaling by 2^20

}  // namespace

std::size_t L1Sketch::rows_for(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::invalid_argument("epsilon must be in (0, 1/2]");
  return static_cast<std::size_t>(std::ceil(48.0 / (epsilon * epsilon) - 1e-9));
}

L1Sketch::L1Sketch(std::size_t n, double epsilon, std::uint64_t seed)
    : n_(n), eps_(epsilon), seed_(seed), acc_(rows_for(epsilon), 0) {
  if (n == 0) throw std::invalid_argument("sketch dimension must be positive");
}

std::int64_t L1Sketch::quantized(std::size_t i, std::size_t row) const {
  const std::uint64_t h = mix(mix(seed_ ^ mix(static_cast<std::uint64_t>(i))) + static_cast<std::uint64_t>(row));
  // u in (0, 1), never 0 or 1
  const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  const double c = std::tan(std::numbers::pi * (u - 0.5));
  const double scaled = std::ldexp(c, kFractionBits);
  if (scaled >= static_cast<double>(kClamp)) return kClamp;
  if (scaled <= -static_cast<double>(kClamp)) return -kClamp;
  return std::llround(scaled);
}

double L1Sketch::entry(std::size_t i, std::size_t row) const {
  return std::ldexp(static_cast<double>(quantized(i, row)), -kFractionBits);
}

void L1Sketch::update(std::size_t i, std::int64_t v) {
  if (i < 1 || i > n_) {
    throw std::out_of_range("sketch index " + std::to_string(i) + " outside [1, " + std::to_string(n_) + "]");
  }
  if (v == 0) return;
  for (std::size_t r = 0; r < acc_.size(); ++r) {
    acc_[r] += static_cast<__int128>(quantized(i, r)) * v;
  }
}

double L1Sketch::estimate() const {
  std::vector<double> mags(acc_.size());
  for (std::size_t r = 0; r < acc_.size(); ++r) {
    const __int128 a = acc_[r] < 0 ? -acc_[r] : acc_[r];
    mags[r] = std::ldexp(static_cast<double>(a), -kFractionBits);
  }
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + static_cast<long>(mid), mags.end());
  if (mags.size() % 2 == 1) return mags[mid];
  const double hi = mags[mid];
  const double lo = *std::max_element(mags.begin(), mags.begin() + static_cast<long>(mid));
  return (lo + hi) / 2;
}

void L1Sketch::merge(const L1Sketch& other) {
  if (other.n_ != n_ || other.eps_ != eps_ || other.seed_ != seed_) {
    throw std::invalid_argument("merge needs sketches with equal dimension, epsilon and seed");
  }
  for (std::size_t r = 0; r < acc_.size(); ++r) acc_[r] += other.acc_[r];
}

}  // namespace cspstream
