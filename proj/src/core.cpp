#include "cspstream/core.hpp"

#include <limits>
#include <numeric>

namespace cspstream {

unsigned encode(const SignVec& a) {
  unsigned idx = 0;
  for (int v : a) {
    if (v != 1 && v != -1) throw std::invalid_argument("sign entries must be -1 or +1");
    idx = (idx << 1) | (v == 1 ? 1u : 0u);
  }
  return idx;
}

SignVec decode(unsigned index, int k) {
  SignVec a(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) a[static_cast<std::size_t>(t)] = (index & coord_bit(t, k)) ? 1 : -1;
  return a;
}

TruthTable::TruthTable(int k, std::uint64_t bits) : k_(k), bits_(bits) {
  if (k < 1 || k > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
  if (k < kMaxArity && (bits >> (1u << k)) != 0) throw std::invalid_argument("truth table has bits beyond 2^k");
}

TruthTable TruthTable::from_bitstring(const std::string& bits, int k) {
  if (k < 1 || k > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
  if (bits.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("truth table needs " + std::to_string(1u << k) + " bits, got " +
                                std::to_string(bits.size()));
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("truth table characters must be 0 or 1");
    }
  }
  return TruthTable(k, v);
}

std::string TruthTable::bitstring() const {
  std::string s(size(), '0');
  for (unsigned i = 0; i < size(); ++i) {
    if (at(i)) s[i] = '1';
  }
  return s;
}

int eval_f(const TruthTable& f, const SignVec& a) {
  if (static_cast<int>(a.size()) != f.arity()) {
    throw std::invalid_argument("eval_f: expected " + std::to_string(f.arity()) + " signs, got " +
                                std::to_string(a.size()));
  }
  return f.at(encode(a)) ? 1 : 0;
}

Rational rho(const TruthTable& f) {
  unsigned ones = 0;
  for (unsigned i = 0; i < f.size(); ++i) ones += f.at(i);
  return frac(ones, f.size());
}

Rational Instance::total_weight() const {
  Rational w = 0;
  for (const auto& c : constraints) w += c.weight;
  return w;
}

void validate(const Constraint& c, std::size_t n, int k) {
  if (static_cast<int>(c.indices.size()) != k || static_cast<int>(c.signs.size()) != k) {
    throw std::invalid_argument("constraint arity does not match k=" + std::to_string(k));
  }
  for (std::size_t t = 0; t < c.indices.size(); ++t) {
    if (c.indices[t] >= n) {
      throw std::out_of_range("variable index " + std::to_string(c.indices[t] + 1) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    if (c.signs[t] != 1 && c.signs[t] != -1) throw std::invalid_argument("constraint sign must be -1 or +1");
    for (std::size_t u = 0; u < t; ++u) {
      if (c.indices[u] == c.indices[t]) throw std::invalid_argument("constraint repeats a variable");
    }
  }
}

void validate(const Instance& psi) {
  if (psi.k < 1 || psi.k > kMaxArity) throw std::invalid_argument("arity must be in [1, 6]");
  for (const auto& wc : psi.constraints) {
    validate(wc.constraint, psi.n, psi.k);
    if (wc.weight < 0) throw std::invalid_argument("negative constraint weight");
  }
}

unsigned pattern_index(const Constraint& c, const Assignment& sigma) {
  unsigned idx = 0;
  for (std::size_t t = 0; t < c.indices.size(); ++t) {
    idx = (idx << 1) | (c.signs[t] * sigma.at(c.indices[t]) == 1 ? 1u : 0u);
  }
  return idx;
}

int constraint_value(const TruthTable& f, const Constraint& c, const Assignment& sigma) {
  validate(c, sigma.size(), f.arity());
  return f.at(pattern_index(c, sigma)) ? 1 : 0;
}

Rational value(const TruthTable& f, const Instance& psi, const Assignment& sigma) {
  if (sigma.size() != psi.n) throw std::invalid_argument("assignment length does not match n");
  if (psi.k != f.arity()) throw std::invalid_argument("instance arity does not match f");
  Rational w = psi.total_weight();
  if (w == 0) throw ZeroWeightError();
  Rational s = 0;
  for (const auto& wc : psi.constraints) {
    if (f.at(pattern_index(wc.constraint, sigma))) s += wc.weight;
  }
  return s / w;
}

Instance flip(const Instance& psi, const Assignment& a) {
  if (a.size() != psi.n) throw std::invalid_argument("flip vector length does not match n");
  Instance out = psi;
  for (auto& wc : out.constraints) {
    for (std::size_t t = 0; t < wc.constraint.indices.size(); ++t) {
      wc.constraint.signs[t] *= a[wc.constraint.indices[t]];
    }
  }
  return out;
}

namespace {

// Gray-code sweep; Weight is int64 (scaled) or Rational.
template <class Weight>
std::pair<Weight, std::uint64_t> gray_sweep(const TruthTable& f, const Instance& psi,
                                            const std::vector<Weight>& w) {
  const std::size_t n = psi.n;
  const int k = psi.k;
  const std::size_t m = psi.constraints.size();
  // occurrences[v] = list of (constraint, bit) pairs
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> occ(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = psi.constraints[i].constraint;
    for (int t = 0; t < k; ++t) occ[c.indices[static_cast<std::size_t>(t)]].emplace_back(i, coord_bit(t, k));
  }
  Assignment sigma(n, -1);
  std::vector<unsigned> pat(m);
  Weight cur = Weight(0);
  for (std::size_t i = 0; i < m; ++i) {
    pat[i] = pattern_index(psi.constraints[i].constraint, sigma);
    if (f.at(pat[i])) cur += w[i];
  }
  Weight best = cur;
  std::uint64_t best_mask = 0, mask = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t v = static_cast<std::size_t>(__builtin_ctzll(step));
    mask ^= std::uint64_t{1} << v;
    for (const auto& [i, bit] : occ[v]) {
      const bool before = f.at(pat[i]);
      pat[i] ^= bit;
      const bool after = f.at(pat[i]);
      if (before != after) {
        if (after) {
          cur += w[i];
        } else {
          cur -= w[i];
        }
      }
    }
    if (cur > best) {
      best = cur;
      best_mask = mask;
    }
  }
  return {best, best_mask};
}

}  // namespace

std::pair<Rational, Assignment> opt_value(const TruthTable& f, const Instance& psi) {
  validate(psi);
  if (psi.k != f.arity()) throw std::invalid_argument("instance arity does not match f");
  if (psi.n > kBruteForceMaxVars) {
    throw TooLargeError("brute force supports n <= 26, got n=" + std::to_string(psi.n));
  }
  const Rational W = psi.total_weight();
  if (W == 0) throw ZeroWeightError();

  // Scale weights to integers when everything fits in int64.
  BigInt den = 1;
  for (const auto& wc : psi.constraints) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), wc.weight.get_den_mpz_t());
  }
  BigInt scaled_total = W.get_num() * (den / W.get_den());
  const bool fits = scaled_total.fits_slong_p() && den.fits_slong_p();

  Rational best;
  std::uint64_t mask = 0;
  if (fits) {
    std::vector<long long> w;
    for (const auto& wc : psi.constraints) {
      BigInt s = wc.weight.get_num() * (den / wc.weight.get_den());
      w.push_back(s.get_si());
    }
    auto [b, mk] = gray_sweep<long long>(f, psi, w);
    best = Rational(BigInt(static_cast<long>(b)), den);
    mask = mk;
  } else {
    std::vector<Rational> w;
    for (const auto& wc : psi.constraints) w.push_back(wc.weight);
    auto [b, mk] = gray_sweep<Rational>(f, psi, w);
    best = b;
    mask = mk;
  }
  best.canonicalize();
  Assignment sigma(psi.n, -1);
  for (std::size_t v = 0; v < psi.n; ++v) {
    if ((mask >> v) & 1u) sigma[v] = 1;
  }
  return {best / W, sigma};
}

}  // namespace cspstream
