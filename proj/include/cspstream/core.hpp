#pragma once

// Constraint functions, instances and exact evaluation.

#include "cspstream/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cspstream {

/// Entries are -1 or +1.
using SignVec = std::vector<int>;
using Assignment = SignVec;

constexpr int kMaxArity = 6;

class ZeroWeightError : public std::domain_error {
 public:
  ZeroWeightError() : std::domain_error("instance has zero total weight") {}
};

class TooLargeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Index of a sign vector: a_j = -1 -> bit 0, a_j = 1 -> bit 1, first
/// coordinate most significant. Index 0 is (-1,...,-1).
unsigned encode(const SignVec& a);
SignVec decode(unsigned index, int k);

/// Bit of coordinate t (0-based) inside an index.
inline unsigned coord_bit(int t, int k) { return 1u << (k - 1 - t); }

/// Index of b (.) a, the coordinatewise product.
inline unsigned odot(unsigned b, unsigned a, int k) { return ~(b ^ a) & ((1u << k) - 1u); }

class TruthTable {
 public:
  TruthTable() = default;
  TruthTable(int k, std::uint64_t bits);

  /// Character i of `bits` is f at index i.
  static TruthTable from_bitstring(const std::string& bits, int k);

  int arity() const { return k_; }
  unsigned size() const { return 1u << k_; }
  std::uint64_t bits() const { return bits_; }
  bool at(unsigned index) const { return (bits_ >> index) & 1u; }
  std::string bitstring() const;

  bool operator==(const TruthTable&) const = default;

 private:
  int k_ = 0;
  std::uint64_t bits_ = 0;
};

/// f(a), with a length check.
int eval_f(const TruthTable& f, const SignVec& a);

Rational rho(const TruthTable& f);

/// 0-based variable ids.
struct Constraint {
  std::vector<std::size_t> indices;
  SignVec signs;

  bool operator==(const Constraint&) const = default;
};

struct WeightedConstraint {
  Constraint constraint;
  Rational weight;
};

struct Instance {
  std::size_t n = 0;
  int k = 0;
  std::vector<WeightedConstraint> constraints;

  Rational total_weight() const;
};

/// Throws std::invalid_argument on out-of-range or repeated ids, bad signs or negative weights.
void validate(const Constraint& c, std::size_t n, int k);
void validate(const Instance& psi);

int constraint_value(const TruthTable& f, const Constraint& c, const Assignment& sigma);

/// Index of the pattern b (.) sigma|_j.
unsigned pattern_index(const Constraint& c, const Assignment& sigma);

Rational value(const TruthTable& f, const Instance& psi, const Assignment& sigma);

constexpr std::size_t kBruteForceMaxVars = 26;

/// Exact max over all 2^n assignments and one maximizer.
std::pair<Rational, Assignment> opt_value(const TruthTable& f, const Instance& psi);

/// Psi^a: every sign pattern b(i) replaced by a|_j(i) (.) b(i).
Instance flip(const Instance& psi, const Assignment& a);

}  // namespace cspstream
