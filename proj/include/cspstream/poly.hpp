#pragma once

// Univariate rational polynomials and their maximum on [0,1].

#include "cspstream/rational.hpp"

#include <vector>

namespace cspstream {

/// Monomial basis: c[i] is the coefficient of p^i. Trailing zeros are trimmed.
struct Poly {
  std::vector<Rational> c;

  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c.empty(); }
  Rational operator()(const Rational& p) const;
  double eval(double p) const;
  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& a);
  bool operator==(const Poly& o) const { return c == o.c; }
};

struct UnitMax {
  Rational argmax;  // within 1e-12 of a maximizer
  Rational bound;   // certified upper bound on max_{[0,1]} q, within 1e-10 of it
  bool exact = false;  // bound == q(argmax)
};

UnitMax max_on_unit_interval(const Poly& q);

/// Real roots of q in [lo, hi], each isolated to width <= width. Exact roots
/// come back as degenerate intervals.
std::vector<std::pair<Rational, Rational>> isolate_roots(const Poly& q, const Rational& lo, const Rational& hi,
                                                         const Rational& width);

}  // namespace cspstream
