#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cspstream {

/// Exact rational number. Arithmetic keeps values canonical; the two-argument
/// constructor does not, so build fractions with frac().
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", an integer, or a plain decimal ("0.25", "-1.5", "1e-9").
/// Decimals are converted exactly, not through a double.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms.
Rational frac(long num, long den);

std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Closest rational to `x` with denominator at most `max_den` (continued fractions).
Rational approximate(double x, unsigned long max_den);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

Rational abs(const Rational& value);

}  // namespace cspstream
