#include "cspstream/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cspstream {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    BigInt d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(num), 10), d);
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = body.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) {
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      }
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
      body = body.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      auto int_part = body.substr(0, dot);
      auto frac_part = body.substr(dot + 1);
      if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
          (int_part.empty() && frac_part.empty())) {
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      }
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      digits = std::string(body);
    }
    BigInt mant(digits, 10);
    long shift = exponent - frac_len;
    if (shift >= 0) {
      out = Rational(mant * pow10(shift));
    } else {
      out = Rational(mant, pow10(-shift));
    }
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Stern-Brocot descent, done with continued fractions so it stays fast for
// tight intervals.
Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  if (lo_in > hi_in) return simplest_between(hi_in, lo_in);
  if (lo_in <= 0 && hi_in >= 0) return Rational(0);
  if (hi_in < 0) return Rational(-simplest_between(Rational(-hi_in), Rational(-lo_in)));

  // 0 < lo <= hi
  Rational lo = lo_in, hi = hi_in;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // Both lie in (fl, fl+1): recurse on reciprocals of the fractional parts.
  Rational inner = simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  Rational out = Rational(fl) + Rational(1) / inner;
  out.canonicalize();
  return out;
}

Rational approximate(double x, unsigned long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("approximate: non-finite value");
  Rational exact(x);
  // Convergents of the continued fraction of `exact`.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = exact;
  Rational best = Rational(BigInt(mpz_class(std::floor(x))));
  for (int iter = 0; iter < 200; ++iter) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    best = Rational(p2, q2);
    best.canonicalize();
    Rational frac = rest - a;
    if (frac == 0) break;
    rest = Rational(1) / frac;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return best;
}

}  // namespace cspstream
