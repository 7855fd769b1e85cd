#include "cspstream/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cspstream {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign(const Rational& v) { return sgn(v); }

// Remainder of a / b, b nonzero.
Poly remainder(Poly a, const Poly& b) {
  const int db = b.degree();
  while (a.degree() >= db) {
    const int shift = a.degree() - db;
    Rational factor = a.c.back() / b.c.back();
    for (int i = 0; i <= db; ++i) a.c[static_cast<std::size_t>(i + shift)] -= factor * b.c[static_cast<std::size_t>(i)];
    a.c.back() = 0;
    trim(a.c);
  }
  return a;
}

class Sturm {
 public:
  explicit Sturm(const Poly& q) {
    seq_.push_back(q);
    seq_.push_back(q.derivative());
    while (!seq_.back().is_zero()) {
      Poly r = remainder(seq_[seq_.size() - 2], seq_.back());
      for (auto& v : r.c) v = -v;
      seq_.push_back(std::move(r));
    }
    seq_.pop_back();
  }

  int changes(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& s : seq_) {
      int v = sign(s(x));
      if (v == 0) continue;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  }

  // Distinct roots in (a, b]; a, b must not be roots.
  int count(const Rational& a, const Rational& b) const { return changes(a) - changes(b); }

 private:
  std::vector<Poly> seq_;
};

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(c); }

Rational Poly::operator()(const Rational& p) const {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * p + *it;
  return acc;
}

double Poly::eval(double p) const {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * p + it->get_d();
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c[i]);
  return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (c.size() < o.c.size()) c.resize(o.c.size(), Rational(0));
  for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
  trim(c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  }
  return Poly(std::move(out));
}

Poly operator*(const Rational& s, const Poly& a) {
  std::vector<Rational> out = a.c;
  for (auto& v : out) v *= s;
  return Poly(std::move(out));
}

std::vector<std::pair<Rational, Rational>> isolate_roots(const Poly& q, const Rational& lo, const Rational& hi,
                                                         const Rational& width) {
  if (q.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  std::vector<std::pair<Rational, Rational>> out;
  if (q.degree() == 0) return out;

  // Outer endpoints that are not roots.
  Rational a = lo - Rational(1, 2), b = hi + Rational(1, 2);
  while (q(a) == 0) a = (a + lo) / 2 - 1;
  while (q(b) == 0) b = (b + hi) / 2 + 1;

  const Sturm sturm(q);
  std::vector<std::pair<Rational, Rational>> found;

  auto refine = [&](Rational l, Rational r) {
    Rational ql = q(l), qr = q(r);
    const bool sign_change = sign(ql) != sign(qr);
    while (r - l > width) {
      Rational m = (l + r) / 2;
      Rational qm = q(m);
      if (qm == 0) {
        found.emplace_back(m, m);
        return;
      }
      bool left;
      if (sign_change) {
        left = sign(qm) != sign(ql);
      } else {
        left = sturm.count(l, m) == 1;
      }
      if (left) {
        r = m;
      } else {
        l = m;
        ql = qm;
      }
    }
    Rational s = simplest_between(l, r);
    if (q(s) == 0) {
      found.emplace_back(s, s);
    } else {
      found.emplace_back(l, r);
    }
  };

  struct Job {
    Rational l, r;
    int n;
  };
  std::vector<Job> stack;
  int total = sturm.count(a, b);
  if (total > 0) stack.push_back({a, b, total});
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.r < lo || job.l > hi) continue;
    if (job.n == 1) {
      refine(job.l, job.r);
      continue;
    }
    Rational m = (job.l + job.r) / 2;
    if (q(m) != 0) {
      int left = sturm.count(job.l, m);
      if (left > 0) stack.push_back({job.l, m, left});
      if (job.n - left > 0) stack.push_back({m, job.r, job.n - left});
      continue;
    }
    found.emplace_back(m, m);
    // Step away from the exact root until both sides are clean.
    Rational h = (job.r - job.l) / 4;
    for (;;) {
      Rational ml = m - h, mr = m + h;
      if (q(ml) != 0 && q(mr) != 0) {
        int left = sturm.count(job.l, ml);
        int right = sturm.count(mr, job.r);
        if (left + right + 1 == job.n) {
          if (left > 0) stack.push_back({job.l, ml, left});
          if (right > 0) stack.push_back({mr, job.r, right});
          break;
        }
      }
      h /= 2;
    }
  }

  for (auto& [l, r] : found) {
    if (r < lo || l > hi) continue;
    out.emplace_back(std::max(l, lo), std::min(r, hi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

UnitMax max_on_unit_interval(const Poly& q) {
  const Rational zero(0), one(1);
  if (q.degree() <= 0) {
    Rational v = q(zero);
    return UnitMax{zero, v, true};
  }
  const Poly d = q.derivative();
  Rational lip = 0;
  for (const auto& v : d.c) lip += abs(v);

  UnitMax best{zero, q(zero), true};
  Rational best_point = best.bound;
  auto consider = [&](const Rational& p, const Rational& point_value, const Rational& bound) {
    if (point_value > best_point) {
      best_point = point_value;
      best.argmax = p;
    }
    if (bound > best.bound) best.bound = bound;
  };
  {
    Rational v1 = q(one);
    consider(one, v1, v1);
  }
  // 2^-40 < 1e-12
  Rational width(1);
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 40);
  for (const auto& [l, r] : isolate_roots(d, zero, one, width)) {
    if (l == r) {
      Rational v = q(l);
      consider(l, v, v);
      continue;
    }
    Rational p = simplest_between(l, r);
    Rational bound = std::max(q(l), q(r)) + lip * (r - l) / 2;
    consider(p, q(p), bound);
  }
  best.exact = best.bound == best_point;
  return best;
}

}  // namespace cspstream
