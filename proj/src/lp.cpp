#include "cspstream/lp.hpp"

#include <string>

namespace cspstream::lp {

namespace {

enum class VarKind { Shifted, Mirrored, Split };

struct VarMap {
  VarKind kind = VarKind::Shifted;
  std::size_t col = 0;  // first internal column
  Rational offset;      // lower bound (Shifted) or upper bound (Mirrored)
};

struct InternalRow {
  std::vector<Rational> coeffs;  // over structural columns
  Rational rhs;
  bool equality = false;
  long origin = -1;  // original row index, -1 for bound rows
};

// Row in <=-normal form: sign +1 keeps the row, -1 negates a >= row.
int normal_sign(Relation r) { return r == Relation::GreaterEq ? -1 : 1; }

std::vector<Rational> objective_for_max(const LinearProgram& lp) {
  std::vector<Rational> c = lp.objective;
  if (lp.sense == Sense::Minimize) {
    for (auto& v : c) v = -v;
  }
  return c;
}

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t num_cols)
      : t_(std::move(rows)), basis_(std::move(basis)), n_(num_cols) {}

  std::size_t rows() const { return t_.size(); }
  const Rational& at(std::size_t r, std::size_t c) const { return t_[r][c]; }
  const Rational& rhs(std::size_t r) const { return t_[r][n_]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  // Sets the reduced-cost row for cost vector c.
  void price(const std::vector<Rational>& c) {
    d_.assign(n_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) d_[j] = c[j];
    for (std::size_t r = 0; r < t_.size(); ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (t_[r][j] != 0) d_[j] -= cb * t_[r][j];
      }
    }
  }

  const Rational& reduced(std::size_t j) const { return d_[j]; }
  Rational value() const { return -d_[n_]; }

  void pivot(std::size_t r, std::size_t e) {
    std::vector<Rational>& prow = t_[r];
    Rational piv = prow[e];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (prow[j] != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[e] == 0) return;
      Rational factor = row[e];
      for (std::size_t j : nz) row[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) eliminate(t_[i]);
    }
    if (!d_.empty()) eliminate(d_);
    basis_[r] = e;
  }

  enum class Step { Optimal, Unbounded, Pivoted };

  // One Bland iteration. Columns >= allowed_cols never enter.
  Step iterate(std::size_t allowed_cols, std::size_t* unbounded_col) {
    std::size_t e = allowed_cols;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      if (d_[j] < 0) {
        e = j;
        break;
      }
    }
    if (e == allowed_cols) return Step::Optimal;
    long best = -1;
    Rational best_ratio;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (t_[r][e] <= 0) continue;
      Rational ratio = t_[r][n_] / t_[r][e];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[static_cast<std::size_t>(best)])) {
        best = static_cast<long>(r);
        best_ratio = ratio;
      }
    }
    if (best < 0) {
      *unbounded_col = e;
      return Step::Unbounded;
    }
    pivot(static_cast<std::size_t>(best), e);
    return Step::Pivoted;
  }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::size_t n_;
  std::vector<Rational> d_;
};

}  // namespace

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (lp.bounds.size() != n) {
    throw DimensionError("bounds has " + std::to_string(lp.bounds.size()) + " entries, expected " +
                         std::to_string(n));
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (lp.rows[i].coeffs.size() != n) {
      throw DimensionError("row " + std::to_string(i) + " has width " +
                           std::to_string(lp.rows[i].coeffs.size()) + ", expected " + std::to_string(n));
    }
  }
}

LpOutcome solve(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.num_vars();

  // Map original variables onto nonnegative internal columns.
  std::vector<VarMap> vars(n);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Bounds& b = lp.bounds[j];
    if (b.lower) {
      vars[j] = VarMap{VarKind::Shifted, ncols++, *b.lower};
    } else if (b.upper) {
      vars[j] = VarMap{VarKind::Mirrored, ncols++, *b.upper};
    } else {
      vars[j] = VarMap{VarKind::Split, ncols, Rational(0)};
      ncols += 2;
    }
  }

  auto substitute = [&](const std::vector<Rational>& a, Rational rhs) {
    InternalRow row;
    row.coeffs.assign(ncols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& c = a[j];
      if (c == 0) continue;
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarKind::Shifted:
          row.coeffs[v.col] += c;
          rhs -= c * v.offset;
          break;
        case VarKind::Mirrored:
          row.coeffs[v.col] -= c;
          rhs -= c * v.offset;
          break;
        case VarKind::Split:
          row.coeffs[v.col] += c;
          row.coeffs[v.col + 1] -= c;
          break;
      }
    }
    row.rhs = std::move(rhs);
    return row;
  };

  std::vector<InternalRow> irows;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Row& r = lp.rows[i];
    const int s = normal_sign(r.relation);
    std::vector<Rational> a = r.coeffs;
    Rational b = r.rhs;
    if (s < 0) {
      for (auto& v : a) v = -v;
      b = -b;
    }
    InternalRow row = substitute(a, b);
    row.equality = r.relation == Relation::Equal;
    row.origin = static_cast<long>(i);
    irows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Bounds& b = lp.bounds[j];
    if (b.lower && b.upper) {
      InternalRow row;
      row.coeffs.assign(ncols, Rational(0));
      row.coeffs[vars[j].col] = 1;
      row.rhs = *b.upper - *b.lower;
      irows.push_back(std::move(row));
    }
  }

  const std::size_t m = irows.size();
  std::vector<long> slack_col(m, -1);
  std::size_t nslack = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!irows[i].equality) slack_col[i] = static_cast<long>(ncols + nslack++);
  }
  const std::size_t art0 = ncols + nslack;
  const std::size_t total = art0 + m;

  std::vector<int> sigma(m, 1);
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    sigma[i] = irows[i].rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (irows[i].coeffs[j] != 0) t[i][j] = sigma[i] * irows[i].coeffs[j];
    }
    if (slack_col[i] >= 0) t[i][static_cast<std::size_t>(slack_col[i])] = sigma[i];
    t[i][art0 + i] = 1;
    t[i][total] = sigma[i] * irows[i].rhs;
    basis[i] = art0 + i;
  }

  Tableau tab(std::move(t), std::move(basis), total);

  // Internal dual y -> public multipliers on original rows.
  auto public_multipliers = [&](const std::vector<Rational>& y) {
    std::vector<Rational> out(lp.rows.size(), Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (irows[i].origin < 0) continue;
      out[static_cast<std::size_t>(irows[i].origin)] = -sigma[i] * y[i];
    }
    return out;
  };

  LpOutcome out;

  // Phase I.
  std::vector<Rational> cost1(total, Rational(0));
  for (std::size_t i = 0; i < m; ++i) cost1[art0 + i] = 1;
  tab.price(cost1);
  std::size_t dummy = 0;
  while (tab.iterate(total, &dummy) == Tableau::Step::Pivoted) {
  }
  if (tab.value() > 0) {
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = cost1[art0 + i] - tab.reduced(art0 + i);
    out.status = LpStatus::Infeasible;
    out.farkas = public_multipliers(y);
    return out;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < art0) continue;
    for (std::size_t j = 0; j < art0; ++j) {
      if (tab.at(r, j) != 0) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  // Phase II: minimize c' = -(max-form objective) over internal columns.
  const std::vector<Rational> cmax = objective_for_max(lp);
  std::vector<Rational> cost2(total, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    switch (v.kind) {
      case VarKind::Shifted:
        cost2[v.col] = -cmax[j];
        break;
      case VarKind::Mirrored:
        cost2[v.col] = cmax[j];
        break;
      case VarKind::Split:
        cost2[v.col] = -cmax[j];
        cost2[v.col + 1] = cmax[j];
        break;
    }
  }
  tab.price(cost2);
  std::size_t entering = 0;
  Tableau::Step step;
  while ((step = tab.iterate(art0, &entering)) == Tableau::Step::Pivoted) {
  }

  auto internal_to_original = [&](const std::vector<Rational>& xi, bool direction) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarKind::Shifted:
          x[j] = direction ? xi[v.col] : Rational(v.offset + xi[v.col]);
          break;
        case VarKind::Mirrored:
          x[j] = direction ? Rational(-xi[v.col]) : Rational(v.offset - xi[v.col]);
          break;
        case VarKind::Split:
          x[j] = xi[v.col] - xi[v.col + 1];
          break;
      }
    }
    return x;
  };

  if (step == Tableau::Step::Unbounded) {
    std::vector<Rational> dir(total, Rational(0));
    dir[entering] = 1;
    for (std::size_t r = 0; r < m; ++r) dir[tab.basic(r)] = -tab.at(r, entering);
    out.status = LpStatus::Unbounded;
    out.ray = internal_to_original(dir, true);
    return out;
  }

  std::vector<Rational> xi(total, Rational(0));
  for (std::size_t r = 0; r < m; ++r) xi[tab.basic(r)] = tab.rhs(r);
  std::vector<Rational> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = cost2[art0 + i] - tab.reduced(art0 + i);

  out.status = LpStatus::Optimal;
  out.primal = internal_to_original(xi, false);
  out.dual = public_multipliers(y);
  out.objective = dot(lp.objective, out.primal);
  return out;
}

bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.bounds[j].lower && x[j] < *lp.bounds[j].lower) return false;
    if (lp.bounds[j].upper && x[j] > *lp.bounds[j].upper) return false;
  }
  for (const Row& r : lp.rows) {
    Rational lhs = dot(r.coeffs, x);
    switch (r.relation) {
      case Relation::LessEq:
        if (lhs > r.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != r.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < r.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Combined normal-form row sum(y_i * a~_i), sum(y_i * b~_i); nullopt on bad signs.
std::optional<std::pair<std::vector<Rational>, Rational>> combine(const LinearProgram& lp,
                                                                  const std::vector<Rational>& y) {
  if (y.size() != lp.rows.size()) return std::nullopt;
  std::vector<Rational> a(lp.num_vars(), Rational(0));
  Rational b = 0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Row& r = lp.rows[i];
    if (r.relation != Relation::Equal && y[i] < 0) return std::nullopt;
    if (y[i] == 0) continue;
    const int s = normal_sign(r.relation);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += s * y[i] * r.coeffs[j];
    b += s * y[i] * r.rhs;
  }
  return std::make_pair(std::move(a), std::move(b));
}

// sup over the bound box of w.x, nullopt when unbounded.
std::optional<Rational> box_sup(const LinearProgram& lp, const std::vector<Rational>& w) {
  Rational s = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] > 0) {
      if (!lp.bounds[j].upper) return std::nullopt;
      s += w[j] * *lp.bounds[j].upper;
    } else if (w[j] < 0) {
      if (!lp.bounds[j].lower) return std::nullopt;
      s += w[j] * *lp.bounds[j].lower;
    }
  }
  return s;
}

}  // namespace

bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  auto comb = combine(lp, y);
  if (!comb) return false;
  auto& [a, b] = *comb;
  // min over box of a.x = -sup(-a.x)
  std::vector<Rational> neg(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) neg[j] = -a[j];
  auto sup = box_sup(lp, neg);
  if (!sup) return false;
  return -*sup > b;
}

std::optional<Rational> dual_objective(const LinearProgram& lp, const std::vector<Rational>& y) {
  auto comb = combine(lp, y);
  if (!comb) return std::nullopt;
  auto& [a, b] = *comb;
  std::vector<Rational> c = objective_for_max(lp);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] -= a[j];
  auto sup = box_sup(lp, c);
  if (!sup) return std::nullopt;
  return b + *sup;
}

bool verify_ray(const LinearProgram& lp, const std::vector<Rational>& r) {
  if (r.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (lp.bounds[j].lower && r[j] < 0) return false;
    if (lp.bounds[j].upper && r[j] > 0) return false;
  }
  for (const Row& row : lp.rows) {
    Rational lhs = dot(row.coeffs, r);
    if (row.relation == Relation::Equal && lhs != 0) return false;
    if (row.relation == Relation::LessEq && lhs > 0) return false;
    if (row.relation == Relation::GreaterEq && lhs < 0) return false;
  }
  return dot(objective_for_max(lp), r) > 0;
}

}  // namespace cspstream::lp
