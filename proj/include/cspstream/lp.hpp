#pragma once

// Exact rational linear programming (dense two-phase simplex, Bland's rule).

#include "cspstream/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cspstream::lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

struct Bounds {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

struct Row {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// Variables default to x >= 0. Use `set_free` / `bounds[j]` to change that.
struct LinearProgram {
  Sense sense = Sense::Maximize;
  std::vector<Rational> objective;
  std::vector<Row> rows;
  std::vector<Bounds> bounds;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_vars, Sense s = Sense::Maximize)
      : sense(s), objective(num_vars, Rational(0)), bounds(num_vars) {}

  std::size_t num_vars() const { return objective.size(); }

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }
  void set_free(std::size_t j) { bounds.at(j) = Bounds{std::nullopt, std::nullopt}; }
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Dual and Farkas vectors use the "<=-normal form" of each row: a >= row is
/// read as -a.x <= -b. Multipliers of inequality rows are >= 0; equality rows
/// are free. Variable bounds are not given multipliers; the verification
/// helpers below fold them in as a box.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective;
  std::vector<Rational> farkas;
  std::vector<Rational> ray;
};

LpOutcome solve(const LinearProgram& lp);

/// Throws DimensionError if the program is malformed.
void validate(const LinearProgram& lp);

/// Every row and bound holds exactly at x.
bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x);

/// True iff y proves infeasibility: sign pattern is valid and
/// min over the bound box of (y^T A~) x  >  y^T b~.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y);

/// Dual objective of the maximization form (minimize problems are read as
/// max of -c). Returns nullopt if y has the wrong sign pattern or the box
/// term is unbounded.
std::optional<Rational> dual_objective(const LinearProgram& lp, const std::vector<Rational>& y);

/// Direction r with A r feasible-preserving (recession direction of rows and
/// bounds) and strictly improving objective.
bool verify_ray(const LinearProgram& lp, const std::vector<Rational>& r);

}  // namespace cspstream::lp
