#pragma once

#include <optional>
#include <vector>

#include "tracklab/rational.hpp"

namespace tracklab::lp {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::Equal;
  Rational rhs = 0;
};

/// minimize objective . x  subject to constraints, x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
};

/// Dense two-phase simplex in exact arithmetic with Bland's rule.
Solution solve(const Problem& problem);

}  // namespace tracklab::lp
