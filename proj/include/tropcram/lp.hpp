#pragma once

#include <vector>

#include "tropcram/rational.hpp"

// Small dense exact simplex (two-phase, Bland's rule). Sized for the
// desk-scale feasibility questions the geometry module asks: lattice point
// membership, lower-hull envelope values and cell-locus slack maximization.
namespace tropcram::lp {

enum class Sense { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational objective;
  RationalVector values;  // one per declared variable
};

class LinearProgram {
 public:
  // Returns the variable index. Non-free variables are constrained to be >= 0.
  int add_variable(bool free_variable = false);
  int num_variables() const { return static_cast<int>(free_.size()); }

  // `coeffs` may be shorter than num_variables(); missing entries are zero.
  void add_constraint(RationalVector coeffs, Sense sense, Rational rhs);
  void set_objective(RationalVector coeffs, bool maximize);

  Solution solve() const;

 private:
  struct Row {
    RationalVector coeffs;
    Sense sense;
    Rational rhs;
  };
  std::vector<bool> free_;
  std::vector<Row> rows_;
  RationalVector objective_;
  bool maximize_ = false;
};

}  // namespace tropcram::lp
