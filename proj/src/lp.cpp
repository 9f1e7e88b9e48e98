#include "tropcram/lp.hpp"

#include <algorithm>
#include <cstddef>

namespace tropcram::lp {

using std::size_t;

int LinearProgram::add_variable(bool free_variable) {
  free_.push_back(free_variable);
  return static_cast<int>(free_.size()) - 1;
}

void LinearProgram::add_constraint(RationalVector coeffs, Sense sense, Rational rhs) {
  rows_.push_back(Row{std::move(coeffs), sense, std::move(rhs)});
}

void LinearProgram::set_objective(RationalVector coeffs, bool maximize) {
  objective_ = std::move(coeffs);
  maximize_ = maximize;
}

namespace {

constexpr size_t kNone = static_cast<size_t>(-1);

struct Tableau {
  std::vector<RationalVector> rows;  // each ncols + 1 wide, last entry is the rhs
  RationalVector z;                  // reduced costs; z[ncols] = -objective
  std::vector<size_t> basis;
  size_t ncols = 0;

  void pivot(size_t r, size_t c) {
    auto& pr = rows[r];
    const Rational inv = 1 / pr[c];
    for (auto& v : pr) v *= inv;
    auto eliminate = [&](RationalVector& row) {
      const Rational f = row[c];
      if (f == 0) return;
      for (size_t j = 0; j < row.size(); ++j) {
        if (pr[j] != 0) row[j] -= f * pr[j];
      }
    };
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(z);
    basis[r] = c;
  }

  void load_costs(const RationalVector& cost) {
    z.assign(ncols + 1, 0);
    std::copy(cost.begin(), cost.end(), z.begin());
    for (size_t i = 0; i < rows.size(); ++i) {
      const Rational cb = cost[basis[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j < z.size(); ++j) z[j] -= cb * rows[i][j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool minimize(size_t allowed) {
    for (;;) {
      size_t enter = kNone;
      for (size_t j = 0; j < allowed; ++j) {
        if (z[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      size_t leave = kNone;
      Rational best;
      for (size_t i = 0; i < rows.size(); ++i) {
        const Rational& a = rows[i][enter];
        if (a <= 0) continue;
        Rational ratio = rows[i][ncols] / a;
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution LinearProgram::solve() const {
  const size_t nvars = free_.size();
  // Columns: positive part of each variable (plus a negative part when free),
  // one slack per inequality, one artificial per row.
  std::vector<size_t> pos_col(nvars), neg_col(nvars, kNone);
  size_t ncols = 0;
  for (size_t v = 0; v < nvars; ++v) {
    pos_col[v] = ncols++;
    if (free_[v]) neg_col[v] = ncols++;
  }
  std::vector<size_t> slack_col(rows_.size(), kNone);
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].sense != Sense::equal) slack_col[i] = ncols++;
  }
  const size_t structural = ncols;
  ncols += rows_.size();

  Tableau t;
  t.ncols = ncols;
  t.rows.assign(rows_.size(), RationalVector(ncols + 1, 0));
  t.basis.assign(rows_.size(), 0);
  for (size_t i = 0; i < rows_.size(); ++i) {
    auto& row = t.rows[i];
    const auto& src = rows_[i];
    for (size_t v = 0; v < std::min(src.coeffs.size(), nvars); ++v) {
      row[pos_col[v]] = src.coeffs[v];
      if (neg_col[v] != kNone) row[neg_col[v]] = -src.coeffs[v];
    }
    if (slack_col[i] != kNone) row[slack_col[i]] = src.sense == Sense::less_equal ? 1 : -1;
    row[ncols] = src.rhs;
    if (src.rhs < 0) {
      for (auto& v : row) v = -v;
    }
    row[structural + i] = 1;
    t.basis[i] = structural + i;
  }

  RationalVector cost(ncols, 0);
  for (size_t j = structural; j < ncols; ++j) cost[j] = 1;
  t.load_costs(cost);
  t.minimize(ncols);
  Solution sol;
  if (t.z[ncols] != 0) {
    sol.status = Status::infeasible;
    return sol;
  }
  // Drive zero-valued artificials out of the basis; drop redundant rows.
  for (size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < structural) {
      ++i;
      continue;
    }
    size_t col = kNone;
    for (size_t j = 0; j < structural; ++j) {
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col != kNone) {
      t.pivot(i, col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  std::fill(cost.begin(), cost.end(), Rational(0));
  for (size_t v = 0; v < nvars; ++v) {
    Rational c = v < objective_.size() ? objective_[v] : Rational(0);
    if (maximize_) c = -c;
    cost[pos_col[v]] = c;
    if (neg_col[v] != kNone) cost[neg_col[v]] = -c;
  }
  t.load_costs(cost);
  if (!t.minimize(structural)) {
    sol.status = Status::unbounded;
    return sol;
  }
  RationalVector x(ncols, 0);
  for (size_t i = 0; i < t.rows.size(); ++i) x[t.basis[i]] = t.rows[i][ncols];
  sol.status = Status::optimal;
  sol.values.resize(nvars);
  for (size_t v = 0; v < nvars; ++v) {
    sol.values[v] = x[pos_col[v]];
    if (neg_col[v] != kNone) sol.values[v] -= x[neg_col[v]];
  }
  const Rational obj = -t.z[ncols];
  sol.objective = maximize_ ? Rational(-obj) : obj;
  return sol;
}

}  // namespace tropcram::lp
