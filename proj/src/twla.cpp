#include "tropcram/twla.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "tropcram/error.hpp"

namespace tropcram {

using std::size_t;

// ---------------------------------------------------------------- TwMatrix

TwMatrix::TwMatrix(std::vector<RationalVector> rows, std::vector<int> weights)
    : rows_(std::move(rows)), weights_(std::move(weights)) {
  if (rows_.empty()) throw DomainError("tw_matrix", "matrix has no rows");
  if (rows_.size() != weights_.size()) {
    throw DomainError("tw_matrix", "weight count differs from the row count");
  }
  const size_t n = rows_.front().size();
  if (n == 0) throw DomainError("tw_matrix", "matrix has no columns");
  for (const auto& r : rows_) {
    if (r.size() != n) throw DomainError("tw_matrix", "ragged rows");
  }
  for (int m : weights_) {
    if (m < 1) throw DomainError("tw_matrix", "row weights must be positive");
    weight_total_ += m;
  }
}

TwMatrix::TwMatrix(std::vector<RationalVector> rows)
    : TwMatrix(rows, std::vector<int>(rows.size(), 1)) {}

TwMatrix TwMatrix::without_column(size_t j) const {
  if (num_cols() < 2) throw DomainError("tw_matrix", "cannot delete the only column");
  auto rows = rows_;
  for (auto& r : rows) r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
  return TwMatrix(std::move(rows), weights_);
}

TwMatrix TwMatrix::expanded() const {
  std::vector<RationalVector> rows;
  for (size_t i = 0; i < rows_.size(); ++i) {
    for (int t = 0; t < weights_[i]; ++t) rows.push_back(rows_[i]);
  }
  return TwMatrix(std::move(rows));
}

TwMatrix TwMatrix::shifted(const RationalVector& row_offsets, const RationalVector& col_offsets) const {
  auto rows = rows_;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] += col_offsets[j] - row_offsets[i];
  }
  return TwMatrix(std::move(rows), weights_);
}

TwMatrix TwMatrix::with_columns(const std::vector<size_t>& order) const {
  std::vector<RationalVector> rows(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    for (size_t j : order) rows[i].push_back(rows_[i][j]);
  }
  return TwMatrix(std::move(rows), weights_);
}

// ---------------------------------------------------------------- partitions

bool is_valid_partition(const TwMatrix& a, const Partition& p) {
  if (p.blocks.size() != a.num_rows()) return false;
  std::vector<bool> seen(a.num_cols(), false);
  size_t total = 0;
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& b = p.blocks[i];
    if (static_cast<int>(b.size()) != a.weight(i)) return false;
    if (!std::is_sorted(b.begin(), b.end())) return false;
    for (size_t j : b) {
      if (j >= a.num_cols() || seen[j]) return false;
      seen[j] = true;
      ++total;
    }
  }
  return total == a.num_cols();
}

Rational partition_value(const TwMatrix& a, const Partition& p) {
  Rational v = 0;
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    for (size_t j : p.blocks[i]) v += a.at(i, j);
  }
  return v;
}

namespace {

void require_square(const TwMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw DomainError(op, "requires K = N (weight total " + std::to_string(a.weight_total()) +
                              ", " + std::to_string(a.num_cols()) + " columns)");
  }
}

void require_cramer(const TwMatrix& a, const char* op) {
  if (!a.is_cramer_shape()) {
    throw DomainError(op, "requires K = N - 1 (weight total " + std::to_string(a.weight_total()) +
                              ", " + std::to_string(a.num_cols()) + " columns)");
  }
}

// Visits every partition in canonical (lexicographic) order.
void for_each_partition(const TwMatrix& a, const std::function<void(const Partition&)>& visit) {
  const size_t n = a.num_cols();
  Partition p;
  p.blocks.assign(a.num_rows(), {});
  std::vector<bool> used(n, false);
  std::function<void(size_t, size_t)> fill = [&](size_t row, size_t from) {
    if (row == a.num_rows()) {
      visit(p);
      return;
    }
    auto& block = p.blocks[row];
    if (static_cast<int>(block.size()) == a.weight(row)) {
      fill(row + 1, 0);
      return;
    }
    for (size_t c = from; c < n; ++c) {
      if (used[c]) continue;
      used[c] = true;
      block.push_back(c);
      fill(row, c + 1);
      block.pop_back();
      used[c] = false;
    }
  };
  fill(0, 0);
}

}  // namespace

PermResult tw_permanent_by_enumeration(const TwMatrix& a) {
  require_square(a, "tw_permanent");
  PermResult r;
  bool have = false;
  for_each_partition(a, [&](const Partition& p) {
    Rational v = partition_value(a, p);
    if (!have || v < r.value) {
      have = true;
      r.value = v;
      r.optimal = p;
      r.singular = false;
      r.witness.reset();
    } else if (v == r.value && !r.singular) {
      r.singular = true;
      r.witness = p;
    }
  });
  return r;
}

// ---------------------------------------------------------------- matching route

namespace {

struct AssignmentDual {
  std::vector<size_t> col_to_row;  // expanded-row (slot) per column
  RationalVector u, v;             // u_s + v_j <= c_sj, tight on the assignment
};

// Exact Hungarian algorithm (potential form) on a square cost matrix.
AssignmentDual hungarian(const std::vector<RationalVector>& cost) {
  const size_t n = cost.size();
  RationalVector u(n + 1, 0), v(n + 1, 0);
  std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = i;
    size_t j0 = 0;
    RationalVector minv(n + 1);
    std::vector<bool> finite(n + 1, false), used(n + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = p[j0];
      Rational delta;
      bool have_delta = false;
      size_t j1 = 0;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!finite[j] || cur < minv[j]) {
          minv[j] = cur;
          finite[j] = true;
          way[j] = j0;
        }
        if (!have_delta || minv[j] < delta) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (finite[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  AssignmentDual out;
  out.col_to_row.resize(n);
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  for (size_t j = 1; j <= n; ++j) out.col_to_row[j - 1] = p[j] - 1;
  return out;
}

// Does a b-matching exist where row r takes exactly m_r columns from
// allowed[r] and every column is used once? Kuhn's algorithm over row slots.
bool b_matching_exists(const std::vector<std::vector<bool>>& allowed, const std::vector<int>& weights) {
  const size_t n = allowed.front().size();
  std::vector<size_t> slot_row;
  for (size_t r = 0; r < weights.size(); ++r) {
    for (int t = 0; t < weights[r]; ++t) slot_row.push_back(r);
  }
  if (slot_row.size() != n) return false;
  constexpr size_t kFree = static_cast<size_t>(-1);
  std::vector<size_t> match(n, kFree);
  std::vector<bool> seen;
  std::function<bool(size_t)> augment = [&](size_t s) {
    for (size_t j = 0; j < n; ++j) {
      if (!allowed[slot_row[s]][j] || seen[j]) continue;
      seen[j] = true;
      if (match[j] == kFree || augment(match[j])) {
        match[j] = s;
        return true;
      }
    }
    return false;
  };
  for (size_t s = 0; s < slot_row.size(); ++s) {
    seen.assign(n, false);
    if (!augment(s)) return false;
  }
  return true;
}

}  // namespace

PermResult tw_permanent_by_matching(const TwMatrix& a) {
  require_square(a, "tw_permanent");
  const size_t m = a.num_rows(), n = a.num_cols();
  std::vector<size_t> slot_row;
  for (size_t i = 0; i < m; ++i) {
    for (int t = 0; t < a.weight(i); ++t) slot_row.push_back(i);
  }
  std::vector<RationalVector> cost(n);
  for (size_t s = 0; s < n; ++s) cost[s] = a.rows()[slot_row[s]];
  const AssignmentDual dual = hungarian(cost);

  // Slots of one row share their potential at an optimum; collapse to rows.
  RationalVector row_pot(m);
  std::vector<bool> set(m, false);
  for (size_t s = 0; s < n; ++s) {
    const size_t r = slot_row[s];
    if (!set[r]) {
      row_pot[r] = dual.u[s];
      set[r] = true;
    } else if (row_pot[r] != dual.u[s]) {
      throw std::logic_error("tw_permanent: unequal slot potentials at an optimum");
    }
  }
  std::vector<std::vector<bool>> tight(m, std::vector<bool>(n, false));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) tight[i][j] = a.at(i, j) == row_pot[i] + dual.v[j];
  }

  // Every optimal partition is a b-matching in the tight graph and vice versa;
  // pick the lexicographically least one greedily.
  Partition best;
  best.blocks.assign(m, {});
  std::vector<bool> used(n, false);
  for (size_t i = 0; i < m; ++i) {
    size_t from = 0;
    for (int t = 0; t < a.weight(i); ++t) {
      bool placed = false;
      for (size_t c = from; c < n && !placed; ++c) {
        if (used[c] || !tight[i][c]) continue;
        std::vector<std::vector<bool>> allowed(m, std::vector<bool>(n, false));
        for (size_t r = 0; r < m; ++r) {
          for (size_t j = 0; j < n; ++j) {
            const bool mine = std::find(best.blocks[r].begin(), best.blocks[r].end(), j) != best.blocks[r].end();
            if (r < i) {
              allowed[r][j] = mine;
            } else if (r == i) {
              allowed[r][j] = mine || j == c || (tight[r][j] && !used[j] && j > c);
            } else {
              allowed[r][j] = tight[r][j] && !used[j] && j != c;
            }
          }
        }
        if (b_matching_exists(allowed, a.weights())) {
          best.blocks[i].push_back(c);
          used[c] = true;
          from = c + 1;
          placed = true;
        }
      }
      if (!placed) throw std::logic_error("tw_permanent: tight graph lost its b-matching");
    }
  }

  PermResult r;
  r.value = partition_value(a, best);
  r.optimal = best;

  // Another optimum exists iff the row graph i -> owner(j), for tight j not
  // owned by i, has a directed cycle (an alternating cycle of the matching).
  std::vector<size_t> owner(n);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j : best.blocks[i]) owner[j] = i;
  }
  std::vector<int> color(m, 0);
  std::vector<std::pair<size_t, size_t>> stack;  // (row, column taken to reach the next row)
  std::vector<std::pair<size_t, size_t>> cycle;
  std::function<bool(size_t)> dfs = [&](size_t i) {
    color[i] = 1;
    for (size_t j = 0; j < n; ++j) {
      if (!tight[i][j] || owner[j] == i) continue;
      const size_t k = owner[j];
      stack.emplace_back(i, j);
      if (color[k] == 1) {
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& e) { return e.first == k; });
        cycle.assign(it, stack.end());
        return true;
      }
      if (color[k] == 0 && dfs(k)) return true;
      stack.pop_back();
    }
    color[i] = 2;
    return false;
  };
  for (size_t i = 0; i < m && cycle.empty(); ++i) {
    if (color[i] == 0) dfs(i);
  }
  if (!cycle.empty()) {
    Partition w = best;
    for (const auto& [row, col] : cycle) {
      auto& from_block = w.blocks[owner[col]];
      from_block.erase(std::find(from_block.begin(), from_block.end(), col));
      w.blocks[row].push_back(col);
    }
    for (auto& b : w.blocks) std::sort(b.begin(), b.end());
    r.singular = true;
    r.witness = std::move(w);
  }
  return r;
}

PermResult tw_permanent(const TwMatrix& a) {
  require_square(a, "tw_permanent");
  return a.num_cols() <= kEnumerationLimit ? tw_permanent_by_enumeration(a) : tw_permanent_by_matching(a);
}

Singularity is_tw_singular(const TwMatrix& a) {
  require_square(a, "is_tw_singular");
  PermResult r = tw_permanent(a);
  return Singularity{r.singular, r.witness};
}

// ---------------------------------------------------------------- kernel, minors

KernelMembership tw_kernel_membership(const TwMatrix& a, std::span<const Rational> x) {
  if (x.size() != a.num_cols()) {
    throw DomainError("tw_kernel_membership", "vector length differs from the column count");
  }
  KernelMembership k;
  k.member = true;
  for (size_t i = 0; i < a.num_rows(); ++i) {
    Rational best = a.at(i, 0) + x[0];
    int count = 1;
    for (size_t j = 1; j < a.num_cols(); ++j) {
      Rational v = a.at(i, j) + x[j];
      if (v < best) {
        best = v;
        count = 1;
      } else if (v == best) {
        ++count;
      }
    }
    k.argmin_counts.push_back(count);
    if (count < a.weight(i) + 1) k.member = false;
  }
  return k;
}

RationalVector maximal_minors(const TwMatrix& a) {
  require_cramer(a, "maximal_minors");
  RationalVector out;
  for (size_t j = 0; j < a.num_cols(); ++j) out.push_back(tw_permanent(a.without_column(j)).value);
  return out;
}

CramerSolution cramer_solve(const TwMatrix& a) {
  require_cramer(a, "cramer_solve");
  CramerSolution s;
  s.unique = true;
  for (size_t j = 0; j < a.num_cols(); ++j) {
    PermResult r = tw_permanent(a.without_column(j));
    s.vector.push_back(r.value);
    s.minor_singular.push_back(r.singular);
    if (r.singular) s.unique = false;
  }
  return s;
}

bool tropically_proportional(std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  const Rational d = x[0] - y[0];
  for (size_t j = 1; j < x.size(); ++j) {
    if (x[j] - y[j] != d) return false;
  }
  return true;
}

// ---------------------------------------------------------------- rescaling

namespace {

// Rescale so `target` becomes the block-diagonal partition with zero entries
// and every entry is non-negative. `target` must be optimal.
SquareRescale rescale_to_partition(const TwMatrix& a, const Partition& target) {
  const size_t m = a.num_rows(), n = a.num_cols();
  SquareRescale out{a, {}, {}, {}};
  out.row_order.resize(m);
  std::iota(out.row_order.begin(), out.row_order.end(), size_t{0});
  std::vector<size_t> slot_row;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j : target.blocks[i]) {
      out.column_order.push_back(j);
      slot_row.push_back(i);
    }
  }
  const TwMatrix p = a.with_columns(out.column_order);

  // Zero the selected entries with column shifts.
  RationalVector zero_cols(n);
  for (size_t k = 0; k < n; ++k) zero_cols[k] = -p.at(slot_row[k], k);

  // Row-repeated square matrix with zero diagonal; c_s is the minimum path sum
  // over simple paths starting at s (the trivial path included). With every
  // simple cycle non-negative, Bellman-Ford relaxation reaches it in n rounds.
  auto entry = [&](size_t s, size_t k) -> Rational { return p.at(slot_row[s], k) + zero_cols[k]; };
  RationalVector c(n, 0);
  for (size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (size_t s = 0; s < n; ++s) {
      for (size_t k = 0; k < n; ++k) {
        if (k == s) continue;
        Rational cand = entry(s, k) + c[k];
        if (cand < c[s]) {
          c[s] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round == n) throw DomainError("rescale_nonneg_zero_perm", "target partition is not optimal");
  }

  out.rescaling.row_offsets.assign(m, 0);
  out.rescaling.col_offsets.resize(n);
  std::vector<bool> seen(m, false);
  for (size_t s = 0; s < n; ++s) {
    const size_t r = slot_row[s];
    if (!seen[r]) {
      out.rescaling.row_offsets[r] = c[s];
      seen[r] = true;
    } else if (out.rescaling.row_offsets[r] != c[s]) {
      throw std::logic_error("rescale_nonneg_zero_perm: repeated rows received different potentials");
    }
    out.rescaling.col_offsets[s] = zero_cols[s] + c[s];
  }
  out.matrix = p.shifted(out.rescaling.row_offsets, out.rescaling.col_offsets);
  return out;
}

bool same_block(std::vector<size_t> x, std::vector<size_t> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace

SquareRescale rescale_nonneg_zero_perm(const TwMatrix& a) {
  require_square(a, "rescale_nonneg_zero_perm");
  return rescale_to_partition(a, tw_permanent(a).optimal);
}

TwMatrix normalize_by_kernel_vector(const TwMatrix& a, std::span<const Rational> x) {
  if (x.size() != a.num_cols()) {
    throw DomainError("normalize_by_kernel_vector", "vector length differs from the column count");
  }
  if (!tw_kernel_membership(a, x).member) {
    throw DomainError("normalize_by_kernel_vector", "vector is not in the tw-kernel");
  }
  RationalVector cols(x.begin(), x.end());
  RationalVector rows(a.num_rows());
  for (size_t i = 0; i < a.num_rows(); ++i) {
    rows[i] = a.at(i, 0) + cols[0];
    for (size_t j = 1; j < a.num_cols(); ++j) rows[i] = std::min<Rational>(rows[i], a.at(i, j) + cols[j]);
  }
  return a.shifted(rows, cols);
}

RationalVector kernel_candidate_from_partitions(const TwMatrix& a, const Partition& first,
                                                const Partition& second) {
  require_square(a, "kernel_witness_square");
  if (!is_valid_partition(a, first) || !is_valid_partition(a, second)) {
    throw DomainError("kernel_witness_square", "invalid partition");
  }
  const size_t m = a.num_rows(), n = a.num_cols();
  const SquareRescale base = rescale_to_partition(a, first);

  // Work in original column indexing: w_ij = a_ij + row_shift_i + col_shift_j.
  RationalVector row_shift(m), col_shift(n);
  for (size_t i = 0; i < m; ++i) row_shift[i] = -base.rescaling.row_offsets[i];
  for (size_t k = 0; k < n; ++k) col_shift[base.column_order[k]] = base.rescaling.col_offsets[k];
  auto w = [&](size_t i, size_t j) -> Rational { return a.at(i, j) + row_shift[i] + col_shift[j]; };

  std::vector<bool> in_k(m, false), in_l(n, false);
  size_t l_count = 0;
  for (size_t i = 0; i < m; ++i) {
    if (same_block(first.blocks[i], second.blocks[i])) continue;
    in_k[i] = true;
    for (size_t j : first.blocks[i]) in_l[j] = true;
    for (size_t j : second.blocks[i]) in_l[j] = true;
  }
  l_count = static_cast<size_t>(std::count(in_l.begin(), in_l.end(), true));
  if (l_count == 0) throw DomainError("kernel_witness_square", "the two partitions coincide");

  while (l_count < n) {
    bool have = false;
    Rational eps;
    for (size_t i = 0; i < m; ++i) {
      if (in_k[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (!in_l[j]) continue;
        Rational v = w(i, j);
        if (!have || v < eps) {
          eps = v;
          have = true;
        }
      }
    }
    for (size_t i = 0; i < m; ++i) {
      if (in_k[i]) row_shift[i] += eps;
    }
    for (size_t j = 0; j < n; ++j) {
      if (in_l[j]) col_shift[j] -= eps;
    }
    size_t star = m;
    for (size_t i = 0; i < m && star == m; ++i) {
      if (in_k[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (in_l[j] && w(i, j) == 0) {
          star = i;
          break;
        }
      }
    }
    if (star == m) throw std::logic_error("kernel_witness_square: no zero appeared after the shift");
    in_k[star] = true;
    for (size_t j : first.blocks[star]) {
      if (!in_l[j]) {
        in_l[j] = true;
        ++l_count;
      }
    }
  }
  return col_shift;
}

RationalVector kernel_witness_square(const TwMatrix& a) {
  require_square(a, "kernel_witness_square");
  PermResult r = tw_permanent(a);
  if (!r.singular) throw DomainError("kernel_witness_square", "matrix is tw-nonsingular");
  RationalVector x = kernel_candidate_from_partitions(a, r.optimal, *r.witness);
  if (!tw_kernel_membership(a, x).member) {
    throw std::logic_error("kernel_witness_square: construction left the kernel");
  }
  const Rational lowest = min_of(x);
  for (auto& v : x) v -= lowest;
  return x;
}

RationalVector alternate_kernel_vector(const TwMatrix& a, size_t column) {
  require_cramer(a, "alternate_kernel_vector");
  if (column >= a.num_cols()) throw DomainError("alternate_kernel_vector", "column out of range");
  const TwMatrix minor = a.without_column(column);
  if (!tw_permanent(minor).singular) {
    throw DomainError("alternate_kernel_vector", "minor " + std::to_string(column) + " is tw-nonsingular");
  }
  const RationalVector w = kernel_witness_square(minor);  // min(w) = 0

  Rational a_min = a.at(0, 0), a_max = a.at(0, 0);
  for (const auto& row : a.rows()) {
    a_min = std::min<Rational>(a_min, min_of(row));
    a_max = std::max<Rational>(a_max, max_of(row));
  }
  // With min(w) = 0, this keeps the inserted column strictly above every row minimum.
  Rational big = 1 + (a_max - a_min) + max_of(w);
  RationalVector y = w;
  y.insert(y.begin() + static_cast<std::ptrdiff_t>(column), big);
  const RationalVector minors = maximal_minors(a);
  if (tropically_proportional(y, minors)) y[column] += 1;
  if (!tw_kernel_membership(a, y).member || tropically_proportional(y, minors)) {
    throw std::logic_error("alternate_kernel_vector: post-check failed");
  }
  return y;
}

}  // namespace tropcram
