#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropcram/rational.hpp"

namespace tropcram {

// An M x N rational matrix whose row i carries a positive integer weight m_i
// (the multiplicity of the corresponding point condition). K = sum m_i.
class TwMatrix {
 public:
  TwMatrix(std::vector<RationalVector> rows, std::vector<int> weights);

  // Unit weights.
  explicit TwMatrix(std::vector<RationalVector> rows);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return rows_.front().size(); }
  int weight_total() const { return weight_total_; }
  int weight(std::size_t i) const { return weights_[i]; }
  const std::vector<int>& weights() const { return weights_; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<RationalVector>& rows() const { return rows_; }

  bool is_square() const { return static_cast<std::size_t>(weight_total_) == num_cols(); }
  bool is_cramer_shape() const { return static_cast<std::size_t>(weight_total_) + 1 == num_cols(); }

  TwMatrix without_column(std::size_t j) const;
  // Row i repeated m_i times, unit weights.
  TwMatrix expanded() const;
  // A_ij - row[i] + col[j].
  TwMatrix shifted(const RationalVector& row_offsets, const RationalVector& col_offsets) const;
  TwMatrix with_columns(const std::vector<std::size_t>& order) const;

  bool operator==(const TwMatrix& other) const = default;

 private:
  std::vector<RationalVector> rows_;
  std::vector<int> weights_;
  int weight_total_ = 0;
};

// Ordered blocks of column indices; block i holds m_i columns, ascending.
// The default ordering is the canonical one: lexicographic on the serialized
// form (block 0 first).
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  auto operator<=>(const Partition&) const = default;
};

bool is_valid_partition(const TwMatrix& a, const Partition& p);
Rational partition_value(const TwMatrix& a, const Partition& p);

struct PermResult {
  Rational value;
  Partition optimal;               // lexicographically least optimal partition
  bool singular = false;
  std::optional<Partition> witness;  // a second optimal partition iff singular
};

struct KernelMembership {
  bool member = false;
  std::vector<int> argmin_counts;  // per row: how many columns attain the row minimum
};

KernelMembership tw_kernel_membership(const TwMatrix& a, std::span<const Rational> x);

// Enumeration up to kEnumerationLimit columns, b-matching above.
inline constexpr std::size_t kEnumerationLimit = 8;
PermResult tw_permanent(const TwMatrix& a);
// Both routes are exposed so they can be cross-checked.
PermResult tw_permanent_by_enumeration(const TwMatrix& a);
PermResult tw_permanent_by_matching(const TwMatrix& a);

struct Singularity {
  bool singular = false;
  std::optional<Partition> witness;
};
Singularity is_tw_singular(const TwMatrix& a);

RationalVector maximal_minors(const TwMatrix& a);

struct CramerSolution {
  RationalVector vector;           // the maximal minors
  bool unique = false;
  std::vector<bool> minor_singular;
};
CramerSolution cramer_solve(const TwMatrix& a);

struct Rescaling {
  RationalVector row_offsets;
  RationalVector col_offsets;
};

// matrix(i, k) = original(row_order[i], column_order[k]) - row_offsets[i] + col_offsets[k]
struct SquareRescale {
  TwMatrix matrix;
  Rescaling rescaling;
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> column_order;
};

// Non-negative, permanent 0, the block-diagonal partition optimal with zero
// entries. Built by row repetition and minimum simple-path potentials.
SquareRescale rescale_nonneg_zero_perm(const TwMatrix& a);

// Column j shifted by x_j, then every row shifted to minimum zero.
TwMatrix normalize_by_kernel_vector(const TwMatrix& a, std::span<const Rational> x);

// Kernel vector of a singular square matrix, grown from two optimal partitions
// and shifted so its minimum entry is 0.
RationalVector kernel_witness_square(const TwMatrix& a);

// The growth procedure behind kernel_witness_square, for an arbitrary pair of
// distinct partitions (first one optimal). The result is only guaranteed to lie
// in the kernel when both are optimal; callers verify.
RationalVector kernel_candidate_from_partitions(const TwMatrix& a, const Partition& first,
                                                const Partition& second);

// Kernel vector of a K = N-1 matrix that is not a tropical multiple of the
// maximal minors, built from a singular minor `column`.
RationalVector alternate_kernel_vector(const TwMatrix& a, std::size_t column);

// x - y is constant.
bool tropically_proportional(std::span<const Rational> x, std::span<const Rational> y);

}  // namespace tropcram
