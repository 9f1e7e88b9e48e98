#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropcram/rational.hpp"

namespace tropcram {

// An integer point / exponent vector.
using LatticePoint = std::vector<int>;

// Convex hull of integer generators. The lattice points are enumerated once at
// construction (bounding box + exact hull membership) and kept in
// lexicographically ascending order; that order is the canonical column order
// used everywhere a polytope indexes monomials.
class LatticePolytope {
 public:
  LatticePolytope(int dimension, std::vector<LatticePoint> generators);

  // k * (standard simplex) in dimension n.
  static LatticePolytope simplex(int dimension, int scale = 1);
  // Axis-aligned box [0, extents[0]] x ... x [0, extents[n-1]].
  static LatticePolytope box(const std::vector<int>& extents);

  int dimension() const { return dimension_; }
  const std::vector<LatticePoint>& generators() const { return generators_; }
  const std::vector<LatticePoint>& lattice_points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::optional<std::size_t> index_of(const LatticePoint& p) const;

  bool operator==(const LatticePolytope& other) const {
    return dimension_ == other.dimension_ && points_ == other.points_;
  }

 private:
  int dimension_;
  std::vector<LatticePoint> generators_;
  std::vector<LatticePoint> points_;
};

// Exact test of p in conv(generators).
bool in_convex_hull(const std::vector<LatticePoint>& generators, std::span<const Rational> p);

// Dimension of the affine span (-1 for an empty set).
int affine_dimension(const std::vector<LatticePoint>& points);

// Rank of a dense rational matrix (row-major rows).
int matrix_rank(std::vector<RationalVector> rows);

}  // namespace tropcram
