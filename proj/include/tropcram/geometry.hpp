#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropcram/polytope.hpp"
#include "tropcram/trop_core.hpp"
#include "tropcram/twla.hpp"

namespace tropcram {

using Cell = std::vector<std::size_t>;  // ascending lattice-point indices

// Cells of a regular subdivision of `points` (lifted by `lifts`), as index
// sets into `points`, including every face. Exact LP feasibility route.
std::vector<Cell> regular_subdivision(const std::vector<LatticePoint>& points, const RationalVector& lifts);

// A polyhedral decomposition of a lattice polytope stored combinatorially.
// Cells are kept sorted by (dimension, indices).
class LatticeSubdivision {
 public:
  LatticeSubdivision(LatticePolytope polytope, std::vector<Cell> cells);

  // Closes a family of cells under taking faces.
  static LatticeSubdivision from_maximal_cells(LatticePolytope polytope, const std::vector<Cell>& maximal);

  const LatticePolytope& polytope() const { return polytope_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t num_cells() const { return cells_.size(); }
  int dimension(std::size_t cell) const { return dims_[cell]; }
  std::optional<std::size_t> index_of(const Cell& cell) const;
  // Lattice points that are 0-cells.
  std::vector<std::size_t> vertices() const;
  std::vector<std::size_t> maximal_cells() const;

  bool operator==(const LatticeSubdivision& other) const {
    return polytope_ == other.polytope_ && cells_ == other.cells_;
  }

 private:
  LatticePolytope polytope_;
  std::vector<Cell> cells_;
  std::vector<int> dims_;
};

struct DualComplex {
  LatticeSubdivision subdivision;
  TropPolynomial saturated;
  bool input_was_saturated = true;
};

// Regular subdivision of the Newton polytope lifted by the (saturated)
// coefficients. Direct lower hull when n <= 2 and full-dimensional, LP route otherwise.
DualComplex dual_complex(const TropPolynomial& f);
// Both routes, for cross-checking. The direct one requires n <= 2 and a full-dimensional polytope.
LatticeSubdivision dual_complex_direct(const TropPolynomial& f);
LatticeSubdivision dual_complex_lp(const TropPolynomial& f);

bool is_lattice_simplicial(const LatticeSubdivision& sub);

// A point where exactly the monomials of `cell` attain the minimum, if any.
std::optional<RationalVector> dual_cell_point(const TropPolynomial& f, const std::vector<Monomial>& cell);

struct Weighting {
  std::vector<int> mu;  // one per cell of the subdivision

  int total() const;
  bool operator==(const Weighting&) const = default;
};

// Throws DomainError unless 0 <= mu(P) <= |P| - 1 for every cell.
void validate_weighting(const LatticeSubdivision& sub, const Weighting& w);

struct PointCondition {
  RationalVector point;
  int mult = 1;

  bool operator==(const PointCondition&) const = default;
};

struct WeightedSubdivision {
  LatticeSubdivision subdivision;
  Weighting weighting;
};

// The dual complex of saturate(f), weighted by m_i on the argmin cell of x_i.
WeightedSubdivision weighting_from_points(const TropPolynomial& f, const std::vector<PointCondition>& conditions);

// Lattice-point index sets.
using PointSet = std::vector<std::size_t>;

int used(const PointSet& l, const Weighting& w, const LatticeSubdivision& sub);
bool is_deformable(const PointSet& l, const Weighting& w, const LatticeSubdivision& sub);

inline constexpr std::size_t kRigidBruteLimit = 16;

struct RigidityResult {
  bool rigid = false;
  std::optional<PointSet> witness;
  bool fast_path = false;
};

// Full cells, and the connected components of their union (as lattice-point sets).
std::vector<std::size_t> full_cells(const Weighting& w, const LatticeSubdivision& sub);
bool is_full(const Weighting& w, const LatticeSubdivision& sub);
std::vector<PointSet> support_components(const Weighting& w, const LatticeSubdivision& sub);

RigidityResult is_rigid(const Weighting& w, const LatticeSubdivision& sub, std::size_t brute_limit = kRigidBruteLimit);
// Smallest deformable set in (size, lexicographic) order, or none.
RigidityResult rigid_by_search(const Weighting& w, const LatticeSubdivision& sub,
                               std::size_t brute_limit = kRigidBruteLimit);

struct FitResult {
  TropPolynomial f;
  bool unique = false;
  TwMatrix matrix;
  std::vector<bool> minor_singular;
};

// Columns follow the canonical lattice-point order of `polytope`.
TwMatrix evaluation_matrix(const LatticePolytope& polytope, const std::vector<PointCondition>& conditions);
FitResult fit_hypersurface(const LatticePolytope& polytope, const std::vector<PointCondition>& conditions);

// Lowers the coefficients of the monomials in `l` by eps.
TropPolynomial deform(const TropPolynomial& f, const std::vector<Monomial>& l, const Rational& eps);

}  // namespace tropcram
