#include "tropcram/polytope.hpp"

#include <algorithm>

#include "tropcram/error.hpp"
#include "tropcram/lp.hpp"

namespace tropcram {

bool in_convex_hull(const std::vector<LatticePoint>& generators, std::span<const Rational> p) {
  if (generators.empty()) return false;
  const std::size_t n = p.size();
  lp::LinearProgram prog;
  for (std::size_t g = 0; g < generators.size(); ++g) prog.add_variable();
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector row(generators.size());
    for (std::size_t g = 0; g < generators.size(); ++g) row[g] = generators[g][k];
    prog.add_constraint(std::move(row), lp::Sense::equal, p[k]);
  }
  prog.add_constraint(RationalVector(generators.size(), 1), lp::Sense::equal, 1);
  prog.set_objective({}, false);
  return prog.solve().status == lp::Status::optimal;
}

int matrix_rank(std::vector<RationalVector> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

int affine_dimension(const std::vector<LatticePoint>& points) {
  if (points.empty()) return -1;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector d(points[0].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
    diffs.push_back(std::move(d));
  }
  return matrix_rank(std::move(diffs));
}

LatticePolytope::LatticePolytope(int dimension, std::vector<LatticePoint> generators)
    : dimension_(dimension), generators_(std::move(generators)) {
  if (dimension_ < 1) throw DomainError("lattice_polytope", "dimension must be positive");
  if (generators_.empty()) throw DomainError("lattice_polytope", "no generators");
  for (const auto& g : generators_) {
    if (static_cast<int>(g.size()) != dimension_) {
      throw DomainError("lattice_polytope", "generator has wrong dimension");
    }
  }
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());

  LatticePoint lo = generators_[0], hi = generators_[0];
  for (const auto& g : generators_) {
    for (int k = 0; k < dimension_; ++k) {
      lo[k] = std::min(lo[k], g[k]);
      hi[k] = std::max(hi[k], g[k]);
    }
  }
  // Odometer over the bounding box in lexicographic order.
  LatticePoint cur = lo;
  for (;;) {
    if (std::binary_search(generators_.begin(), generators_.end(), cur)) {
      points_.push_back(cur);
    } else {
      RationalVector q(cur.begin(), cur.end());
      if (in_convex_hull(generators_, q)) points_.push_back(cur);
    }
    int k = dimension_ - 1;
    while (k >= 0 && cur[k] == hi[k]) {
      cur[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
}

LatticePolytope LatticePolytope::simplex(int dimension, int scale) {
  std::vector<LatticePoint> gens;
  gens.emplace_back(dimension, 0);
  for (int k = 0; k < dimension; ++k) {
    LatticePoint e(dimension, 0);
    e[k] = scale;
    gens.push_back(e);
  }
  return LatticePolytope(dimension, std::move(gens));
}

LatticePolytope LatticePolytope::box(const std::vector<int>& extents) {
  const int n = static_cast<int>(extents.size());
  std::vector<LatticePoint> gens;
  for (int mask = 0; mask < (1 << n); ++mask) {
    LatticePoint p(n, 0);
    for (int k = 0; k < n; ++k) {
      if (mask & (1 << k)) p[k] = extents[k];
    }
    gens.push_back(p);
  }
  return LatticePolytope(n, std::move(gens));
}

std::optional<std::size_t> LatticePolytope::index_of(const LatticePoint& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

}  // namespace tropcram
