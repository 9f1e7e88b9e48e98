#include "tropcram/geometry.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "tropcram/error.hpp"
#include "tropcram/lp.hpp"

namespace tropcram {

using std::size_t;

namespace {

std::vector<LatticePoint> pick(const std::vector<LatticePoint>& points, const Cell& idx) {
  std::vector<LatticePoint> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(points[i]);
  return out;
}

// Visits the k-subsets of {0..n-1} in lexicographic order; stops when visit returns true.
template <class Visit>
bool for_each_combination(size_t n, size_t k, Visit visit) {
  if (k > n) return false;
  std::vector<size_t> c(k);
  for (size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (visit(c)) return true;
    size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// The smallest cell containing `base`: base plus every point whose slack is
// zero on the whole locus where base attains the minimum. None if that locus is empty.
std::optional<Cell> smallest_cell_containing(const std::vector<LatticePoint>& points, const RationalVector& lifts,
                                             const Cell& base) {
  const size_t n = points.front().size();
  std::vector<bool> in_base(points.size(), false);
  for (size_t i : base) in_base[i] = true;
  std::vector<size_t> open;
  for (size_t p = 0; p < points.size(); ++p) {
    if (!in_base[p]) open.push_back(p);
  }

  auto affine_row = [&](size_t p) {
    RationalVector row(n + 1);
    for (size_t k = 0; k < n; ++k) row[k] = points[p][k];
    row[n] = -1;
    return row;
  };

  bool first = true;
  while (true) {
    lp::LinearProgram prog;
    for (size_t k = 0; k <= n; ++k) prog.add_variable(true);
    for (size_t q = 0; q < open.size(); ++q) prog.add_variable();
    for (size_t p = 0; p < points.size(); ++p) {
      prog.add_constraint(affine_row(p), in_base[p] ? lp::Sense::equal : lp::Sense::greater_equal, -lifts[p]);
    }
    RationalVector objective(n + 1 + open.size(), 0);
    for (size_t q = 0; q < open.size(); ++q) {
      RationalVector row = affine_row(open[q]);
      for (auto& v : row) v = -v;
      row.resize(n + 1 + open.size(), 0);
      row[n + 1 + q] = 1;
      prog.add_constraint(row, lp::Sense::less_equal, lifts[open[q]]);
      RationalVector cap(n + 1 + open.size(), 0);
      cap[n + 1 + q] = 1;
      prog.add_constraint(std::move(cap), lp::Sense::less_equal, 1);
      objective[n + 1 + q] = 1;
    }
    prog.set_objective(std::move(objective), true);
    const lp::Solution sol = prog.solve();
    if (sol.status == lp::Status::infeasible) {
      if (first) return std::nullopt;
      throw std::logic_error("regular_subdivision: locus became infeasible");
    }
    first = false;
    if (open.empty() || sol.objective == 0) break;
    std::vector<size_t> still;
    for (size_t p : open) {
      Rational slack = lifts[p] - sol.values[n];
      for (size_t k = 0; k < n; ++k) slack += points[p][k] * sol.values[k];
      if (slack == 0) still.push_back(p);
    }
    if (still.size() == open.size()) throw std::logic_error("regular_subdivision: no progress");
    open = std::move(still);
  }
  Cell cell = base;
  cell.insert(cell.end(), open.begin(), open.end());
  std::sort(cell.begin(), cell.end());
  return cell;
}

bool cell_order(const std::pair<int, Cell>& a, const std::pair<int, Cell>& b) { return a < b; }

}  // namespace

std::vector<Cell> regular_subdivision(const std::vector<LatticePoint>& points, const RationalVector& lifts) {
  if (points.empty() || points.size() != lifts.size()) {
    throw DomainError("regular_subdivision", "points and lifts must be non-empty and of equal length");
  }
  const int d = affine_dimension(points);
  std::vector<std::pair<int, Cell>> found;
  for (size_t k = 1; k <= static_cast<size_t>(d) + 1; ++k) {
    for_each_combination(points.size(), k, [&](const std::vector<size_t>& base) {
      const auto sub = pick(points, base);
      if (affine_dimension(sub) != static_cast<int>(k) - 1) return false;
      for (const auto& [dim, cell] : found) {
        if (dim == static_cast<int>(k) - 1 && std::includes(cell.begin(), cell.end(), base.begin(), base.end())) {
          return false;
        }
      }
      if (auto cell = smallest_cell_containing(points, lifts, base)) {
        std::pair<int, Cell> entry{affine_dimension(pick(points, *cell)), std::move(*cell)};
        if (std::find(found.begin(), found.end(), entry) == found.end()) found.push_back(std::move(entry));
      }
      return false;
    });
  }
  std::sort(found.begin(), found.end(), cell_order);
  std::vector<Cell> out;
  for (auto& [dim, cell] : found) out.push_back(std::move(cell));
  return out;
}

// ---------------------------------------------------------------- subdivisions

LatticeSubdivision::LatticeSubdivision(LatticePolytope polytope, std::vector<Cell> cells)
    : polytope_(std::move(polytope)) {
  std::vector<std::pair<int, Cell>> tagged;
  for (auto& c : cells) {
    if (c.empty()) throw DomainError("subdivision", "empty cell");
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw DomainError("subdivision", "repeated index in a cell");
    if (c.back() >= polytope_.size()) throw DomainError("subdivision", "lattice point index out of range");
    tagged.emplace_back(affine_dimension(pick(polytope_.lattice_points(), c)), std::move(c));
  }
  std::sort(tagged.begin(), tagged.end(), cell_order);
  tagged.erase(std::unique(tagged.begin(), tagged.end()), tagged.end());
  for (auto& [dim, c] : tagged) {
    dims_.push_back(dim);
    cells_.push_back(std::move(c));
  }
}

LatticeSubdivision LatticeSubdivision::from_maximal_cells(LatticePolytope polytope, const std::vector<Cell>& maximal) {
  std::vector<Cell> all;
  for (auto cell : maximal) {
    std::sort(cell.begin(), cell.end());
    if (cell.empty() || cell.back() >= polytope.size()) throw DomainError("subdivision", "bad cell");
    const auto pts = pick(polytope.lattice_points(), cell);
    for (const auto& face : regular_subdivision(pts, RationalVector(pts.size(), 0))) {
      Cell global;
      for (size_t i : face) global.push_back(cell[i]);
      all.push_back(std::move(global));
    }
  }
  return LatticeSubdivision(std::move(polytope), std::move(all));
}

std::optional<size_t> LatticeSubdivision::index_of(const Cell& cell) const {
  for (size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c] == cell) return c;
  }
  return std::nullopt;
}

std::vector<size_t> LatticeSubdivision::vertices() const {
  std::vector<size_t> out;
  for (const auto& c : cells_) {
    if (c.size() == 1) out.push_back(c.front());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<size_t> LatticeSubdivision::maximal_cells() const {
  std::vector<size_t> out;
  for (size_t c = 0; c < cells_.size(); ++c) {
    bool contained = false;
    for (size_t o = 0; o < cells_.size() && !contained; ++o) {
      contained = o != c && cells_[o].size() > cells_[c].size() &&
                  std::includes(cells_[o].begin(), cells_[o].end(), cells_[c].begin(), cells_[c].end());
    }
    if (!contained) out.push_back(c);
  }
  return out;
}

bool is_lattice_simplicial(const LatticeSubdivision& sub) {
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (sub.cells()[c].size() != static_cast<size_t>(sub.dimension(c)) + 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- dual complex

namespace {

RationalVector lifts_on(const TropPolynomial& f, const LatticePolytope& polytope) {
  RationalVector lifts;
  for (const auto& p : polytope.lattice_points()) lifts.push_back(f.coefficient(p));
  return lifts;
}

std::vector<Cell> lower_hull_1d(const std::vector<LatticePoint>& pts, const RationalVector& z) {
  std::vector<size_t> hull;
  auto turn = [&](size_t a, size_t b, size_t c) -> Rational {
    return Rational(pts[b][0] - pts[a][0]) * (z[c] - z[a]) - Rational(pts[c][0] - pts[a][0]) * (z[b] - z[a]);
  };
  for (size_t p = 0; p < pts.size(); ++p) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  std::vector<Cell> cells;
  for (size_t b : hull) cells.push_back({b});
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    Cell seg;
    for (size_t p = hull[k]; p <= hull[k + 1]; ++p) {
      if (turn(hull[k], hull[k + 1], p) == 0) seg.push_back(p);
    }
    cells.push_back(std::move(seg));
  }
  return cells;
}

std::vector<Cell> lower_hull_2d(const std::vector<LatticePoint>& pts, const RationalVector& z) {
  const size_t n = pts.size();
  std::set<Cell> maximal;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (size_t k = j + 1; k < n; ++k) {
        const Rational ux = pts[j][0] - pts[i][0], uy = pts[j][1] - pts[i][1], uz = z[j] - z[i];
        const Rational vx = pts[k][0] - pts[i][0], vy = pts[k][1] - pts[i][1], vz = z[k] - z[i];
        // normal (a, b, c) = u x v; c != 0 iff the triple is affinely independent in the plane
        const Rational a = uy * vz - uz * vy, b = uz * vx - ux * vz, c = ux * vy - uy * vx;
        if (c == 0) continue;
        // height of the plane over p: z_i - (a (x - x_i) + b (y - y_i)) / c
        bool below = true;
        Cell on;
        for (size_t p = 0; p < n && below; ++p) {
          const Rational plane = z[i] - (a * (pts[p][0] - pts[i][0]) + b * (pts[p][1] - pts[i][1])) / c;
          if (z[p] < plane) below = false;
          if (z[p] == plane) on.push_back(p);
        }
        if (below) maximal.insert(std::move(on));
      }
    }
  }
  std::set<Cell> cells(maximal.begin(), maximal.end());
  for (const auto& cell : maximal) {
    for (size_t s = 0; s < cell.size(); ++s) {
      for (size_t t = s + 1; t < cell.size(); ++t) {
        const auto& u = pts[cell[s]];
        const auto& v = pts[cell[t]];
        bool pos = false, neg = false;
        Cell edge;
        for (size_t w : cell) {
          const long cross = static_cast<long>(v[0] - u[0]) * (pts[w][1] - u[1]) -
                             static_cast<long>(v[1] - u[1]) * (pts[w][0] - u[0]);
          if (cross > 0) pos = true;
          if (cross < 0) neg = true;
          if (cross == 0) edge.push_back(w);
        }
        if (pos && neg) continue;
        cells.insert({edge.front()});
        cells.insert({edge.back()});
        cells.insert(std::move(edge));
      }
    }
  }
  return {cells.begin(), cells.end()};
}

}  // namespace

LatticeSubdivision dual_complex_lp(const TropPolynomial& f) {
  const LatticePolytope polytope = f.newton_polytope();
  const RationalVector lifts = lifts_on(f, polytope);
  return LatticeSubdivision(polytope, regular_subdivision(polytope.lattice_points(), lifts));
}

LatticeSubdivision dual_complex_direct(const TropPolynomial& f) {
  const LatticePolytope polytope = f.newton_polytope();
  const int n = f.dimension();
  if (n > 2 || affine_dimension(polytope.lattice_points()) != n) {
    throw DomainError("dual_complex", "direct lower hull needs a full-dimensional polytope in dimension 1 or 2");
  }
  const RationalVector lifts = lifts_on(f, polytope);
  const auto& pts = polytope.lattice_points();
  return LatticeSubdivision(polytope, n == 1 ? lower_hull_1d(pts, lifts) : lower_hull_2d(pts, lifts));
}

DualComplex dual_complex(const TropPolynomial& f) {
  TropPolynomial sat = saturate(f);
  const bool was = sat == f;
  const int d = affine_dimension(sat.monomials());
  LatticeSubdivision sub = (sat.dimension() <= 2 && d == sat.dimension()) ? dual_complex_direct(sat) : dual_complex_lp(sat);
  return DualComplex{std::move(sub), std::move(sat), was};
}

std::optional<RationalVector> dual_cell_point(const TropPolynomial& f, const std::vector<Monomial>& cell) {
  const size_t n = static_cast<size_t>(f.dimension());
  lp::LinearProgram prog;
  for (size_t k = 0; k <= n; ++k) prog.add_variable(true);
  const int t = prog.add_variable();
  for (const auto& [m, a] : f.terms()) {
    RationalVector row(n + 2, 0);
    for (size_t k = 0; k < n; ++k) row[k] = m[k];
    row[n] = -1;
    const bool in_cell = std::find(cell.begin(), cell.end(), m) != cell.end();
    if (!in_cell) row[n + 1] = -1;
    prog.add_constraint(std::move(row), in_cell ? lp::Sense::equal : lp::Sense::greater_equal, -a);
  }
  RationalVector cap(n + 2, 0);
  cap[static_cast<size_t>(t)] = 1;
  prog.add_constraint(cap, lp::Sense::less_equal, 1);
  prog.set_objective(cap, true);
  const lp::Solution sol = prog.solve();
  if (sol.status != lp::Status::optimal || sol.objective == 0) return std::nullopt;
  return RationalVector(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(n));
}

// ---------------------------------------------------------------- weightings

int Weighting::total() const {
  int s = 0;
  for (int m : mu) s += m;
  return s;
}

void validate_weighting(const LatticeSubdivision& sub, const Weighting& w) {
  if (w.mu.size() != sub.num_cells()) throw DomainError("weighting", "one weight per cell required");
  for (size_t c = 0; c < w.mu.size(); ++c) {
    if (w.mu[c] < 0 || static_cast<size_t>(w.mu[c]) + 1 > sub.cells()[c].size()) {
      throw DomainError("weighting", "weight of cell " + std::to_string(c) + " outside [0, |P| - 1]");
    }
  }
}

WeightedSubdivision weighting_from_points(const TropPolynomial& f, const std::vector<PointCondition>& conditions) {
  constexpr const char* op = "weighting_from_points";
  DualComplex dc = dual_complex(f);
  Weighting w{std::vector<int>(dc.subdivision.num_cells(), 0)};
  for (size_t i = 0; i < conditions.size(); ++i) {
    const auto& cond = conditions[i];
    if (cond.mult < 1) throw DomainError(op, "multiplicities must be positive");
    if (static_cast<int>(cond.point.size()) != f.dimension()) {
      throw DomainError(op, "point " + std::to_string(i) + " has the wrong dimension");
    }
    const EvalResult ev = evaluate(dc.saturated, cond.point);
    if (static_cast<int>(ev.argmin.size()) - 1 < cond.mult) {
      throw DomainError(op, "point " + std::to_string(i) + " has multiplicity " +
                                std::to_string(ev.argmin.size() - 1) + " < " + std::to_string(cond.mult));
    }
    Cell cell;
    for (const auto& m : ev.argmin) cell.push_back(*dc.subdivision.polytope().index_of(m));
    std::sort(cell.begin(), cell.end());
    const auto c = dc.subdivision.index_of(cell);
    if (!c) throw std::logic_error("weighting_from_points: argmin set is not a cell");
    if (w.mu[*c] != 0) throw DomainError(op, "two points lie in the interior of the same cell");
    w.mu[*c] = cond.mult;
  }
  return WeightedSubdivision{std::move(dc.subdivision), std::move(w)};
}

namespace {

std::vector<bool> as_mask(const PointSet& l, const LatticeSubdivision& sub, const char* op) {
  std::vector<bool> mask(sub.polytope().size(), false);
  for (size_t p : l) {
    if (p >= mask.size()) throw DomainError(op, "lattice point index out of range");
    mask[p] = true;
  }
  return mask;
}

size_t hits(const Cell& cell, const std::vector<bool>& mask) {
  size_t k = 0;
  for (size_t p : cell) k += mask[p] ? 1 : 0;
  return k;
}

bool deformable_mask(const std::vector<bool>& mask, const Weighting& w, const LatticeSubdivision& sub) {
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (w.mu[c] == 0) continue;
    const size_t k = hits(sub.cells()[c], mask);
    if (k != 0 && k < static_cast<size_t>(w.mu[c]) + 1) return false;
  }
  return true;
}

bool admissible_mask(const std::vector<bool>& mask, const LatticeSubdivision& sub) {
  if (std::find(mask.begin(), mask.end(), true) == mask.end()) return false;
  for (size_t v : sub.vertices()) {
    if (!mask[v]) return true;
  }
  return false;
}

PointSet to_set(const std::vector<bool>& mask) {
  PointSet out;
  for (size_t p = 0; p < mask.size(); ++p) {
    if (mask[p]) out.push_back(p);
  }
  return out;
}

}  // namespace

int used(const PointSet& l, const Weighting& w, const LatticeSubdivision& sub) {
  validate_weighting(sub, w);
  const auto mask = as_mask(l, sub, "used");
  int total = 0;
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (hits(sub.cells()[c], mask) >= static_cast<size_t>(w.mu[c]) + 1) total += w.mu[c];
  }
  return total;
}

bool is_deformable(const PointSet& l, const Weighting& w, const LatticeSubdivision& sub) {
  validate_weighting(sub, w);
  const auto mask = as_mask(l, sub, "is_deformable");
  if (l.empty()) throw DomainError("is_deformable", "L is empty");
  if (!admissible_mask(mask, sub)) throw DomainError("is_deformable", "L contains every vertex of the subdivision");
  return deformable_mask(mask, w, sub);
}

std::vector<size_t> full_cells(const Weighting& w, const LatticeSubdivision& sub) {
  std::vector<size_t> out;
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (static_cast<size_t>(w.mu[c]) + 1 == sub.cells()[c].size()) out.push_back(c);
  }
  return out;
}

bool is_full(const Weighting& w, const LatticeSubdivision& sub) {
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (w.mu[c] != 0 && static_cast<size_t>(w.mu[c]) + 1 != sub.cells()[c].size()) return false;
  }
  return true;
}

std::vector<PointSet> support_components(const Weighting& w, const LatticeSubdivision& sub) {
  const size_t n = sub.polytope().size();
  boost::disjoint_sets_with_storage<> sets(n);
  std::vector<bool> covered(n, false);
  for (size_t c : full_cells(w, sub)) {
    const auto& cell = sub.cells()[c];
    for (size_t p : cell) {
      covered[p] = true;
      sets.union_set(cell.front(), p);
    }
  }
  std::vector<PointSet> out;
  std::vector<size_t> slot(n, n);
  for (size_t p = 0; p < n; ++p) {
    if (!covered[p]) continue;
    const size_t root = sets.find_set(p);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(p);
  }
  return out;
}

RigidityResult rigid_by_search(const Weighting& w, const LatticeSubdivision& sub, size_t brute_limit) {
  validate_weighting(sub, w);
  const size_t n = sub.polytope().size();
  if (n > brute_limit || n > 31) {
    throw DomainError("is_rigid", "exhaustive search limited to " + std::to_string(std::min<size_t>(brute_limit, 31)) +
                                      " lattice points, got " + std::to_string(n));
  }
  std::vector<std::pair<std::uint32_t, size_t>> constraints;  // (cell mask, mu + 1)
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (w.mu[c] == 0) continue;
    std::uint32_t m = 0;
    for (size_t p : sub.cells()[c]) m |= std::uint32_t{1} << p;
    constraints.emplace_back(m, static_cast<size_t>(w.mu[c]) + 1);
  }
  std::uint32_t vertex_mask = 0;
  for (size_t v : sub.vertices()) vertex_mask |= std::uint32_t{1} << v;

  RigidityResult r;
  r.rigid = true;
  for (size_t k = 1; k <= n && r.rigid; ++k) {
    for_each_combination(n, k, [&](const std::vector<size_t>& pick_set) {
      std::uint32_t l = 0;
      for (size_t p : pick_set) l |= std::uint32_t{1} << p;
      if ((l & vertex_mask) == vertex_mask) return false;
      for (const auto& [m, need] : constraints) {
        const auto hit = static_cast<size_t>(__builtin_popcount(l & m));
        if (hit != 0 && hit < need) return false;
      }
      r.rigid = false;
      r.witness = PointSet(pick_set.begin(), pick_set.end());
      return true;
    });
  }
  return r;
}

namespace {

// Witness for a disconnected or non-full support.
PointSet connectivity_witness(const Weighting& w, const LatticeSubdivision& sub, const std::vector<PointSet>& comps) {
  const size_t n = sub.polytope().size();
  std::vector<bool> mask(n, false);
  auto add_all = [&](const PointSet& s) {
    for (size_t p : s) mask[p] = true;
  };

  if (is_full(w, sub)) {
    add_all(comps.front());
    return to_set(mask);
  }

  // A deficient cell meeting some component twice seeds a set with used(L) >= |L|.
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    const auto& cell = sub.cells()[c];
    if (w.mu[c] == 0 || static_cast<size_t>(w.mu[c]) + 1 == cell.size()) continue;
    std::vector<size_t> meets(comps.size(), 0);
    for (size_t q = 0; q < comps.size(); ++q) {
      for (size_t p : cell) meets[q] += std::binary_search(comps[q].begin(), comps[q].end(), p) ? 1 : 0;
    }
    const auto first = std::find_if(meets.begin(), meets.end(), [](size_t k) { return k >= 2; });
    if (first == meets.end()) continue;
    add_all(comps[static_cast<size_t>(first - meets.begin())]);
    for (size_t q = 0; q < comps.size() && hits(cell, mask) < static_cast<size_t>(w.mu[c]) + 1; ++q) {
      if (meets[q] > 0) add_all(comps[q]);
    }
    // Grow: top up any cell met in 1..mu points.
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t d = 0; d < sub.num_cells() && !changed; ++d) {
        const size_t need = static_cast<size_t>(w.mu[d]) + 1;
        const size_t k = hits(sub.cells()[d], mask);
        if (w.mu[d] == 0 || k == 0 || k >= need) continue;
        for (size_t p : sub.cells()[d]) {
          if (hits(sub.cells()[d], mask) >= need) break;
          mask[p] = true;
        }
        changed = true;
      }
    }
    return to_set(mask);
  }

  // Every deficient cell meets each component at most once: drop one component.
  std::fill(mask.begin(), mask.end(), true);
  for (size_t p : comps.front()) mask[p] = false;
  return to_set(mask);
}

}  // namespace

RigidityResult is_rigid(const Weighting& w, const LatticeSubdivision& sub, size_t brute_limit) {
  validate_weighting(sub, w);
  const size_t n = sub.polytope().size();
  if (!is_lattice_simplicial(sub) || static_cast<size_t>(w.total()) + 1 != n) {
    return rigid_by_search(w, sub, brute_limit);
  }
  const auto comps = support_components(w, sub);
  RigidityResult r;
  r.fast_path = true;
  r.rigid = comps.size() == 1 && is_full(w, sub);
  if (!r.rigid) {
    PointSet l = connectivity_witness(w, sub, comps);
    const auto mask = as_mask(l, sub, "is_rigid");
    if (!admissible_mask(mask, sub) || !deformable_mask(mask, w, sub)) {
      throw std::logic_error("is_rigid: constructed witness is not deformable");
    }
    r.witness = std::move(l);
  }
  return r;
}

// ---------------------------------------------------------------- fitting

TwMatrix evaluation_matrix(const LatticePolytope& polytope, const std::vector<PointCondition>& conditions) {
  if (conditions.empty()) throw DomainError("fit_hypersurface", "no point conditions");
  std::vector<RationalVector> rows;
  std::vector<int> weights;
  for (const auto& cond : conditions) {
    if (static_cast<int>(cond.point.size()) != polytope.dimension()) {
      throw DomainError("fit_hypersurface", "point dimension differs from the polytope dimension");
    }
    if (cond.mult < 1) throw DomainError("fit_hypersurface", "multiplicities must be positive");
    RationalVector row;
    for (const auto& lp_point : polytope.lattice_points()) {
      Rational v = 0;
      for (size_t k = 0; k < lp_point.size(); ++k) v += lp_point[k] * cond.point[k];
      row.push_back(v);
    }
    rows.push_back(std::move(row));
    weights.push_back(cond.mult);
  }
  return TwMatrix(std::move(rows), std::move(weights));
}

FitResult fit_hypersurface(const LatticePolytope& polytope, const std::vector<PointCondition>& conditions) {
  TwMatrix a = evaluation_matrix(polytope, conditions);
  if (static_cast<size_t>(a.weight_total()) + 1 != polytope.size()) {
    throw DomainError("fit_hypersurface", "multiplicities sum to " + std::to_string(a.weight_total()) +
                                              ", need |L(Delta)| - 1 = " + std::to_string(polytope.size() - 1));
  }
  CramerSolution s = cramer_solve(a);
  return FitResult{TropPolynomial::on_polytope(polytope, s.vector), s.unique, std::move(a),
                   std::move(s.minor_singular)};
}

TropPolynomial deform(const TropPolynomial& f, const std::vector<Monomial>& l, const Rational& eps) {
  if (eps <= 0) throw DomainError("deform", "eps must be positive");
  auto terms = f.terms();
  for (const auto& m : l) {
    auto it = terms.find(m);
    if (it == terms.end()) throw DomainError("deform", "L contains a monomial that is not a term");
  }
  std::set<Monomial> distinct(l.begin(), l.end());
  for (const auto& m : distinct) terms[m] -= eps;
  return TropPolynomial(f.dimension(), std::move(terms));
}

}  // namespace tropcram
