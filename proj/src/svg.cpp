#include "tropcram/svg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tropcram/error.hpp"

namespace tropcram {

using std::size_t;

namespace {

using Box = std::array<Rational, 4>;

// Parametric clip of p + t d against the box; open ends are missing bounds.
std::optional<CurveSegment> clip(const RationalVector& p, const RationalVector& d, std::optional<Rational> t0,
                                 std::optional<Rational> t1, const Box& box) {
  for (int k = 0; k < 2; ++k) {
    const Rational& lo = box[k];
    const Rational& hi = box[k + 2];
    if (d[k] == 0) {
      if (p[k] < lo || p[k] > hi) return std::nullopt;
      continue;
    }
    Rational ta = (lo - p[k]) / d[k];
    Rational tb = (hi - p[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    if (!t0 || *t0 < ta) t0 = ta;
    if (!t1 || *t1 > tb) t1 = tb;
  }
  if (*t0 > *t1) return std::nullopt;
  CurveSegment s;
  s.from = {p[0] + *t0 * d[0], p[1] + *t0 * d[1]};
  s.to = {p[0] + *t1 * d[0], p[1] + *t1 * d[1]};
  return s;
}

bool inside(const RationalVector& p, const Box& box) {
  return p[0] >= box[0] && p[0] <= box[2] && p[1] >= box[1] && p[1] <= box[3];
}

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return static_cast<long long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long long>(a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull without collinear points.
std::vector<LatticePoint> hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Box default_viewport(const std::vector<RationalVector>& anchors) {
  if (anchors.empty()) return {Rational(-2), Rational(-2), Rational(2), Rational(2)};
  Rational x0 = anchors[0][0], x1 = x0, y0 = anchors[0][1], y1 = y0;
  for (const auto& a : anchors) {
    x0 = std::min<Rational>(x0, a[0]);
    x1 = std::max<Rational>(x1, a[0]);
    y0 = std::min<Rational>(y0, a[1]);
    y1 = std::max<Rational>(y1, a[1]);
  }
  Rational pad = std::max<Rational>(x1 - x0, y1 - y0) / 2;
  if (pad < 2) pad = 2;
  return {x0 - pad, y0 - pad, x1 + pad, y1 + pad};
}

std::string num(const Rational& v) { return to_decimal(v, 6); }

}  // namespace

PlaneCurve plane_curve(const TropPolynomial& f, const std::optional<Box>& viewport) {
  if (f.dimension() != 2) throw DomainError("plot", "only plane curves can be drawn");
  const DualComplex dc = dual_complex(f);
  const LatticeSubdivision& sub = dc.subdivision;
  const TropPolynomial& g = dc.saturated;
  const auto& pts = sub.polytope().lattice_points();
  const int dim = affine_dimension(pts);

  struct Piece {
    RationalVector base, dir;
    bool ray = false, line = false;
    RationalVector end;
    int weight = 1;
  };
  std::vector<Piece> pieces;
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> anchors;

  auto monomials = [&](const Cell& c) {
    std::vector<Monomial> m;
    for (size_t i : c) m.push_back(pts[i]);
    return m;
  };

  std::vector<std::optional<RationalVector>> vertex_of(sub.num_cells());
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    if (sub.dimension(c) != 2) continue;
    vertex_of[c] = dual_cell_point(g, monomials(sub.cells()[c]));
    vertices.push_back(*vertex_of[c]);
    anchors.push_back(*vertex_of[c]);
  }

  for (size_t e = 0; e < sub.num_cells(); ++e) {
    if (sub.dimension(e) != 1) continue;
    const Cell& edge = sub.cells()[e];
    const LatticePoint& a = pts[edge.front()];
    const LatticePoint& b = pts[edge.back()];
    const int dx = b[0] - a[0], dy = b[1] - a[1];
    Piece piece;
    piece.weight = std::gcd(dx, dy);
    piece.dir = {Rational(-dy), Rational(dx)};

    if (dim == 1) {
      // (b - a) . x = c_a - c_b
      const Rational rhs = g.coefficient(a) - g.coefficient(b);
      const Rational norm = dx * dx + dy * dy;
      piece.base = {rhs * dx / norm, rhs * dy / norm};
      piece.line = true;
      anchors.push_back(piece.base);
      pieces.push_back(std::move(piece));
      continue;
    }

    std::vector<size_t> faces;
    for (size_t c = 0; c < sub.num_cells(); ++c) {
      if (sub.dimension(c) == 2 && std::includes(sub.cells()[c].begin(), sub.cells()[c].end(), edge.begin(), edge.end())) {
        faces.push_back(c);
      }
    }
    if (faces.size() == 2) {
      piece.base = *vertex_of[faces[0]];
      piece.end = *vertex_of[faces[1]];
    } else if (faces.size() == 1) {
      // Ray along the inner normal of the boundary edge.
      piece.base = *vertex_of[faces[0]];
      piece.ray = true;
      for (size_t i : sub.cells()[faces[0]]) {
        const long long side = static_cast<long long>(-dy) * (pts[i][0] - a[0]) + static_cast<long long>(dx) * (pts[i][1] - a[1]);
        if (side != 0) {
          if (side < 0) piece.dir = {Rational(dy), Rational(-dx)};
          break;
        }
      }
    } else {
      continue;
    }
    pieces.push_back(std::move(piece));
  }

  PlaneCurve out;
  out.viewport = viewport ? *viewport : default_viewport(anchors);
  if (!(out.viewport[0] < out.viewport[2] && out.viewport[1] < out.viewport[3])) {
    throw DomainError("plot", "empty viewport");
  }
  for (const auto& v : vertices) {
    if (inside(v, out.viewport)) out.vertices.push_back(v);
  }
  for (const auto& p : pieces) {
    std::optional<CurveSegment> s;
    if (p.line) {
      s = clip(p.base, p.dir, std::nullopt, std::nullopt, out.viewport);
    } else if (p.ray) {
      s = clip(p.base, p.dir, Rational(0), std::nullopt, out.viewport);
    } else {
      RationalVector d = {p.end[0] - p.base[0], p.end[1] - p.base[1]};
      s = clip(p.base, d, Rational(0), Rational(1), out.viewport);
    }
    if (s) {
      s->weight = p.weight;
      out.edges.push_back(std::move(*s));
    }
  }
  return out;
}

std::string plot(const TropPolynomial& f, const PlotOptions& options) {
  const PlaneCurve curve = plane_curve(f, options.viewport);
  const Box& box = curve.viewport;
  const Rational width = 480;
  const Rational scale = width / std::max<Rational>(box[2] - box[0], box[3] - box[1]);
  const Rational w = (box[2] - box[0]) * scale;
  const Rational h = (box[3] - box[1]) * scale;
  auto px = [&](const RationalVector& p) -> std::string {
    const Rational x = (p[0] - box[0]) * scale;
    const Rational y = (box[3] - p[1]) * scale;
    return num(x) + "\" cy=\"" + num(y);
  };

  const Rational inset = 200, gap = 20;
  const Rational total_w = options.show_dual ? w + gap + inset + gap : w;
  const Rational total_h = options.show_dual ? std::max<Rational>(h, inset + 2 * gap) : h;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(total_w) << "\" height=\"" << num(total_h)
     << "\" viewBox=\"0 0 " << num(total_w) << ' ' << num(total_h) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(total_w) << "\" height=\"" << num(total_h) << "\" fill=\"white\"/>\n";
  os << "<g id=\"curve\" stroke=\"black\" stroke-linecap=\"round\" fill=\"none\">\n";
  for (const auto& e : curve.edges) {
    const Rational x1 = (e.from[0] - box[0]) * scale, y1 = (box[3] - e.from[1]) * scale;
    const Rational x2 = (e.to[0] - box[0]) * scale, y2 = (box[3] - e.to[1]) * scale;
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
       << "\" stroke-width=\"" << 2 * e.weight << "\"/>\n";
  }
  os << "</g>\n";

  if (!options.points.empty()) {
    os << "<g id=\"points\" fill=\"black\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (const auto& p : options.points) {
      os << "<circle cx=\"" << px(p.point) << "\" r=\"4\"/>\n";
      const Rational tx = (p.point[0] - box[0]) * scale + 6;
      const Rational ty = (box[3] - p.point[1]) * scale - 6;
      os << "<text x=\"" << num(tx) << "\" y=\"" << num(ty) << "\">" << p.mult << "</text>\n";
    }
    os << "</g>\n";
  }

  if (options.show_dual) {
    const DualComplex dc = dual_complex(f);
    const LatticeSubdivision& sub = dc.subdivision;
    Weighting weights{std::vector<int>(sub.num_cells(), 0)};
    if (!options.points.empty()) weights = weighting_from_points(f, options.points).weighting;
    const auto& pts = sub.polytope().lattice_points();

    // Axes inverted: lattice point I sits at -I.
    int u0 = -pts[0][0], u1 = u0, v0 = -pts[0][1], v1 = v0;
    for (const auto& p : pts) {
      u0 = std::min(u0, -p[0]);
      u1 = std::max(u1, -p[0]);
      v0 = std::min(v0, -p[1]);
      v1 = std::max(v1, -p[1]);
    }
    const Rational ds = (inset - 2 * gap) / std::max({u1 - u0, v1 - v0, 1});
    const Rational ox = w + gap + gap, oy = gap;
    auto at = [&](const LatticePoint& p) -> std::pair<Rational, Rational> {
      return {ox + (-p[0] - u0) * ds, oy + (v1 + p[1]) * ds};
    };

    os << "<g id=\"dual\" stroke=\"gray\" fill=\"none\">\n";
    os << "<rect x=\"" << num(w + gap) << "\" y=\"0\" width=\"" << num(inset) << "\" height=\"" << num(inset)
       << "\" stroke=\"lightgray\"/>\n";
    // 2-cells first so their fill stays under the edges.
    std::vector<size_t> order(sub.num_cells());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return sub.dimension(x) > sub.dimension(y); });
    for (size_t c : order) {
      const Cell& cell = sub.cells()[c];
      const bool full = weights.mu[c] == static_cast<int>(cell.size()) - 1;
      const bool marked = weights.mu[c] > 0;
      const int d = sub.dimension(c);
      if (d == 2) {
        std::vector<LatticePoint> corners;
        for (size_t i : cell) corners.push_back(pts[i]);
        os << "<polygon points=\"";
        bool first = true;
        for (const auto& q : hull(std::move(corners))) {
          const auto [x, y] = at(q);
          os << (first ? "" : " ") << num(x) << ',' << num(y);
          first = false;
        }
        os << "\" fill=\"" << (full ? "#c8c8c8" : "none") << "\" stroke-width=\"" << (marked ? 3 : 1) << "\"/>\n";
      } else if (d == 1) {
        const auto [x1, y1] = at(pts[cell.front()]);
        const auto [x2, y2] = at(pts[cell.back()]);
        os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
           << "\" stroke-width=\"" << (marked ? 4 : 1) << "\"" << (marked ? " stroke=\"black\"" : "") << "/>\n";
      }
    }
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto [x, y] = at(pts[i]);
      os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"gray\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tropcram
