#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tropcram/geometry.hpp"
#include "tropcram/trop_core.hpp"

namespace tropcram {

struct PlotOptions {
  std::optional<std::array<Rational, 4>> viewport;  // x0, y0, x1, y1
  std::vector<PointCondition> points;
  bool show_dual = false;
};

// Exact pieces of V(f) for a plane curve.
struct CurveSegment {
  RationalVector from, to;
  int weight = 1;  // lattice length of the dual edge
};

struct PlaneCurve {
  std::vector<RationalVector> vertices;
  std::vector<CurveSegment> edges;   // bounded, clipped to the viewport
  std::array<Rational, 4> viewport;
};

PlaneCurve plane_curve(const TropPolynomial& f, const std::optional<std::array<Rational, 4>>& viewport = std::nullopt);

std::string plot(const TropPolynomial& f, const PlotOptions& options = {});

}  // namespace tropcram
