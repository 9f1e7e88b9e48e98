#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tropcram/geometry.hpp"
#include "tropcram/hypergraph.hpp"
#include "tropcram/twla.hpp"

namespace fixtures {

using namespace tropcram;

// Lattice points of 2*simplex in canonical order.
inline constexpr std::size_t p00 = 0, p01 = 1, p02 = 2, p10 = 3, p11 = 4, p20 = 5;

// a00 = a20 = a02 = 2, the rest 0: four unit triangles.
TropPolynomial honeycomb_conic();
TropPolynomial zero_conic();
// 0 + 1x + 2x^2 + 1y + 0xy + 2y^2
TropPolynomial singular_conic();
LatticeSubdivision honeycomb_subdivision();
// [0,2] x [0,1] triangulated by a generic lift.
LatticeSubdivision strip_subdivision();

Weighting weighting(const LatticeSubdivision& sub, const std::vector<std::pair<Cell, int>>& entries);

Weighting mu_disconnected();  // not rigid; {01, 11, 02} deforms
Weighting mu_connected();     // spanning path, rigid
Weighting mu_looks_connected();
Weighting mu_not_full_rigid();

TwMatrix game_matrix();
Hypergraph game_hypergraph();
TwMatrix gap_matrix();
Hypergraph gap_hypergraph();

std::string read_file(const std::string& path);

}  // namespace fixtures
