#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

TropPolynomial honeycomb_conic() {
  return TropPolynomial::on_polytope(LatticePolytope::simplex(2, 2), {2, 0, 2, 0, 0, 2});
}

TropPolynomial zero_conic() { return TropPolynomial::on_polytope(LatticePolytope::simplex(2, 2), RationalVector(6, 0)); }

TropPolynomial singular_conic() {
  // order 00 01 02 10 11 20
  return TropPolynomial::on_polytope(LatticePolytope::simplex(2, 2), {0, 1, 2, 1, 0, 2});
}

LatticeSubdivision honeycomb_subdivision() { return dual_complex(honeycomb_conic()).subdivision; }

LatticeSubdivision strip_subdivision() {
  // order 00 01 10 11 20 21
  const auto box = LatticePolytope::box({2, 1});
  return dual_complex(TropPolynomial::on_polytope(box, {0, 1, 0, 0, 2, 1})).subdivision;
}

Weighting weighting(const LatticeSubdivision& sub, const std::vector<std::pair<Cell, int>>& entries) {
  Weighting w{std::vector<int>(sub.num_cells(), 0)};
  for (const auto& [cell, mu] : entries) {
    const auto c = sub.index_of(cell);
    if (!c) throw std::logic_error("fixture cell missing from subdivision");
    w.mu[*c] = mu;
  }
  validate_weighting(sub, w);
  return w;
}

Weighting mu_disconnected() {
  return weighting(honeycomb_subdivision(),
                   {{{p00, p10}, 1}, {{p10, p20}, 1}, {{p01, p02}, 1}, {{p01, p11}, 1}, {{p02, p11}, 1}});
}

Weighting mu_connected() {
  return weighting(honeycomb_subdivision(),
                   {{{p10, p20}, 1}, {{p00, p10}, 1}, {{p00, p01}, 1}, {{p01, p11}, 1}, {{p02, p11}, 1}});
}

Weighting mu_looks_connected() {
  return weighting(honeycomb_subdivision(), {{{p00, p01, p10}, 1},
                                             {{p10, p11, p20}, 1},
                                             {{p01, p02, p11}, 1},
                                             {{p01, p10, p11}, 1},
                                             {{p00, p10}, 1}});
}

Weighting mu_not_full_rigid() {
  return weighting(honeycomb_subdivision(), {{{p10, p20}, 1},
                                             {{p11, p20}, 1},
                                             {{p00, p01}, 1},
                                             {{p01, p02}, 1},
                                             {{p00, p01, p10}, 1},
                                             {{p01, p10, p11}, 1}});
}

TwMatrix game_matrix() { return TwMatrix({{0, 0, 3, 3, 3}, {0, 4, 0, 4, 5}, {5, 0, 0, 3, 4}, {6, 7, 0, 0, 1}}); }

Hypergraph game_hypergraph() { return Hypergraph{5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}}; }

// Zero pattern edges 1-2, 1-6, 1-5, 5-6, 2-6, 3-7, 4-8; every other entry positive.
TwMatrix gap_matrix() {
  const auto g = gap_hypergraph();
  std::vector<RationalVector> rows(g.edges.size(), RationalVector(g.num_vertices));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < g.num_vertices; ++j) rows[i][j] = 1 + static_cast<int>((3 * i + 5 * j) % 4);
    for (std::size_t v : g.edges[i]) rows[i][v] = 0;
  }
  return TwMatrix(std::move(rows));
}

Hypergraph gap_hypergraph() { return Hypergraph{8, {{0, 1}, {0, 5}, {0, 4}, {4, 5}, {1, 5}, {2, 6}, {3, 7}}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
