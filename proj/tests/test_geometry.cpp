#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "tropcram/error.hpp"
#include "tropcram/geometry.hpp"
#include "tropcram/oracle.hpp"

using namespace tropcram;
using namespace fixtures;

TEST_CASE("honeycomb conic subdivision") {
  const auto sub = honeycomb_subdivision();
  CHECK(is_lattice_simplicial(sub));
  CHECK(sub.maximal_cells().size() == 4);
  CHECK(sub.num_cells() == 6 + 9 + 4);
  CHECK(sub.index_of({p01, p10, p11}));
  CHECK(sub.index_of({p00, p10}));
  CHECK_FALSE(sub.index_of({p00, p11}));
  CHECK(sub.vertices().size() == 6);
}

TEST_CASE("zero conic is one big cell") {
  const auto dc = dual_complex(zero_conic());
  CHECK(dc.subdivision.maximal_cells().size() == 1);
  CHECK_FALSE(is_lattice_simplicial(dc.subdivision));
  CHECK(dc.subdivision.vertices().size() == 3);
}

TEST_CASE("direct and LP routes agree") {
  std::mt19937 rng(31);
  const auto tri = LatticePolytope::simplex(2, 2);
  const auto box = LatticePolytope::box({2, 1});
  for (int it = 0; it < 60; ++it) {
    const auto& p = it % 2 ? tri : box;
    RationalVector c;
    for (std::size_t i = 0; i < p.lattice_points().size(); ++i) c.push_back(static_cast<int>(rng() % 5));
    const auto f = saturate(TropPolynomial::on_polytope(p, c));
    CHECK(dual_complex_direct(f) == dual_complex_lp(f));
  }
}

TEST_CASE("subdivision of a one-dimensional polytope") {
  TropPolynomial f(1, {{{0}, 0}, {{1}, 0}, {{2}, 1}, {{3}, 3}});
  const auto sub = dual_complex(f).subdivision;
  CHECK(sub.maximal_cells() .size() == 3);
}

TEST_CASE("dual cell points") {
  const auto f = honeycomb_conic();
  const auto x = dual_cell_point(f, {{1, 0}, {0, 1}, {1, 1}});
  REQUIRE(x);
  const auto e = evaluate(f, *x);
  CHECK(e.argmin == std::vector<Monomial>{{0, 1}, {1, 0}, {1, 1}});
  CHECK_FALSE(dual_cell_point(f, {{0, 0}, {1, 1}}));
}

TEST_CASE("weightings from points") {
  const auto f = zero_conic();
  const auto ws = weighting_from_points(f, {{{0, 0}, 5}});
  CHECK(ws.weighting.total() == 5);
  const auto c = ws.subdivision.maximal_cells().front();
  CHECK(ws.weighting.mu[c] == 5);
  CHECK(is_full(ws.weighting, ws.subdivision));
  CHECK_THROWS_AS(weighting_from_points(f, {{{0, 0}, 6}}), DomainError);
  CHECK_THROWS_AS(weighting_from_points(f, {{{1, 1}, 1}}), DomainError);
}

TEST_CASE("rigidity fixtures and their verdicts") {
  const auto sub = honeycomb_subdivision();
  SUBCASE("disconnected marked subcomplex deforms") {
    const auto w = mu_disconnected();
    CHECK(is_deformable({p01, p02, p11}, w, sub));
    CHECK_FALSE(is_rigid(w, sub).rigid);
    CHECK(support_components(w, sub).size() == 2);
  }
  SUBCASE("connected path is rigid") {
    const auto w = mu_connected();
    const auto r = is_rigid(w, sub);
    CHECK(r.rigid);
    CHECK(r.fast_path);
    CHECK(is_full(w, sub));
    CHECK(oracle::brute_rigid(w, sub).rigid);
  }
  SUBCASE("looks connected but is neither full nor rigid") {
    const auto w = mu_looks_connected();
    CHECK_FALSE(is_full(w, sub));
    CHECK(is_deformable({p00, p01, p02, p10, p20}, w, sub));
    const auto r = is_rigid(w, sub);
    CHECK_FALSE(r.rigid);
    REQUIRE(r.witness);
    CHECK(is_deformable(*r.witness, w, sub));
  }
  SUBCASE("rigid but not full when the count is off") {
    const auto w = mu_not_full_rigid();
    CHECK(w.total() == 6);
    CHECK_FALSE(is_full(w, sub));
    CHECK(is_rigid(w, sub).rigid);
    CHECK(oracle::brute_rigid(w, sub).rigid);
  }
}

TEST_CASE("deformable set preconditions") {
  const auto sub = honeycomb_subdivision();
  const auto w = mu_connected();
  CHECK_THROWS_AS(is_deformable({}, w, sub), DomainError);
  CHECK_THROWS_AS(is_deformable({p00, p01, p02, p10, p11, p20}, w, sub), DomainError);
  CHECK_NOTHROW(is_deformable({p00, p02, p20}, w, sub));
}

TEST_CASE("a single point of full multiplicity fixes the conic") {
  const auto r = fit_hypersurface(LatticePolytope::simplex(2, 2), {{{0, 0}, 5}});
  CHECK(r.unique);
  for (const auto& [m, c] : r.f.terms()) CHECK(c == r.f.terms().begin()->second);
  CHECK(multiplicity_at(r.f, RationalVector{0, 0}) == 5);
  CHECK_THROWS_AS(fit_hypersurface(LatticePolytope::simplex(2, 2), {{{0, 0}, 4}}), DomainError);
}

TEST_CASE("fitted hypersurfaces pass through their points") {
  std::mt19937 rng(32);
  const auto p = LatticePolytope::simplex(2, 1);
  for (int it = 0; it < 50; ++it) {
    std::vector<PointCondition> pts;
    for (int k = 0; k < 2; ++k) pts.push_back({{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3}, 1});
    const auto r = fit_hypersurface(p, pts);
    for (const auto& c : pts) CHECK(multiplicity_at(r.f, c.point) >= c.mult);
  }
}

TEST_CASE("deform lowers chosen coefficients") {
  const auto f = honeycomb_conic();
  const auto g = deform(f, {{0, 0}}, Rational(1, 2));
  CHECK(g.coefficient({0, 0}) == Rational(3, 2));
  CHECK(g.coefficient({1, 1}) == 0);
  CHECK_THROWS_AS(deform(f, {{0, 0}}, 0), DomainError);
  CHECK_THROWS_AS(deform(f, {{3, 0}}, 1), DomainError);
}

TEST_CASE("strip subdivision is a unimodular triangulation") {
  const auto sub = strip_subdivision();
  CHECK(is_lattice_simplicial(sub));
  CHECK(sub.maximal_cells().size() == 4);
}
