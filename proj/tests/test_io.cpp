#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "tropcram/cli.hpp"
#include "tropcram/error.hpp"
#include "tropcram/io.hpp"
#include "tropcram/svg.hpp"

using namespace tropcram;
using io::Json;

TEST_CASE("json round trips") {
  const TwMatrix a({{0, Rational(1, 2)}, {Rational(-7, 3), 4}}, {1, 1});
  CHECK(io::matrix_from_json(io::parse_json(io::to_json(a).dump())) == a);

  const RationalVector v{1, Rational(-1, 3)};
  CHECK(io::vector_from_json(io::parse_json(io::to_json(v).dump())) == v);
  CHECK(io::vector_from_json(io::parse_json(R"({"x":[1,"-1/3"]})")) == v);

  const auto f = fixtures::singular_conic();
  CHECK(io::polynomial_from_json(io::parse_json(io::to_json(f).dump())) == f);

  const auto sub = fixtures::honeycomb_subdivision();
  CHECK(io::subdivision_from_json(io::parse_json(io::to_json(sub).dump())) == sub);

  const auto w = fixtures::mu_looks_connected();
  CHECK(io::weighting_from_json(io::parse_json(io::to_json(w, sub).dump()), sub) == w);

  const std::vector<PointCondition> pts{{{0, Rational(1, 2)}, 2}, {{-1, 1}, 1}};
  CHECK(io::conditions_from_json(io::parse_json(io::to_json(pts).dump())) == pts);

  const Hypergraph g{4, {{0, 1, 3}, {2, 3}}};
  CHECK(io::hypergraph_from_json(io::parse_json(io::to_json(g).dump())) == g);

  const PermResult r = tw_permanent(TwMatrix({{0, 0, 0}, {2, 1, 1}}, {2, 1}));
  const PermResult back = io::perm_result_from_json(io::parse_json(io::to_json(r).dump()));
  CHECK(back.value == r.value);
  CHECK(back.optimal == r.optimal);
  CHECK(back.singular == r.singular);
  CHECK(back.witness == r.witness);
}

TEST_CASE("schema violations are parse errors") {
  CHECK_THROWS_AS(io::parse_json("{"), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"rows":[[1,2],[3]]})")), ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse_json(R"({"rows":[[1.5]]})")), ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(io::parse_json(R"({"dim":2,"terms":[{"exp":[0],"coef":0}]})")),
                  ParseError);
  CHECK_THROWS_AS(io::conditions_from_json(io::parse_json(R"({"conditions":[{"point":[0,0],"mult":0}]})")),
                  ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), IoError);
}

TEST_CASE("cli exit codes") {
  std::ostringstream out, err;
  CHECK(cli::run({}, out, err) == cli::kParse);
  CHECK(cli::run({"bogus"}, out, err) == cli::kParse);
  CHECK(cli::run({"perm", "/nonexistent.json"}, out, err) == cli::kParse);
  out.str("");
  CHECK(cli::run({"--help"}, out, err) == cli::kOk);
  CHECK(out.str().find("perm") != std::string::npos);
}

TEST_CASE("plot geometry of the tropical line") {
  TropPolynomial f(2, {{{1, 0}, 3}, {{0, 1}, -2}, {{0, 0}, 0}});
  const auto c = plane_curve(f, std::array<Rational, 4>{-6, -6, 2, 2});
  REQUIRE(c.vertices.size() == 1);
  CHECK(c.vertices[0] == RationalVector{-3, 2});
  REQUIRE(c.edges.size() == 3);
  // each ray starts at the vertex; one goes up, one left-down, one right
  int up = 0, right = 0, diag = 0;
  for (const auto& e : c.edges) {
    CHECK(e.from == RationalVector{-3, 2});
    if (e.to[0] == -3 && e.to[1] >= 2) ++up;
    if (e.to[1] == 2 && e.to[0] > -3) ++right;
    if (e.to[0] < -3 && e.to[1] < 2) ++diag;
  }
  // the viewport top is y = 2, so the upward ray clips to its start point
  CHECK(up == 1);
  CHECK(right == 1);
  CHECK(diag == 1);
  CHECK_THROWS_AS(plot(TropPolynomial(1, {{{0}, 0}, {{1}, 0}})), DomainError);
}

TEST_CASE("zero conic plots a six-ended star") {
  const auto c = plane_curve(fixtures::zero_conic(), std::array<Rational, 4>{-3, -3, 3, 3});
  CHECK(c.vertices == std::vector<RationalVector>{{0, 0}});
  CHECK(c.edges.size() == 3);
  int ends = 0;
  for (const auto& e : c.edges) ends += e.weight;
  CHECK(ends == 6);
}

TEST_CASE("plots are deterministic") {
  PlotOptions o;
  o.points = {{{-2, 1}, 1}, {{2, 3}, 1}};
  o.show_dual = true;
  const auto f = fixtures::honeycomb_conic();
  CHECK(plot(f, o) == plot(f, o));
  o.points.clear();
  const auto s = plot(f, o);
  CHECK(s.find("<circle cx") != std::string::npos);
  CHECK(s.find("id=\"points\"") == std::string::npos);
}
