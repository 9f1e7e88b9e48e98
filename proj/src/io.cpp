#include "tropcram/io.hpp"

#include <fstream>
#include <sstream>

#include "tropcram/error.hpp"

namespace tropcram::io {

using std::size_t;

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + ": missing \"" + key + "\"");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  return j;
}

long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
  return j.get<long long>();
}

size_t index(const Json& j, const char* what) {
  const long long v = integer(j, what);
  if (v < 0) throw ParseError(std::string(what) + ": expected a non-negative index");
  return static_cast<size_t>(v);
}

std::vector<size_t> index_list(const Json& j, const char* what) {
  std::vector<size_t> out;
  for (const auto& v : array(j, what)) out.push_back(index(v, what));
  return out;
}

LatticePoint lattice_point(const Json& j, const char* what) {
  LatticePoint p;
  for (const auto& v : array(j, what)) p.push_back(static_cast<int>(integer(v, what)));
  return p;
}

// Constructors validate invariants with DomainError; inside a document that is a schema problem.
template <class F>
auto schema(const char* what, F build) {
  try {
    return build();
  } catch (const DomainError& e) {
    throw ParseError(std::string(what) + ": " + e.message());
  }
}

Json index_json(const std::vector<size_t>& v) {
  Json out = Json::array();
  for (size_t x : v) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(const Rational& value) {
  if (is_integer(value) && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(to_string(value));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json to_json(const RationalVector& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

RationalVector vector_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "x", "vector") : j;
  RationalVector out;
  for (const auto& v : array(arr, "vector")) out.push_back(rational_from_json(v));
  return out;
}

Json to_json(const TwMatrix& a) {
  Json rows = Json::array();
  for (const auto& r : a.rows()) rows.push_back(to_json(r));
  return Json{{"weights", a.weights()}, {"rows", std::move(rows)}};
}

TwMatrix matrix_from_json(const Json& j) {
  std::vector<RationalVector> rows;
  for (const auto& r : array(field(j, "rows", "matrix"), "matrix rows")) rows.push_back(vector_from_json(r));
  std::vector<int> weights;
  if (j.contains("weights")) {
    for (const auto& w : array(j["weights"], "matrix weights")) weights.push_back(static_cast<int>(integer(w, "weight")));
  } else {
    weights.assign(rows.size(), 1);
  }
  return schema("matrix", [&] { return TwMatrix(std::move(rows), std::move(weights)); });
}

Json to_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& b : p.blocks) out.push_back(index_json(b));
  return out;
}

Partition partition_from_json(const Json& j) {
  Partition p;
  for (const auto& b : array(j, "partition")) p.blocks.push_back(index_list(b, "partition block"));
  return p;
}

Json to_json(const PermResult& r) {
  Json out{{"value", to_json(r.value)}, {"singular", r.singular}, {"optimal", to_json(r.optimal)}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  return out;
}

PermResult perm_result_from_json(const Json& j) {
  PermResult r;
  r.value = rational_from_json(field(j, "value", "perm result"));
  const Json& s = field(j, "singular", "perm result");
  if (!s.is_boolean()) throw ParseError("perm result: \"singular\" must be a boolean");
  r.singular = s.get<bool>();
  r.optimal = partition_from_json(field(j, "optimal", "perm result"));
  if (j.contains("witness")) r.witness = partition_from_json(j["witness"]);
  return r;
}

Json to_json(const TropPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back(Json{{"exp", m}, {"coef", to_json(c)}});
  return Json{{"dim", f.dimension()}, {"terms", std::move(terms)}};
}

TropPolynomial polynomial_from_json(const Json& j) {
  const int dim = static_cast<int>(integer(field(j, "dim", "polynomial"), "polynomial dim"));
  std::map<Monomial, Rational> terms;
  for (const auto& t : array(field(j, "terms", "polynomial"), "polynomial terms")) {
    Monomial m = lattice_point(field(t, "exp", "term"), "term exponent");
    if (!terms.emplace(std::move(m), rational_from_json(field(t, "coef", "term"))).second) {
      throw ParseError("polynomial: repeated monomial");
    }
  }
  return schema("polynomial", [&] { return TropPolynomial(dim, std::move(terms)); });
}

Json to_json(const LatticePolytope& p) { return Json{{"dim", p.dimension()}, {"vertices", p.generators()}}; }

LatticePolytope polytope_from_json(const Json& j) {
  const int dim = static_cast<int>(integer(field(j, "dim", "polytope"), "polytope dim"));
  std::vector<LatticePoint> vertices;
  for (const auto& v : array(field(j, "vertices", "polytope"), "polytope vertices")) {
    vertices.push_back(lattice_point(v, "polytope vertex"));
    if (static_cast<int>(vertices.back().size()) != dim) throw ParseError("polytope: vertex length differs from dim");
  }
  return schema("polytope", [&] { return LatticePolytope(dim, std::move(vertices)); });
}

Json to_json(const std::vector<PointCondition>& conditions) {
  Json list = Json::array();
  for (const auto& c : conditions) list.push_back(Json{{"point", to_json(c.point)}, {"mult", c.mult}});
  return Json{{"conditions", std::move(list)}};
}

std::vector<PointCondition> conditions_from_json(const Json& j) {
  std::vector<PointCondition> out;
  for (const auto& c : array(field(j, "conditions", "conditions"), "conditions")) {
    PointCondition pc;
    pc.point = vector_from_json(field(c, "point", "condition"));
    pc.mult = static_cast<int>(integer(field(c, "mult", "condition"), "condition mult"));
    if (pc.mult < 1) throw ParseError("condition: mult must be positive");
    out.push_back(std::move(pc));
  }
  return out;
}

Json to_json(const LatticeSubdivision& sub) {
  Json cells = Json::array();
  for (const auto& c : sub.cells()) cells.push_back(index_json(c));
  return Json{{"polytope", to_json(sub.polytope())}, {"points", sub.polytope().lattice_points()}, {"cells", std::move(cells)}};
}

LatticeSubdivision subdivision_from_json(const Json& j) {
  LatticePolytope polytope = polytope_from_json(field(j, "polytope", "subdivision"));
  std::vector<Cell> cells;
  for (const auto& c : array(field(j, "cells", "subdivision"), "subdivision cells")) {
    cells.push_back(index_list(c, "cell"));
  }
  return schema("subdivision", [&] { return LatticeSubdivision::from_maximal_cells(std::move(polytope), cells); });
}

Json to_json(const Weighting& w, const LatticeSubdivision& sub) {
  Json mu = Json::array();
  for (size_t c = 0; c < w.mu.size(); ++c) {
    if (w.mu[c] != 0) mu.push_back(Json{{"cell", index_json(sub.cells()[c])}, {"weight", w.mu[c]}});
  }
  return Json{{"mu", std::move(mu)}};
}

Weighting weighting_from_json(const Json& j, const LatticeSubdivision& sub) {
  Weighting w{std::vector<int>(sub.num_cells(), 0)};
  for (const auto& entry : array(field(j, "mu", "weighting"), "weighting")) {
    Cell cell = index_list(field(entry, "cell", "weighting entry"), "weighting cell");
    std::sort(cell.begin(), cell.end());
    const auto c = sub.index_of(cell);
    if (!c) throw ParseError("weighting: cell is not in the subdivision");
    w.mu[*c] = static_cast<int>(integer(field(entry, "weight", "weighting entry"), "weight"));
  }
  schema("weighting", [&] {
    validate_weighting(sub, w);
    return 0;
  });
  return w;
}

Json to_json(const Hypergraph& g) { return Json{{"vertices", g.num_vertices}, {"edges", g.edges}}; }

Hypergraph hypergraph_from_json(const Json& j) {
  Hypergraph g;
  g.num_vertices = index(field(j, "vertices", "hypergraph"), "hypergraph vertices");
  for (const auto& e : array(field(j, "edges", "hypergraph"), "hypergraph edges")) {
    auto edge = index_list(e, "edge");
    std::sort(edge.begin(), edge.end());
    g.edges.push_back(std::move(edge));
  }
  schema("hypergraph", [&] {
    validate(g);
    return 0;
  });
  return g;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace tropcram::io
