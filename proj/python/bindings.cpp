#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tropcram/cli.hpp"
#include "tropcram/error.hpp"
#include "tropcram/geometry.hpp"
#include "tropcram/hypergraph.hpp"
#include "tropcram/svg.hpp"
#include "tropcram/twla.hpp"

namespace py = pybind11;
using namespace tropcram;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints and "p/q" strings are accepted too.
Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  return parse_rational(py::str(h).cast<std::string>());
}

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::str(to_string(q)));
}

RationalVector to_vector(const py::iterable& xs) {
  RationalVector v;
  for (auto x : xs) v.push_back(to_rational(x));
  return v;
}

py::list from_vector(const RationalVector& v) {
  py::list out;
  for (const auto& q : v) out.append(to_fraction(q));
  return out;
}

TwMatrix to_matrix(const py::iterable& rows, std::optional<std::vector<int>> weights) {
  std::vector<RationalVector> r;
  for (auto row : rows) r.push_back(to_vector(py::reinterpret_borrow<py::iterable>(row)));
  if (!weights) return TwMatrix(std::move(r));
  return TwMatrix(std::move(r), std::move(*weights));
}

TropPolynomial to_polynomial(const py::dict& terms) {
  std::map<Monomial, Rational> m;
  int dim = -1;
  for (auto [k, v] : terms) {
    Monomial e = k.cast<std::vector<int>>();
    dim = static_cast<int>(e.size());
    m.emplace(std::move(e), to_rational(v));
  }
  if (dim < 1) throw DomainError("polynomial", "no terms");
  return TropPolynomial(dim, std::move(m));
}

py::dict from_polynomial(const TropPolynomial& f) {
  py::dict d;
  for (const auto& [m, c] : f.terms()) d[py::tuple(py::cast(m))] = to_fraction(c);
  return d;
}

py::dict perm_dict(const PermResult& r) {
  py::dict d;
  d["value"] = to_fraction(r.value);
  d["singular"] = r.singular;
  d["optimal"] = r.optimal.blocks;
  d["witness"] = r.witness ? py::cast(r.witness->blocks) : py::none();
  return d;
}

std::vector<PointCondition> to_conditions(const py::iterable& items) {
  std::vector<PointCondition> out;
  for (auto item : items) {
    auto t = item.cast<py::tuple>();
    out.push_back({to_vector(t[0]), t[1].cast<int>()});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_tropcram, m) {
  m.doc() = "exact min-plus linear algebra with multiplicities";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("tw_permanent", [](const py::iterable& rows, std::optional<std::vector<int>> weights) {
    return perm_dict(tw_permanent(to_matrix(rows, weights)));
  }, py::arg("rows"), py::arg("weights") = py::none());

  m.def("is_singular", [](const py::iterable& rows, std::optional<std::vector<int>> weights) {
    return is_tw_singular(to_matrix(rows, weights)).singular;
  }, py::arg("rows"), py::arg("weights") = py::none());

  m.def("maximal_minors", [](const py::iterable& rows, std::optional<std::vector<int>> weights) {
    return from_vector(maximal_minors(to_matrix(rows, weights)));
  }, py::arg("rows"), py::arg("weights") = py::none());

  m.def("cramer_solve", [](const py::iterable& rows, std::optional<std::vector<int>> weights) {
    const CramerSolution s = cramer_solve(to_matrix(rows, weights));
    return py::make_tuple(from_vector(s.vector), s.unique, s.minor_singular);
  }, py::arg("rows"), py::arg("weights") = py::none());

  m.def("in_kernel", [](const py::iterable& rows, const py::iterable& x, std::optional<std::vector<int>> weights) {
    return tw_kernel_membership(to_matrix(rows, weights), to_vector(x)).member;
  }, py::arg("rows"), py::arg("x"), py::arg("weights") = py::none());

  m.def("kernel_witness_square", [](const py::iterable& rows, std::optional<std::vector<int>> weights) {
    return from_vector(kernel_witness_square(to_matrix(rows, weights)));
  }, py::arg("rows"), py::arg("weights") = py::none());

  m.def("alternate_kernel_vector", [](const py::iterable& rows, std::size_t column, std::optional<std::vector<int>> weights) {
    return from_vector(alternate_kernel_vector(to_matrix(rows, weights), column));
  }, py::arg("rows"), py::arg("column"), py::arg("weights") = py::none());

  m.def("multiplicity_at", [](const py::dict& terms, const py::iterable& x) {
    return multiplicity_at(to_polynomial(terms), to_vector(x));
  });

  m.def("saturate", [](const py::dict& terms) { return from_polynomial(saturate(to_polynomial(terms))); });

  m.def("dual_complex", [](const py::dict& terms) {
    const DualComplex dc = dual_complex(to_polynomial(terms));
    return py::make_tuple(dc.subdivision.polytope().lattice_points(), dc.subdivision.cells());
  }, "(lattice points, cells as index lists)");

  m.def("fit", [](const py::iterable& vertices, const py::iterable& conditions) {
    std::vector<LatticePoint> gens;
    for (auto v : vertices) gens.push_back(v.cast<std::vector<int>>());
    if (gens.empty()) throw DomainError("fit_hypersurface", "empty polytope");
    const LatticePolytope p(static_cast<int>(gens[0].size()), gens);
    const FitResult r = fit_hypersurface(p, to_conditions(conditions));
    return py::make_tuple(from_polynomial(r.f), r.unique);
  }, py::arg("vertices"), py::arg("conditions"));

  m.def("find_simple_cycle", [](std::size_t vertices, std::vector<std::vector<std::size_t>> edges) -> py::object {
    const auto c = find_simple_cycle(Hypergraph{vertices, std::move(edges)});
    if (!c) return py::none();
    return py::make_tuple(c->vertices, c->edges);
  });

  m.def("good_orientations", [](std::size_t vertices, std::vector<std::vector<std::size_t>> edges) {
    return good_orientations(Hypergraph{vertices, std::move(edges)});
  });

  m.def("plot", [](const py::dict& terms, const py::iterable& points, bool dual) {
    PlotOptions options;
    options.points = to_conditions(points);
    options.show_dual = dual;
    return plot(to_polynomial(terms), options);
  }, py::arg("terms"), py::arg("points") = py::list(), py::arg("dual") = false);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str());
  }, "Run the command-line tool in-process; returns (exit code, stdout).");
}
