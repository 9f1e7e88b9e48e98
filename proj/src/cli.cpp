#include "tropcram/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "tropcram/error.hpp"
#include "tropcram/geometry.hpp"
#include "tropcram/io.hpp"
#include "tropcram/oracle.hpp"
#include "tropcram/svg.hpp"
#include "tropcram/twla.hpp"

namespace tropcram::cli {

using io::Json;
using std::size_t;

namespace {

Json error_object(const std::string& kind, const std::string& operation, const std::string& message) {
  Json e{{"kind", kind}};
  if (!operation.empty()) e["operation"] = operation;
  e["message"] = message;
  return Json{{"error", std::move(e)}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<size_t> index_list(const std::string& text) {
  std::vector<size_t> out;
  for (const auto& p : split(text, ',')) {
    size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(p, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (p.empty() || pos != p.size() || p[0] == '-' || p[0] == '+') throw ParseError("bad index list: " + text);
    out.push_back(v);
  }
  return out;
}

Json index_json(const std::vector<size_t>& v) {
  Json a = Json::array();
  for (size_t x : v) a.push_back(x);
  return a;
}

Json rigidity_json(const RigidityResult& r) {
  Json out{{"rigid", r.rigid}};
  out["witness"] = r.witness ? index_json(*r.witness) : Json(nullptr);
  out["fast_path"] = r.fast_path;
  return out;
}

struct Inputs {
  std::string matrix, vector, polytope, conditions, poly, subdivision, weighting, indices, eps, viewport, output,
      points, weights, cells;
  size_t n = 0;
  bool brute = false, dual = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact min-plus linear algebra with multiplicities", "tropcram"};
  app.require_subcommand(1, 1);
  Inputs in;
  std::function<Json()> action;

  auto matrix_command = [&](const std::string& name, const std::string& help, std::function<Json(const TwMatrix&)> body) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("matrix", in.matrix, "matrix JSON")->required();
    sub->callback([&, body] {
      action = [&, body] { return body(io::matrix_from_json(io::read_json_file(in.matrix))); };
    });
    return sub;
  };

  matrix_command("perm", "tropical permanent with multiplicities", [](const TwMatrix& a) {
    return io::to_json(tw_permanent(a));
  });
  matrix_command("sing", "singularity test", [](const TwMatrix& a) {
    const Singularity s = is_tw_singular(a);
    Json j{{"singular", s.singular}};
    if (s.witness) j["witness"] = io::to_json(*s.witness);
    return j;
  });
  matrix_command("minors", "maximal minors", [](const TwMatrix& a) {
    return Json{{"minors", io::to_json(maximal_minors(a))}};
  });
  matrix_command("cramer", "Cramer solution", [](const TwMatrix& a) {
    const CramerSolution s = cramer_solve(a);
    Json j{{"minors", io::to_json(s.vector)}, {"unique", s.unique}};
    if (!s.unique) {
      std::vector<size_t> bad;
      for (size_t k = 0; k < s.minor_singular.size(); ++k) {
        if (s.minor_singular[k]) bad.push_back(k);
      }
      j["singular_minors"] = index_json(bad);
    }
    return j;
  });

  auto* kernel = app.add_subcommand("kernel", "kernel membership of a vector");
  kernel->add_option("matrix", in.matrix, "matrix JSON")->required();
  kernel->add_option("vector", in.vector, "vector JSON")->required();
  kernel->callback([&] {
    action = [&] {
      const TwMatrix a = io::matrix_from_json(io::read_json_file(in.matrix));
      const RationalVector x = io::vector_from_json(io::read_json_file(in.vector));
      const KernelMembership k = tw_kernel_membership(a, x);
      Json counts = Json::array();
      for (int c : k.argmin_counts) counts.push_back(c);
      return Json{{"member", k.member}, {"argmin_counts", std::move(counts)}};
    };
  });

  auto* fit = app.add_subcommand("fit", "hypersurface through points with multiplicities");
  fit->add_option("polytope", in.polytope, "polytope JSON")->required();
  fit->add_option("conditions", in.conditions, "conditions JSON")->required();
  fit->callback([&] {
    action = [&] {
      const LatticePolytope p = io::polytope_from_json(io::read_json_file(in.polytope));
      const auto conditions = io::conditions_from_json(io::read_json_file(in.conditions));
      const FitResult r = fit_hypersurface(p, conditions);
      RationalVector coefficients;
      for (const auto& m : p.lattice_points()) coefficients.push_back(r.f.coefficient(m));
      Json j{{"coefficients", io::to_json(coefficients)}, {"unique", r.unique}, {"polynomial", io::to_json(r.f)}};
      if (!r.unique) {
        std::vector<size_t> bad;
        for (size_t k = 0; k < r.minor_singular.size(); ++k) {
          if (r.minor_singular[k]) bad.push_back(k);
        }
        j["singular_minors"] = index_json(bad);
      }
      return j;
    };
  });

  auto* dual = app.add_subcommand("dual", "dual subdivision of a polynomial");
  dual->add_option("poly", in.poly, "polynomial JSON")->required();
  dual->callback([&] {
    action = [&] {
      const DualComplex dc = dual_complex(io::polynomial_from_json(io::read_json_file(in.poly)));
      Json j = io::to_json(dc.subdivision);
      j["saturated"] = io::to_json(dc.saturated);
      j["input_was_saturated"] = dc.input_was_saturated;
      return j;
    };
  });

  auto* rigid = app.add_subcommand("rigid", "rigidity of a weighted subdivision");
  rigid->add_option("subdivision", in.subdivision, "subdivision JSON")->required();
  rigid->add_option("weighting", in.weighting, "weighting JSON")->required();
  rigid->add_flag("--brute", in.brute, "skip the fast path");
  rigid->callback([&] {
    action = [&] {
      const LatticeSubdivision sub = io::subdivision_from_json(io::read_json_file(in.subdivision));
      const Weighting w = io::weighting_from_json(io::read_json_file(in.weighting), sub);
      const auto caps = oracle::Caps::from_env();
      return rigidity_json(in.brute ? rigid_by_search(w, sub, caps.rigid) : is_rigid(w, sub, caps.rigid));
    };
  });

  auto* def = app.add_subcommand("deform", "lower the coefficients of chosen monomials");
  def->add_option("poly", in.poly, "polynomial JSON")->required();
  def->add_option("--set", in.indices, "lattice-point indices, comma separated")->required();
  def->add_option("--eps", in.eps, "positive rational")->required();
  def->callback([&] {
    action = [&] {
      const TropPolynomial f = io::polynomial_from_json(io::read_json_file(in.poly));
      const Rational eps = parse_rational(in.eps);
      const auto idx = index_list(in.indices);
      const LatticePolytope p = f.newton_polytope();
      std::vector<Monomial> l;
      for (size_t i : idx) {
        if (i >= p.lattice_points().size()) throw DomainError("deform", "index out of range");
        l.push_back(p.lattice_points()[i]);
      }
      return io::to_json(deform(f, l, eps));
    };
  });

  auto* plot_cmd = app.add_subcommand("plot", "SVG drawing of a plane tropical curve");
  plot_cmd->add_option("poly", in.poly, "polynomial JSON")->required();
  plot_cmd->add_option("--points", in.points, "conditions JSON");
  plot_cmd->add_flag("--dual", in.dual, "draw the dual subdivision");
  plot_cmd->add_option("--viewport", in.viewport, "x0,y0,x1,y1");
  plot_cmd->add_option("-o,--output", in.output, "output file (default: stdout)");
  plot_cmd->callback([&] {
    action = [&] {
      const TropPolynomial f = io::polynomial_from_json(io::read_json_file(in.poly));
      PlotOptions options;
      if (!in.points.empty()) options.points = io::conditions_from_json(io::read_json_file(in.points));
      if (!in.viewport.empty()) {
        const auto parts = split(in.viewport, ',');
        if (parts.size() != 4) throw ParseError("viewport needs four numbers");
        options.viewport = std::array<Rational, 4>{parse_rational(parts[0]), parse_rational(parts[1]),
                                                   parse_rational(parts[2]), parse_rational(parts[3])};
      }
      options.show_dual = in.dual;
      const std::string svg = plot(f, options);
      if (in.output.empty()) {
        out << svg;
        return Json();
      }
      std::ofstream file(in.output, std::ios::binary);
      if (!file || !(file << svg)) throw IoError("cannot write " + in.output);
      const PlaneCurve curve = plane_curve(f, options.viewport);
      return Json{{"vertices", curve.vertices.size()}, {"edges", curve.edges.size()}, {"bytes", svg.size()}};
    };
  });

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references");
  oracle_cmd->require_subcommand(1, 1);
  auto* operm = oracle_cmd->add_subcommand("perm", "permanent over all permutations");
  operm->add_option("matrix", in.matrix, "matrix JSON")->required();
  operm->callback([&] {
    action = [&] {
      const TwMatrix a = io::matrix_from_json(io::read_json_file(in.matrix));
      const auto r = oracle::brute_perm(a, oracle::Caps::from_env());
      Json optima = Json::array();
      for (const auto& p : r.optima) optima.push_back(io::to_json(p));
      return Json{{"value", io::to_json(r.value)}, {"optima", std::move(optima)}};
    };
  });
  auto* otv = oracle_cmd->add_subcommand("tvertices", "vertices of the transportation polytope");
  otv->add_option("--weights", in.weights, "row weights, comma separated")->required();
  otv->add_option("-n", in.n, "number of columns")->required();
  otv->callback([&] {
    action = [&] {
      std::vector<int> weights;
      for (size_t w : index_list(in.weights)) weights.push_back(static_cast<int>(w));
      const auto vs = oracle::T_vertices(weights, in.n, oracle::Caps::from_env());
      Json list = Json::array();
      for (const auto& v : vs) {
        Json y = Json::array();
        for (const auto& row : v.y) y.push_back(io::to_json(row));
        list.push_back(Json{{"y", std::move(y)}, {"support", io::to_json(v.support)}});
      }
      return Json{{"count", vs.size()}, {"vertices", std::move(list)}};
    };
  });
  auto* omt = oracle_cmd->add_subcommand("mintransport", "minimum of <A,Y> over the transportation polytope");
  omt->add_option("matrix", in.matrix, "matrix JSON")->required();
  omt->callback([&] {
    action = [&] {
      const TwMatrix a = io::matrix_from_json(io::read_json_file(in.matrix));
      const auto r = oracle::min_over_transport(a, oracle::Caps::from_env());
      return Json{{"value", io::to_json(r.value)}, {"argmin", index_json(r.argmin)}, {"vertex_count", r.vertex_count}};
    };
  });
  auto* origid = oracle_cmd->add_subcommand("rigid", "rigidity by exhaustive search");
  origid->add_option("subdivision", in.subdivision, "subdivision JSON")->required();
  origid->add_option("weighting", in.weighting, "weighting JSON")->required();
  origid->callback([&] {
    action = [&] {
      const LatticeSubdivision sub = io::subdivision_from_json(io::read_json_file(in.subdivision));
      const Weighting w = io::weighting_from_json(io::read_json_file(in.weighting), sub);
      const auto r = oracle::brute_rigid(w, sub, oracle::Caps::from_env());
      Json witnesses = Json::array();
      for (const auto& l : r.minimal_witnesses) witnesses.push_back(index_json(l));
      return Json{{"rigid", r.rigid}, {"minimal_witnesses", std::move(witnesses)}};
    };
  });
  auto* ospan = oracle_cmd->add_subcommand("span", "span inequality on a subcomplex");
  ospan->add_option("subdivision", in.subdivision, "subdivision JSON")->required();
  ospan->add_option("--cells", in.cells, "cell indices, comma separated (default: all)");
  ospan->callback([&] {
    action = [&] {
      const LatticeSubdivision sub = io::subdivision_from_json(io::read_json_file(in.subdivision));
      std::vector<size_t> cells;
      if (in.cells.empty()) {
        cells.resize(sub.num_cells());
        for (size_t c = 0; c < cells.size(); ++c) cells[c] = c;
      } else {
        cells = index_list(in.cells);
        for (size_t c : cells) {
          if (c >= sub.num_cells()) throw DomainError("span_inequality_check", "cell index out of range");
        }
      }
      return Json{{"holds", oracle::span_inequality_check(sub, cells)}};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << error_object("usage", "", e.what()).dump() << '\n';
    err << app.help();
    return kParse;
  }

  try {
    const Json result = action();
    if (!result.is_null()) out << result.dump() << '\n';
    return kOk;
  } catch (const DomainError& e) {
    out << error_object("domain", e.operation(), e.message()).dump() << '\n';
    return kDomain;
  } catch (const ParseError& e) {
    out << error_object("parse", "", e.what()).dump() << '\n';
    return kParse;
  } catch (const IoError& e) {
    out << error_object("io", "", e.what()).dump() << '\n';
    return kParse;
  } catch (const Json::exception& e) {
    out << error_object("parse", "", e.what()).dump() << '\n';
    return kParse;
  }
}

}  // namespace tropcram::cli
