// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "tropcram/cli.hpp"
#include "tropcram/error.hpp"
#include "tropcram/io.hpp"
#include "tropcram/oracle.hpp"
#include "tropcram/svg.hpp"

using namespace tropcram;
namespace fs = std::filesystem;

namespace {

// Random instance counts and ranges, fixed by the criteria.
constexpr int kSquareCases = 1000;
constexpr int kCramerCases = 1000;
constexpr int kRescaleCases = 500;
constexpr int kHypergraphCases = 2000;
constexpr int kOrientationCases = 500;
constexpr int kTransportCases = 300;
constexpr int kFitCases = 200;
constexpr int kEntryBound = 5;
constexpr unsigned kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Suite {
 public:
  void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title;
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failures_;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::vector<int> random_weights(std::mt19937& rng, int total) {
  std::vector<int> w;
  while (total > 0) {
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(total, 3)));
    w.push_back(m);
    total -= m;
  }
  return w;
}

TwMatrix random_matrix(std::mt19937& rng, const std::vector<int>& w, std::size_t cols) {
  std::uniform_int_distribution<int> d(-kEntryBound, kEntryBound);
  std::vector<RationalVector> rows(w.size(), RationalVector(cols));
  for (auto& r : rows) {
    for (auto& x : r) x = d(rng);
  }
  return TwMatrix(std::move(rows), w);
}

bool brute_singular(const TwMatrix& a) { return oracle::brute_perm(a).optima.size() > 1; }

std::string count(const std::string& what, long n) { return what + "=" + std::to_string(n); }

Hypergraph random_hypergraph(std::mt19937& rng, std::size_t max_vertices, std::size_t max_edges) {
  Hypergraph g;
  g.num_vertices = 2 + rng() % (max_vertices - 1);
  const std::size_t e = rng() % (max_edges + 1);
  for (std::size_t k = 0; k < e; ++k) {
    std::vector<std::size_t> edge;
    const std::size_t p = 2 + rng() % 3;
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
      if (rng() % p == 0) edge.push_back(v);
    }
    while (edge.size() < 2) {
      const std::size_t v = rng() % g.num_vertices;
      if (std::find(edge.begin(), edge.end(), v) == edge.end()) {
        edge.insert(std::upper_bound(edge.begin(), edge.end(), v), v);
      }
    }
    g.edges.push_back(std::move(edge));
  }
  return g;
}

// --- criterion 13 helpers ---

struct FitInstance {
  TropPolynomial f;
  LatticePolytope polytope;
  std::vector<PointCondition> points;
};

std::optional<FitInstance> random_fit_instance(std::mt19937& rng, const LatticePolytope& p) {
  RationalVector c;
  for (std::size_t i = 0; i < p.lattice_points().size(); ++i) c.push_back(static_cast<int>(rng() % 5));
  const TropPolynomial f = saturate(TropPolynomial::on_polytope(p, c));
  const auto sub = dual_complex(f).subdivision;
  const auto& pts = sub.polytope().lattice_points();
  std::vector<std::size_t> cells;
  for (std::size_t k = 0; k < sub.num_cells(); ++k) {
    if (sub.dimension(k) >= 1) cells.push_back(k);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  int left = static_cast<int>(pts.size()) - 1;
  FitInstance inst{f, p, {}};
  for (std::size_t k : cells) {
    if (left == 0) break;
    const int cap = std::min(left, static_cast<int>(sub.cells()[k].size()) - 1);
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(cap));
    std::vector<Monomial> mons;
    for (std::size_t i : sub.cells()[k]) mons.push_back(pts[i]);
    const auto x = dual_cell_point(f, mons);
    if (!x) continue;
    inst.points.push_back({*x, m});
    left -= m;
  }
  if (left != 0) return std::nullopt;
  return inst;
}

bool same_hypersurface(const TropPolynomial& f, const TropPolynomial& g) {
  const TropPolynomial fs = saturate(f), gs = saturate(g);
  for (int a = -12; a <= 12; ++a) {
    for (int b = -12; b <= 12; ++b) {
      const RationalVector x{Rational(a) / 2, Rational(b) / 2};
      if (evaluate(fs, x).argmin != evaluate(gs, x).argmin) return false;
    }
  }
  return true;
}

// --- criterion 14 helpers ---

std::string substitute(std::string s, const std::string& data, const std::string& tmp) {
  for (const auto& [key, value] : {std::pair{std::string("{data}"), data}, std::pair{std::string("{tmp}"), tmp}}) {
    for (std::size_t pos; (pos = s.find(key)) != std::string::npos;) s.replace(pos, key.size(), value);
  }
  return s;
}

}  // namespace

int main() {
  Suite suite;
  std::mt19937 rng(kSeed);

  suite.run(1, "weighted permanent of the 2+1 example", [] {
    const TwMatrix a({{0, 0, 5}, {2, 1, 1}}, {2, 1});
    const auto r = tw_permanent(a);
    const bool ok = r.value == 1 && !r.singular && r.optimal == Partition{{{0, 1}, {2}}};
    return Outcome{ok, "value=" + to_string(r.value)};
  });

  suite.run(2, "maximal minors of a single weight-3 row", [] {
    const TwMatrix a({{1, 2, 3, 4}}, {3});
    const auto s = cramer_solve(a);
    bool ok = s.vector == RationalVector{9, 8, 7, 6} && s.unique && tw_kernel_membership(a, s.vector).member;
    for (std::size_t j = 0; j < 4; ++j) ok = ok && s.vector[j] + a.at(0, j) == 10;
    return Outcome{ok, ""};
  });

  suite.run(3, "singular fourth minor and a non-proportional kernel vector", [] {
    const TwMatrix a({{0, 0, 0, 0}, {2, 1, 1, 3}}, {2, 1});
    const auto s = cramer_solve(a);
    const auto minor = tw_permanent(a.without_column(3));
    const RationalVector other{1, 1, 1, 99};
    bool flags = true;
    for (std::size_t j = 0; j < 4; ++j) flags = flags && s.minor_singular[j] == brute_singular(a.without_column(j));
    const bool ok = flags && s.vector == RationalVector{1, 1, 1, 1} && !s.unique &&
                    s.minor_singular[3] && minor.singular &&
                    minor.value == 1 && minor.optimal == Partition{{{0, 1}, {2}}} &&
                    minor.witness == Partition{{{0, 2}, {1}}} && tw_kernel_membership(a, other).member &&
                    !tropically_proportional(other, s.vector);
    return Outcome{ok, ""};
  });

  suite.run(4, "tropical line multiplicity at its vertex", [] {
    TropPolynomial f(2, {{{1, 0}, 3}, {{0, 1}, -2}, {{0, 0}, 0}});
    const int m = multiplicity_at(f, RationalVector{-3, 2});
    return Outcome{m == 2, count("mult", m)};
  });

  suite.run(5, "square matrices: singular iff a verified kernel witness exists", [&] {
    long bad = 0, singular = 0;
    for (int it = 0; it < kSquareCases; ++it) {
      const int n = 2 + static_cast<int>(rng() % 4);
      const TwMatrix a = random_matrix(rng, random_weights(rng, n), n);
      const bool reference = brute_singular(a);
      const bool fast = is_tw_singular(a).singular;
      bool witness = false;
      try {
        witness = tw_kernel_membership(a, kernel_witness_square(a)).member;
      } catch (const DomainError&) {
        witness = false;
      }
      if (reference != fast || reference != witness) ++bad;
      if (oracle::brute_perm(a).value != tw_permanent(a).value) ++bad;
      singular += reference;
    }
    return Outcome{bad == 0, count("discrepancies", bad) + " " + count("singular", singular)};
  });

  suite.run(6, "(N-1)xN matrices: Cramer vector, uniqueness and alternates", [&] {
    long not_member = 0, flag_bad = 0, alt_bad = 0, non_unique = 0;
    for (int it = 0; it < kCramerCases; ++it) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const TwMatrix a = random_matrix(rng, random_weights(rng, n - 1), n);
      const auto s = cramer_solve(a);
      if (!tw_kernel_membership(a, s.vector).member) ++not_member;
      bool all_nonsingular = true;
      std::vector<std::size_t> singular_columns;
      for (int j = 0; j < n; ++j) {
        if (brute_singular(a.without_column(j))) {
          all_nonsingular = false;
          singular_columns.push_back(j);
        }
      }
      if (s.unique != all_nonsingular) ++flag_bad;
      if (!s.unique) {
        ++non_unique;
        const auto alt = alternate_kernel_vector(a, singular_columns.front());
        if (!tw_kernel_membership(a, alt).member || tropically_proportional(alt, s.vector)) ++alt_bad;
      }
    }
    return Outcome{not_member == 0 && flag_bad == 0 && alt_bad == 0,
                   count("not_in_kernel", not_member) + " " + count("flag_mismatch", flag_bad) + " " +
                       count("bad_alternates", alt_bad) + " " + count("non_unique", non_unique)};
  });

  suite.run(7, "rescaling to a non-negative matrix with a zero diagonal partition", [&] {
    long bad = 0;
    for (int it = 0; it < kRescaleCases; ++it) {
      const int n = 2 + static_cast<int>(rng() % 4);
      const TwMatrix a = random_matrix(rng, random_weights(rng, n), n);
      const auto r = rescale_nonneg_zero_perm(a);
      bool ok = true;
      for (const auto& row : r.matrix.rows()) {
        for (const auto& x : row) ok = ok && x >= 0;
      }
      const auto ref = oracle::brute_perm(r.matrix);
      ok = ok && ref.value == 0 && (ref.optima.size() > 1) == brute_singular(a);
      Partition diagonal;
      std::size_t col = 0;
      for (std::size_t i = 0; i < r.matrix.num_rows(); ++i) {
        std::vector<std::size_t> block;
        for (int k = 0; k < r.matrix.weight(i); ++k, ++col) {
          block.push_back(col);
          ok = ok && r.matrix.at(i, col) == 0;
        }
        diagonal.blocks.push_back(block);
      }
      ok = ok && partition_value(r.matrix, diagonal) == 0;
      for (std::size_t i = 0; i < r.matrix.num_rows(); ++i) {
        for (std::size_t k = 0; k < r.matrix.num_cols(); ++k) {
          const Rational expect = a.at(r.row_order[i], r.column_order[k]) - r.rescaling.row_offsets[i] +
                                  r.rescaling.col_offsets[k];
          ok = ok && r.matrix.at(i, k) == expect;
        }
      }
      if (!ok) ++bad;
    }
    return Outcome{bad == 0, count("violations", bad)};
  });

  suite.run(8, "game rescaling: golden run and the gap pattern", [] {
    const TwMatrix a = fixtures::game_matrix();
    const auto r = game_rescale(a, fixtures::game_hypergraph());
    bool ok = r.first != r.second && is_connected(r.first) && is_connected(r.second) &&
              is_complementary(r.matrix, r.first) && is_complementary(r.matrix, r.second);
    for (const auto& row : r.matrix.rows()) {
      for (const auto& x : row) ok = ok && x >= 0;
    }
    const io::Json golden = io::read_json_file(std::string(TROPCRAM_GOLDEN_DIR) + "/game_run.json");
    const bool golden_ok = io::matrix_from_json(golden["matrix"]) == r.matrix &&
                           io::hypergraph_from_json(golden["first"]) == r.first &&
                           io::hypergraph_from_json(golden["second"]) == r.second;

    const TwMatrix b = fixtures::gap_matrix();
    const auto g = game_rescale(b, fixtures::gap_hypergraph());
    const auto y1 = oracle::transport_vertex(g.matrix.weights(), g.first);
    const auto y2 = oracle::transport_vertex(g.matrix.weights(), g.second);
    Rational minors = 0;
    for (const auto& m : maximal_minors(g.matrix)) minors += m;
    const bool gap_ok = oracle::weighted_inner(g.matrix, y1) == 0 && oracle::weighted_inner(g.matrix, y2) == 0 &&
                        minors == 0 && !cramer_solve(g.matrix).unique;
    return Outcome{ok && golden_ok && gap_ok, std::string("post=") + (ok ? "ok" : "bad") +
                                                  " golden=" + (golden_ok ? "ok" : "bad") +
                                                  " gap=" + (gap_ok ? "ok" : "bad") +
                                                  " " + count("gap_steps", static_cast<long>(g.trace.size()))};
  });

  suite.run(9, "simple cycles exist exactly per the counting formula", [&] {
    long bad = 0, cycles = 0;
    for (int it = 0; it < kHypergraphCases; ++it) {
      const Hypergraph g = random_hypergraph(rng, 8, 6);
      const auto s = hypergraph_stats(g);
      const auto c = find_simple_cycle(g);
      const bool expect = s.edge_total + s.components >= s.vertices + 1;
      if (bool(c) != expect || (c && !is_simple_cycle(g, *c))) ++bad;
      cycles += bool(c);
    }
    return Outcome{bad == 0, count("mismatches", bad) + " " + count("with_cycle", cycles)};
  });

  suite.run(10, "connected hypergraphs with e = v have two good orientations", [&] {
    long bad = 0, seen = 0, tries = 0;
    while (seen < kOrientationCases && tries < 1000000) {
      ++tries;
      const Hypergraph g = random_hypergraph(rng, 8, 7);
      const auto s = hypergraph_stats(g);
      if (s.components != 1 || s.edge_total != s.vertices) continue;
      ++seen;
      const auto os = good_orientations(g);
      std::size_t valid = 0;
      for (const auto& o : os) valid += is_good_orientation(g, o);
      if (valid < 2 || valid != os.size()) ++bad;
    }
    return Outcome{bad == 0 && seen == kOrientationCases, count("failures", bad) + " " + count("cases", seen)};
  });

  suite.run(11, "transportation minimum equals the sum of maximal minors", [&] {
    long value_bad = 0, unique_bad = 0, square_bad = 0;
    for (int it = 0; it < kTransportCases; ++it) {
      const int n = 2 + static_cast<int>(rng() % 4);
      const TwMatrix a = random_matrix(rng, random_weights(rng, n - 1), n);
      const auto t = oracle::min_over_transport(a);
      Rational sum = 0;
      bool all_nonsingular = true;
      for (int j = 0; j < n; ++j) {
        const TwMatrix minor = a.without_column(j);
        const auto ref = oracle::brute_perm(minor);
        sum += ref.value;
        all_nonsingular = all_nonsingular && ref.optima.size() == 1;
        // minimum over vertices of D, and its uniqueness
        Rational best;
        std::size_t hits = 0;
        bool first = true;
        for (const auto& y : oracle::D_vertices(minor.weights(), minor.num_cols())) {
          const Rational v = oracle::weighted_inner(minor, y);
          if (first || v < best) {
            best = v;
            hits = 1;
            first = false;
          } else if (v == best) {
            ++hits;
          }
        }
        if (best != ref.value || (hits == 1) != (ref.optima.size() == 1)) ++square_bad;
      }
      if (t.value != sum) ++value_bad;
      if ((t.argmin.size() == 1) != all_nonsingular) ++unique_bad;
    }
    return Outcome{value_bad == 0 && unique_bad == 0 && square_bad == 0,
                   count("value_mismatch", value_bad) + " " + count("uniqueness_mismatch", unique_bad) + " " +
                       count("square_perm_mismatch", square_bad)};
  });

  suite.run(12, "rigid iff support connected iff connected and full", [] {
    long bad = 0, total = 0, rigid = 0;
    for (const auto& sub : {fixtures::honeycomb_subdivision(), fixtures::strip_subdivision()}) {
      const int target = static_cast<int>(sub.polytope().lattice_points().size()) - 1;
      Weighting w{std::vector<int>(sub.num_cells(), 0)};
      std::function<void(std::size_t, int)> walk = [&](std::size_t c, int left) {
        if (c == sub.num_cells()) {
          if (left != 0) return;
          ++total;
          const bool r = oracle::brute_rigid(w, sub).rigid;
          const bool connected = support_components(w, sub).size() == 1;
          const bool full = is_full(w, sub);
          if (r != connected || connected != (connected && full) || is_rigid(w, sub).rigid != r) ++bad;
          rigid += r;
          return;
        }
        const int cap = std::min(left, static_cast<int>(sub.cells()[c].size()) - 1);
        for (int m = 0; m <= cap; ++m) {
          w.mu[c] = m;
          walk(c + 1, left - m);
        }
        w.mu[c] = 0;
      };
      walk(0, target);
    }
    const auto sub = fixtures::honeycomb_subdivision();
    const auto w8 = fixtures::mu_not_full_rigid();
    const bool necessary = oracle::brute_rigid(w8, sub).rigid && !is_full(w8, sub);
    return Outcome{bad == 0 && necessary, count("weightings", total) + " " + count("rigid", rigid) + " " +
                                              count("discrepancies", bad) +
                                              " count_hypothesis_needed=" + (necessary ? "yes" : "no")};
  });

  suite.run(13, "fit uniqueness agrees with brute rigidity of the induced weighting", [&] {
    const std::vector<LatticePolytope> shapes{LatticePolytope::simplex(2, 1), LatticePolytope::simplex(2, 2),
                                              LatticePolytope::box({1, 1})};
    long cases = 0, mismatch = 0, refit_bad = 0, unique = 0;
    long mismatch_simplicial = 0;
    while (cases < kFitCases) {
      const auto& p = shapes[rng() % shapes.size()];
      const auto inst = random_fit_instance(rng, p);
      if (!inst) continue;
      ++cases;
      const auto ws = weighting_from_points(inst->f, inst->points);
      const bool rigid = oracle::brute_rigid(ws.weighting, ws.subdivision).rigid;
      const auto fit = fit_hypersurface(p, inst->points);
      if (fit.unique != rigid) {
        ++mismatch;
        mismatch_simplicial += is_lattice_simplicial(ws.subdivision);
      }
      if (fit.unique) {
        ++unique;
        if (!same_hypersurface(fit.f, inst->f)) ++refit_bad;
        const auto again = fit_hypersurface(p, inst->points);
        if (!same_hypersurface(again.f, fit.f)) ++refit_bad;
      }
    }
    return Outcome{mismatch == 0 && refit_bad == 0,
                   count("cases", cases) + " " + count("unique", unique) + " " + count("mismatches", mismatch) +
                       " (" + count("on_lattice_simplicial", mismatch_simplicial) + ") " +
                       count("refit_failures", refit_bad)};
  });

  suite.run(14, "command-line golden files, byte-stable SVG, exit codes", [] {
    const std::string golden = TROPCRAM_GOLDEN_DIR;
    const std::string data = golden + "/../data";
    const fs::path tmp = fs::temp_directory_path() / ("tropcram_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    const io::Json cases = io::read_json_file(golden + "/cases.json");
    long bad = 0, run = 0;
    std::set<int> codes;
    std::ostringstream failed;
    for (const auto& c : cases) {
      std::vector<std::string> args;
      for (const auto& a : c["args"]) args.push_back(substitute(a.get<std::string>(), data, tmp.string()));
      if (c.contains("env")) {
        for (const auto& [k, v] : c["env"].items()) ::setenv(k.c_str(), v.get<std::string>().c_str(), 1);
      }
      std::ostringstream out, err, out2, err2;
      const int code = cli::run(args, out, err);
      const int code2 = cli::run(args, out2, err2);
      if (c.contains("env")) {
        for (const auto& [k, v] : c["env"].items()) ::unsetenv(k.c_str());
      }
      ++run;
      codes.insert(code);
      bool ok = code == c["exit"].get<int>() && code == code2 && out.str() == out2.str();
      if (c.contains("stdout")) ok = ok && out.str() == fixtures::read_file(golden + "/" + c["stdout"].get<std::string>());
      if (c.contains("file")) {
        const std::string produced = substitute(c["file"]["path"].get<std::string>(), data, tmp.string());
        ok = ok && fixtures::read_file(produced) == fixtures::read_file(golden + "/" + c["file"]["golden"].get<std::string>());
      }
      if (!ok) {
        ++bad;
        failed << ' ' << c["name"].get<std::string>();
      }
    }
    fs::remove_all(tmp);
    const bool classes = codes.count(0) && codes.count(1) && codes.count(2);
    return Outcome{bad == 0 && classes, count("cases", run) + " " + count("failures", bad) + failed.str()};
  });

  std::cout << (suite.failures() == 0 ? "ALL PASS" : std::to_string(suite.failures()) + " FAILED") << std::endl;
  return suite.failures() == 0 ? 0 : 1;
}
