#include "tropcram/oracle.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <string_view>

#include "tropcram/error.hpp"

namespace tropcram::oracle {

using std::size_t;

Caps Caps::from_env() {
  Caps caps;
  const char* env = std::getenv("TROPCRAM_CAP");
  if (!env) return caps;
  std::string_view rest(env);
  while (!rest.empty()) {
    const size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("TROPCRAM_CAP: expected key=value, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    size_t number = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError("TROPCRAM_CAP: bad number '" + std::string(value) + "'");
    }
    if (key == "perm") {
      caps.perm = number;
    } else if (key == "transport") {
      caps.transport = number;
    } else if (key == "rigid") {
      caps.rigid = number;
    } else {
      throw ParseError("TROPCRAM_CAP: unknown key '" + std::string(key) + "'");
    }
  }
  return caps;
}

BrutePerm brute_perm(const TwMatrix& a, const Caps& caps) {
  if (!a.is_square()) throw DomainError("brute_perm", "requires K = N");
  const size_t n = a.num_cols();
  if (n > caps.perm) throw DomainError("brute_perm", "N = " + std::to_string(n) + " exceeds the cap " + std::to_string(caps.perm));
  std::vector<size_t> slot_row;
  for (size_t i = 0; i < a.num_rows(); ++i) slot_row.insert(slot_row.end(), static_cast<size_t>(a.weight(i)), i);
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  BrutePerm out;
  std::set<Partition> optima;
  bool have = false;
  do {
    Rational v = 0;
    for (size_t s = 0; s < n; ++s) v += a.at(slot_row[s], perm[s]);
    if (have && v > out.value) continue;
    if (!have || v < out.value) {
      out.value = v;
      optima.clear();
      have = true;
    }
    Partition p;
    p.blocks.assign(a.num_rows(), {});
    for (size_t s = 0; s < n; ++s) p.blocks[slot_row[s]].push_back(perm[s]);
    for (auto& b : p.blocks) std::sort(b.begin(), b.end());
    optima.insert(std::move(p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.optima.assign(optima.begin(), optima.end());
  return out;
}

Rational weighted_inner(const TwMatrix& a, const Matrix& y) {
  Rational s = 0;
  for (size_t i = 0; i < a.num_rows(); ++i) {
    for (size_t j = 0; j < a.num_cols(); ++j) s += a.weight(i) * a.at(i, j) * y[i][j];
  }
  return s;
}

std::vector<Matrix> D_vertices(const std::vector<int>& weights, size_t size, const Caps& caps) {
  const int total = std::accumulate(weights.begin(), weights.end(), 0);
  if (weights.empty() || total < 0 || static_cast<size_t>(total) != size) {
    throw DomainError("D_vertices", "weights must sum to the matrix size");
  }
  if (size > caps.perm) throw DomainError("D_vertices", "size exceeds the cap " + std::to_string(caps.perm));
  std::vector<Matrix> out;
  std::vector<size_t> owner(size);
  std::function<void(size_t, std::vector<int>&)> assign = [&](size_t col, std::vector<int>& left) {
    if (col == size) {
      Matrix y(weights.size(), RationalVector(size, 0));
      for (size_t j = 0; j < size; ++j) y[owner[j]][j] = Rational(1, weights[owner[j]]);
      out.push_back(std::move(y));
      return;
    }
    for (size_t i = 0; i < weights.size(); ++i) {
      if (left[i] == 0) continue;
      --left[i];
      owner[col] = i;
      assign(col + 1, left);
      ++left[i];
    }
  };
  std::vector<int> left = weights;
  assign(0, left);
  return out;
}

Matrix transport_vertex(const std::vector<int>& weights, const Hypergraph& tree) {
  const Graphified hat = graphify(tree);
  const size_t n = tree.num_vertices;
  std::vector<std::vector<std::pair<size_t, size_t>>> adj(n);
  for (size_t e = 0; e < hat.graph.edges.size(); ++e) {
    adj[hat.graph.edges[e][0]].emplace_back(hat.graph.edges[e][1], e);
    adj[hat.graph.edges[e][1]].emplace_back(hat.graph.edges[e][0], e);
  }
  Matrix y(weights.size(), RationalVector(n, 0));
  for (size_t j = 0; j < n; ++j) {
    // BFS from j: the edge that discovers l is the first edge on the path l -> j.
    std::vector<size_t> toward(n, hat.graph.edges.size());
    std::vector<bool> seen(n, false);
    std::vector<size_t> queue{j};
    seen[j] = true;
    for (size_t q = 0; q < queue.size(); ++q) {
      for (const auto& [w, e] : adj[queue[q]]) {
        if (seen[w]) continue;
        seen[w] = true;
        toward[w] = e;
        queue.push_back(w);
      }
    }
    if (queue.size() != n) throw DomainError("transport_vertex", "hypergraph is not connected");
    for (size_t l = 0; l < n; ++l) {
      if (l == j) continue;
      const size_t edge = hat.psi[toward[l]];
      y[edge][l] += Rational(1, weights[edge]);
    }
  }
  return y;
}

Hypergraph support_hypergraph(const Matrix& y) {
  Hypergraph g;
  g.num_vertices = y.empty() ? 0 : y.front().size();
  for (const auto& row : y) {
    std::vector<size_t> e;
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] > 0) e.push_back(j);
    }
    if (e.size() >= 2) g.edges.push_back(std::move(e));
  }
  return g;
}

std::vector<TransportVertex> T_vertices(const std::vector<int>& weights, size_t n, const Caps& caps) {
  const int total = std::accumulate(weights.begin(), weights.end(), 0);
  if (weights.empty() || total < 0 || static_cast<size_t>(total) + 1 != n) {
    throw DomainError("T_vertices", "weights must sum to N - 1");
  }
  // Number of candidate linkage hypergraphs, prod C(N, m_i + 1).
  double candidates = 1;
  for (int m : weights) {
    double c = 1;
    for (int k = 0; k <= m; ++k) c = c * static_cast<double>(n - static_cast<size_t>(k)) / (k + 1);
    candidates *= c;
  }
  if (candidates > static_cast<double>(caps.transport)) {
    throw DomainError("T_vertices", "linkage hypergraph enumeration exceeds the cap " + std::to_string(caps.transport));
  }
  std::vector<std::vector<std::vector<size_t>>> choices(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    const size_t k = static_cast<size_t>(weights[i]) + 1;
    std::vector<bool> sel(n, false);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<size_t> e;
      for (size_t j = 0; j < n; ++j) {
        if (sel[j]) e.push_back(j);
      }
      choices[i].push_back(std::move(e));
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  std::vector<TransportVertex> out;
  Hypergraph g;
  g.num_vertices = n;
  g.edges.resize(weights.size());
  std::function<void(size_t)> pick = [&](size_t i) {
    if (i == weights.size()) {
      if (hypergraph_stats(g).components != 1) return;
      out.push_back(TransportVertex{transport_vertex(weights, g), g});
      return;
    }
    for (const auto& e : choices[i]) {
      g.edges[i] = e;
      pick(i + 1);
    }
  };
  pick(0);
  return out;
}

TransportMin min_over_transport(const TwMatrix& a, const Caps& caps) {
  if (!a.is_cramer_shape()) throw DomainError("min_over_transport", "requires K = N - 1");
  const auto vertices = T_vertices(a.weights(), a.num_cols(), caps);
  TransportMin out;
  out.vertex_count = vertices.size();
  for (size_t v = 0; v < vertices.size(); ++v) {
    const Rational value = weighted_inner(a, vertices[v].y);
    if (out.argmin.empty() || value < out.value) {
      out.value = value;
      out.argmin.assign(1, v);
    } else if (value == out.value) {
      out.argmin.push_back(v);
    }
  }
  return out;
}

BruteRigid brute_rigid(const Weighting& w, const LatticeSubdivision& sub, const Caps& caps) {
  validate_weighting(sub, w);
  const size_t n = sub.polytope().size();
  if (n > caps.rigid || n > 31) throw DomainError("brute_rigid", "|L(Delta)| = " + std::to_string(n) + " exceeds the cap");
  std::uint32_t vertex_mask = 0;
  for (size_t v : sub.vertices()) vertex_mask |= std::uint32_t{1} << v;
  std::vector<std::uint32_t> cell_mask(sub.num_cells(), 0);
  for (size_t c = 0; c < sub.num_cells(); ++c) {
    for (size_t p : sub.cells()[c]) cell_mask[c] |= std::uint32_t{1} << p;
  }
  // Increasing popcount, so a set is minimal iff no earlier witness is inside it.
  std::vector<std::uint32_t> subsets((std::uint32_t{1} << n) - 1);
  std::iota(subsets.begin(), subsets.end(), std::uint32_t{1});
  std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t x, std::uint32_t y) {
    return __builtin_popcount(x) < __builtin_popcount(y);
  });
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t l : subsets) {
    if ((l & vertex_mask) == vertex_mask) continue;
    bool ok = true;
    for (size_t c = 0; c < sub.num_cells() && ok; ++c) {
      const int hit = __builtin_popcount(l & cell_mask[c]);
      ok = hit == 0 || hit >= w.mu[c] + 1;
    }
    if (!ok) continue;
    if (std::none_of(minimal.begin(), minimal.end(), [&](std::uint32_t m) { return (m & l) == m; })) {
      minimal.push_back(l);
    }
  }
  BruteRigid out;
  out.rigid = minimal.empty();
  for (std::uint32_t m : minimal) {
    PointSet s;
    for (size_t p = 0; p < n; ++p) {
      if (m >> p & 1U) s.push_back(p);
    }
    out.minimal_witnesses.push_back(std::move(s));
  }
  std::sort(out.minimal_witnesses.begin(), out.minimal_witnesses.end(), [](const PointSet& x, const PointSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

bool span_inequality_check(const LatticeSubdivision& sub, const std::vector<size_t>& cells) {
  std::set<size_t> complex;
  for (size_t c : cells) {
    if (c >= sub.num_cells()) throw DomainError("span_inequality_check", "cell index out of range");
    for (size_t f = 0; f < sub.num_cells(); ++f) {
      const auto& big = sub.cells()[c];
      const auto& small = sub.cells()[f];
      if (std::includes(big.begin(), big.end(), small.begin(), small.end())) complex.insert(f);
    }
  }
  for (size_t c : complex) {
    if (sub.cells()[c].size() != static_cast<size_t>(sub.dimension(c)) + 1) {
      throw DomainError("span_inequality_check", "complex is not simplicial");
    }
  }
  if (complex.empty()) return true;
  const size_t n = sub.polytope().size();
  boost::disjoint_sets_with_storage<> sets(n);
  std::set<size_t> points;
  for (size_t c : complex) {
    const auto& cell = sub.cells()[c];
    for (size_t p : cell) {
      points.insert(p);
      sets.union_set(cell.front(), p);
    }
  }
  std::set<size_t> roots;
  for (size_t p : points) roots.insert(sets.find_set(p));
  long lhs = 0;
  for (size_t c : complex) {
    const auto& cell = sub.cells()[c];
    const bool maximal = std::none_of(complex.begin(), complex.end(), [&](size_t o) {
      const auto& other = sub.cells()[o];
      return other.size() > cell.size() && std::includes(other.begin(), other.end(), cell.begin(), cell.end());
    });
    if (maximal) lhs += sub.dimension(c);
  }
  return lhs >= static_cast<long>(points.size()) - static_cast<long>(roots.size());
}

}  // namespace tropcram::oracle
