#include "tropcram/hypergraph.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <functional>
#include <stdexcept>
#include <string>

#include "tropcram/error.hpp"

namespace tropcram {

using std::size_t;

void validate(const Hypergraph& g) {
  for (const auto& e : g.edges) {
    if (e.size() < 2) throw DomainError("hypergraph", "edges must touch at least two vertices");
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] >= g.num_vertices) throw DomainError("hypergraph", "vertex index out of range");
      if (k > 0 && e[k - 1] >= e[k]) throw DomainError("hypergraph", "edge vertices must be distinct and ascending");
    }
  }
}

namespace {

struct Component {
  std::vector<size_t> vertices;
  std::vector<size_t> edges;

  bool has_cycle(const Hypergraph& g) const {
    size_t total = 0;
    for (size_t e : edges) total += g.edges[e].size() - 1;
    return total >= vertices.size();
  }
};

// Components over `vertices` using only `edges` (indices into g.edges), in
// order of their least vertex.
std::vector<Component> components_of(const Hypergraph& g, const std::vector<size_t>& vertices,
                                     const std::vector<size_t>& edges) {
  boost::disjoint_sets_with_storage<> sets(g.num_vertices);
  for (size_t e : edges) {
    for (size_t v : g.edges[e]) sets.union_set(g.edges[e].front(), v);
  }
  std::vector<Component> out;
  std::vector<size_t> slot(g.num_vertices, g.num_vertices);
  auto sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  for (size_t v : sorted) {
    const size_t root = sets.find_set(v);
    if (slot[root] == g.num_vertices) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].vertices.push_back(v);
  }
  for (size_t e : edges) out[slot[sets.find_set(g.edges[e].front())]].edges.push_back(e);
  return out;
}

std::vector<size_t> all_vertices(const Hypergraph& g) {
  std::vector<size_t> v(g.num_vertices);
  for (size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::vector<size_t> all_edges(const Hypergraph& g) {
  std::vector<size_t> e(g.edges.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = i;
  return e;
}

}  // namespace

HypergraphStats hypergraph_stats(const Hypergraph& g) {
  validate(g);
  HypergraphStats s;
  s.vertices = g.num_vertices;
  for (const auto& e : g.edges) s.edge_total += e.size() - 1;
  const auto comps = components_of(g, all_vertices(g), all_edges(g));
  s.components = comps.size();
  s.component_of.resize(g.num_vertices);
  for (size_t c = 0; c < comps.size(); ++c) {
    for (size_t v : comps[c].vertices) s.component_of[v] = c;
  }
  return s;
}

bool is_connected(const Hypergraph& g) { return hypergraph_stats(g).components <= 1; }

Graphified graphify(const Hypergraph& g) {
  validate(g);
  Graphified out;
  out.graph.num_vertices = g.num_vertices;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    for (size_t k = 1; k < edge.size(); ++k) {
      out.graph.edges.push_back({edge.front(), edge[k]});
      out.psi.push_back(e);
    }
  }
  return out;
}

bool is_simple_cycle(const Hypergraph& g, const Cycle& c) {
  const size_t k = c.vertices.size();
  if (k < 2 || c.edges.size() != k) return false;
  auto vs = c.vertices;
  auto es = c.edges;
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) return false;
  for (size_t t = 0; t < k; ++t) {
    if (c.edges[t] >= g.edges.size() || c.vertices[t] >= g.num_vertices) return false;
    const auto& e = g.edges[c.edges[t]];
    if (!std::binary_search(e.begin(), e.end(), c.vertices[t])) return false;
    if (!std::binary_search(e.begin(), e.end(), c.vertices[(t + 1) % k])) return false;
  }
  return true;
}

namespace {

using Adjacency = std::vector<std::vector<std::pair<size_t, size_t>>>;  // (neighbour, edge)

Adjacency adjacency(const Hypergraph& graph) {
  Adjacency adj(graph.num_vertices);
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    adj[graph.edges[e][0]].emplace_back(graph.edges[e][1], e);
    adj[graph.edges[e][1]].emplace_back(graph.edges[e][0], e);
  }
  return adj;
}

// A cycle of a multigraph (two-vertex edges) reachable from `start`.
std::optional<Cycle> graph_cycle_from(const Adjacency& adj, size_t start, std::vector<bool>& visited) {
  std::vector<size_t> path, path_edges;
  std::vector<size_t> depth(adj.size(), 0);
  std::optional<Cycle> found;
  std::function<bool(size_t, size_t)> dfs = [&](size_t u, size_t parent_edge) {
    visited[u] = true;
    depth[u] = path.size();
    path.push_back(u);
    for (const auto& [w, e] : adj[u]) {
      if (e == parent_edge) continue;
      if (visited[w]) {
        // undirected DFS: a non-tree edge always leads back to an ancestor
        Cycle c;
        c.vertices.assign(path.begin() + static_cast<std::ptrdiff_t>(depth[w]), path.end());
        c.edges.assign(path_edges.begin() + static_cast<std::ptrdiff_t>(depth[w]), path_edges.end());
        c.edges.push_back(e);
        found = std::move(c);
        return true;
      }
      path_edges.push_back(e);
      if (dfs(w, e)) return true;
      path_edges.pop_back();
    }
    path.pop_back();
    return false;
  };
  dfs(start, static_cast<size_t>(-1));
  return found;
}

}  // namespace

std::optional<Cycle> find_simple_cycle(const Hypergraph& g) {
  const Graphified hat = graphify(g);
  const Adjacency adj = adjacency(hat.graph);
  std::vector<bool> visited(g.num_vertices, false);
  std::optional<Cycle> base;
  for (size_t v = 0; v < g.num_vertices && !base; ++v) {
    if (!visited[v]) base = graph_cycle_from(adj, v, visited);
  }
  if (!base) return std::nullopt;

  Cycle c = *base;
  for (auto& e : c.edges) e = hat.psi[e];
  // Compress repeated hyperedges: with f_s = f_t, the arc between them closes
  // up through f itself.
  while (true) {
    const size_t k = c.edges.size();
    size_t s = k, t = k;
    for (size_t a = 0; a < k && s == k; ++a) {
      for (size_t b = a + 1; b < k; ++b) {
        if (c.edges[a] == c.edges[b]) {
          s = a;
          t = b;
          break;
        }
      }
    }
    if (s == k) break;
    const size_t f = c.edges[s];
    Cycle next;
    if (t - s >= 2) {
      for (size_t q = s + 1; q < t; ++q) {
        next.vertices.push_back(c.vertices[q]);
        next.edges.push_back(c.edges[q]);
      }
      next.vertices.push_back(c.vertices[t]);
      next.edges.push_back(f);
    } else {
      for (size_t q = t + 1; q % k != s; ++q) {
        next.vertices.push_back(c.vertices[q % k]);
        next.edges.push_back(c.edges[q % k]);
      }
      next.vertices.push_back(c.vertices[s]);
      next.edges.push_back(f);
    }
    c = std::move(next);
  }
  if (!is_simple_cycle(g, c)) throw std::logic_error("find_simple_cycle: compressed cycle is not simple");
  return c;
}

bool is_good_orientation(const Hypergraph& g, const GoodOrientation& out) {
  if (out.size() != g.num_vertices) return false;
  std::vector<size_t> count(g.edges.size(), 0);
  for (size_t v = 0; v < out.size(); ++v) {
    if (out[v] >= g.edges.size()) return false;
    const auto& e = g.edges[out[v]];
    if (!std::binary_search(e.begin(), e.end(), v)) return false;
    ++count[out[v]];
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (count[e] != g.edges[e].size() - 1) return false;
  }
  return true;
}

std::vector<GoodOrientation> good_orientations(const Hypergraph& g) {
  const HypergraphStats stats = hypergraph_stats(g);
  std::vector<GoodOrientation> result;
  if (stats.edge_total != stats.vertices) return result;
  const auto comps = components_of(g, all_vertices(g), all_edges(g));
  for (const auto& c : comps) {
    size_t total = 0;
    for (size_t e : c.edges) total += g.edges[e].size() - 1;
    if (total != c.vertices.size()) return result;
  }

  if (stats.edge_total <= kOrientationEnumerationLimit) {
    std::vector<std::vector<size_t>> incident(g.num_vertices);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      for (size_t v : g.edges[e]) incident[v].push_back(e);
    }
    std::vector<size_t> capacity(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) capacity[e] = g.edges[e].size() - 1;
    GoodOrientation out(g.num_vertices);
    std::function<void(size_t)> assign = [&](size_t v) {
      if (v == g.num_vertices) {
        result.push_back(out);
        return;
      }
      for (size_t e : incident[v]) {
        if (capacity[e] == 0) continue;
        --capacity[e];
        out[v] = e;
        assign(v + 1);
        ++capacity[e];
      }
    };
    assign(0);
    return result;
  }

  // Each component of the graphified graph is unicyclic: orient every cycle
  // one way or the other and let the trees flow into it.
  const Graphified hat = graphify(g);
  const Adjacency adj = adjacency(hat.graph);
  std::vector<Cycle> cycles;
  std::vector<bool> visited(g.num_vertices, false);
  for (const auto& c : comps) {
    auto cyc = graph_cycle_from(adj, c.vertices.front(), visited);
    if (!cyc) throw std::logic_error("good_orientations: component without a cycle");
    cycles.push_back(*cyc);
  }
  for (bool forward : {true, false}) {
    GoodOrientation graph_out(g.num_vertices, 0);
    std::vector<bool> placed(g.num_vertices, false);
    std::vector<bool> cycle_edge(hat.graph.edges.size(), false);
    std::vector<size_t> frontier;
    for (const auto& cyc : cycles) {
      const size_t k = cyc.vertices.size();
      for (size_t t = 0; t < k; ++t) {
        const size_t v = cyc.vertices[t];
        graph_out[v] = forward ? cyc.edges[t] : cyc.edges[(t + k - 1) % k];
        placed[v] = true;
        cycle_edge[cyc.edges[t]] = true;
        frontier.push_back(v);
      }
    }
    for (size_t q = 0; q < frontier.size(); ++q) {
      const size_t u = frontier[q];
      for (const auto& [w, e] : adj[u]) {
        if (placed[w] || cycle_edge[e]) continue;
        graph_out[w] = e;
        placed[w] = true;
        frontier.push_back(w);
      }
    }
    GoodOrientation out(g.num_vertices);
    for (size_t v = 0; v < g.num_vertices; ++v) out[v] = hat.psi[graph_out[v]];
    if (!is_good_orientation(g, out)) throw std::logic_error("good_orientations: invalid cycle orientation");
    if (std::find(result.begin(), result.end(), out) == result.end()) result.push_back(std::move(out));
  }
  return result;
}

bool is_complementary(const TwMatrix& a, const Hypergraph& g) {
  if (g.edges.size() != a.num_rows() || g.num_vertices != a.num_cols()) return false;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (g.edges[i].size() != static_cast<size_t>(a.weight(i)) + 1) return false;
    for (size_t j : g.edges[i]) {
      if (j >= a.num_cols() || a.at(i, j) != 0) return false;
    }
  }
  return true;
}

namespace {

void require_nonnegative(const TwMatrix& a, const char* op) {
  for (const auto& row : a.rows()) {
    for (const auto& v : row) {
      if (v < 0) throw DomainError(op, "matrix has a negative entry");
    }
  }
}

}  // namespace

LinkageResult complementary_linkage(const TwMatrix& a) {
  require_nonnegative(a, "complementary_linkage");
  Hypergraph g;
  g.num_vertices = a.num_cols();
  for (size_t i = 0; i < a.num_rows(); ++i) {
    std::vector<size_t> edge;
    for (size_t j = 0; j < a.num_cols() && edge.size() < static_cast<size_t>(a.weight(i)) + 1; ++j) {
      if (a.at(i, j) == 0) edge.push_back(j);
    }
    if (edge.size() < static_cast<size_t>(a.weight(i)) + 1) return LinkageResult{};
    g.edges.push_back(std::move(edge));
  }
  return LinkageResult{true, std::move(g)};
}

namespace {

struct GameState {
  std::size_t components = 0;
  std::size_t min_cyclic = 0;

  auto operator<=>(const GameState&) const = default;
};

// (#components, M(G)); M is 0 when no component has a cycle.
GameState game_state(const Hypergraph& g, const std::vector<Component>& comps) {
  GameState s{comps.size(), 0};
  for (const auto& c : comps) {
    if (c.has_cycle(g) && (s.min_cyclic == 0 || c.vertices.size() < s.min_cyclic)) s.min_cyclic = c.vertices.size();
  }
  return s;
}

void replace_vertex(std::vector<size_t>& edge, size_t from, size_t to) {
  edge.erase(std::find(edge.begin(), edge.end(), from));
  edge.insert(std::lower_bound(edge.begin(), edge.end(), to), to);
}

}  // namespace

GameResult game_rescale(const TwMatrix& a, const Hypergraph& g) {
  constexpr const char* op = "game_rescale";
  require_nonnegative(a, op);
  validate(g);
  if (!is_complementary(a, g)) throw DomainError(op, "hypergraph is not a complementary linkage hypergraph");
  if (static_cast<size_t>(a.weight_total()) + 1 < a.num_cols()) throw DomainError(op, "requires K >= N - 1");
  if (is_connected(g)) throw DomainError(op, "hypergraph is already connected");

  const size_t n = a.num_cols();
  GameResult out{a, {RationalVector(a.num_rows(), 0), RationalVector(n, 0)}, g, g, {}};
  Hypergraph current = g;
  auto comps = components_of(current, all_vertices(current), all_edges(current));
  GameState state = game_state(current, comps);

  while (comps.size() > 1) {
    const Component* chosen = nullptr;
    for (const auto& c : comps) {
      if (c.has_cycle(current) && (!chosen || c.vertices.size() < chosen->vertices.size())) chosen = &c;
    }
    if (!chosen) throw std::logic_error("game_rescale: no component with a cycle");
    const Component comp = *chosen;

    std::vector<bool> in_v(n, false);
    for (size_t v : comp.vertices) in_v[v] = true;

    // Operation (*).
    GameStep step;
    step.component = comp.vertices;
    bool have = false;
    for (size_t i : comp.edges) {
      for (size_t j = 0; j < n; ++j) {
        if (in_v[j]) continue;
        const Rational& v = out.matrix.at(i, j);
        if (!have || v < step.delta) {
          step.delta = v;
          have = true;
        }
      }
    }
    RationalVector rows(a.num_rows(), 0), cols(n, 0);
    for (size_t i : comp.edges) rows[i] = step.delta;
    for (size_t j : comp.vertices) cols[j] = step.delta;
    out.matrix = out.matrix.shifted(rows, cols);
    for (size_t i = 0; i < rows.size(); ++i) out.rescaling.row_offsets[i] += rows[i];
    for (size_t j = 0; j < n; ++j) out.rescaling.col_offsets[j] += cols[j];

    bool found = false;
    auto sorted_edges = comp.edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    for (size_t i : sorted_edges) {
      for (size_t j = 0; j < n && !found; ++j) {
        if (!in_v[j] && out.matrix.at(i, j) == 0) {
          step.row = i;
          step.column = j;
          found = true;
        }
      }
      if (found) break;
    }
    if (!found) throw std::logic_error("game_rescale: operation (*) produced no zero");

    std::vector<size_t> rest;
    for (size_t e : comp.edges) {
      if (e != step.row) rest.push_back(e);
    }
    const auto parts = components_of(current, comp.vertices, rest);
    const auto& edge = current.edges[step.row];
    std::optional<size_t> alternative;
    if (parts.size() + 1 <= edge.size()) {
      // k <= m_{i*}: some part holds two vertices of edge i*.
      step.connecting = true;
      for (const auto& part : parts) {
        std::vector<size_t> hit;
        for (size_t v : part.vertices) {
          if (std::binary_search(edge.begin(), edge.end(), v)) hit.push_back(v);
        }
        if (hit.size() >= 2) {
          step.replaced = hit.back();
          alternative = hit.front();
          break;
        }
      }
    } else {
      const Component* cyclic = nullptr;
      for (const auto& part : parts) {
        if (part.has_cycle(current) && (!cyclic || part.vertices.size() < cyclic->vertices.size())) cyclic = &part;
      }
      if (!cyclic) throw std::logic_error("game_rescale: no cyclic part after deleting the edge");
      for (size_t v : cyclic->vertices) {
        if (std::binary_search(edge.begin(), edge.end(), v)) step.replaced = v;
      }
    }

    Hypergraph next = current;
    replace_vertex(next.edges[step.row], step.replaced, step.column);
    auto next_comps = components_of(next, all_vertices(next), all_edges(next));
    const GameState next_state = game_state(next, next_comps);
    if (!(next_state < state)) throw std::logic_error("game_rescale: (components, M) failed to decrease");
    step.components_after = next_state.components;
    step.min_cyclic_after = next_state.components > 1 ? next_state.min_cyclic : 0;

    if (next_comps.size() == 1) {
      if (!alternative) throw std::logic_error("game_rescale: final step has no second choice");
      out.first = next;
      out.second = current;
      replace_vertex(out.second.edges[step.row], *alternative, step.column);
    }
    out.trace.push_back(step);
    current = std::move(next);
    comps = std::move(next_comps);
    state = next_state;
  }

  if (!is_complementary(out.matrix, out.first) || !is_complementary(out.matrix, out.second) ||
      !is_connected(out.first) || !is_connected(out.second) || out.first == out.second) {
    throw std::logic_error("game_rescale: post-conditions failed");
  }
  return out;
}

}  // namespace tropcram
