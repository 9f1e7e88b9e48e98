#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropcram/twla.hpp"

namespace tropcram {

// Vertices are 0..num_vertices-1. Each edge is a sorted list of at least two
// distinct vertices; repeated edges are allowed.
struct Hypergraph {
  std::size_t num_vertices = 0;
  std::vector<std::vector<std::size_t>> edges;

  bool operator==(const Hypergraph&) const = default;
};

// Throws DomainError when an edge is too small, repeats a vertex or is out of range.
void validate(const Hypergraph& g);

struct HypergraphStats {
  std::size_t vertices = 0;
  std::size_t edge_total = 0;  // sum of (|e| - 1)
  std::size_t components = 0;
  std::vector<std::size_t> component_of;  // per vertex, numbered by least vertex
};

HypergraphStats hypergraph_stats(const Hypergraph& g);
bool is_connected(const Hypergraph& g);

struct Graphified {
  Hypergraph graph;             // every edge has two vertices
  std::vector<std::size_t> psi;  // new edge -> originating edge
};

// Each edge becomes a star centered at its least vertex.
Graphified graphify(const Hypergraph& g);

// v[0], e[0], v[1], e[1], ..., v[k-1], e[k-1], back to v[0]; edge e[t]
// touches v[t] and v[t+1 mod k].
struct Cycle {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
};

bool is_simple_cycle(const Hypergraph& g, const Cycle& c);
std::optional<Cycle> find_simple_cycle(const Hypergraph& g);

// out[v] is the edge vertex v points along.
using GoodOrientation = std::vector<std::size_t>;

bool is_good_orientation(const Hypergraph& g, const GoodOrientation& out);

inline constexpr std::size_t kOrientationEnumerationLimit = 12;

// Every good orientation when e(G) <= kOrientationEnumerationLimit, otherwise
// the two obtained by running each component's cycle in both directions.
std::vector<GoodOrientation> good_orientations(const Hypergraph& g);

// Edge i has m_i + 1 vertices and a is zero on all of them.
bool is_complementary(const TwMatrix& a, const Hypergraph& g);

struct LinkageResult {
  bool exists = false;
  std::optional<Hypergraph> hypergraph;  // edge i: the least m_i + 1 zero columns of row i
};

LinkageResult complementary_linkage(const TwMatrix& a);

struct GameStep {
  std::vector<std::size_t> component;  // vertices of the component used
  Rational delta;
  std::size_t row = 0;        // i*
  std::size_t column = 0;     // j*
  std::size_t replaced = 0;   // vertex of edge i* swapped for j*
  bool connecting = false;    // case k <= m_{i*}
  std::size_t components_after = 0;
  std::size_t min_cyclic_after = 0;  // M(G) after the step, 0 when connected
};

struct GameResult {
  TwMatrix matrix;
  Rescaling rescaling;  // matrix = a.shifted(row_offsets, col_offsets)
  Hypergraph first;
  Hypergraph second;
  std::vector<GameStep> trace;
};

// Rescales a non-negative matrix with a disconnected complementary linkage
// hypergraph until two distinct connected complementary ones exist.
GameResult game_rescale(const TwMatrix& a, const Hypergraph& g);

}  // namespace tropcram
