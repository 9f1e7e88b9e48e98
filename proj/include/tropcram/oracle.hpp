#pragma once

#include <cstddef>
#include <vector>

#include "tropcram/geometry.hpp"
#include "tropcram/hypergraph.hpp"
#include "tropcram/twla.hpp"

// Brute-force references. Kept independent of the fast routes they check.
namespace tropcram::oracle {

struct Caps {
  std::size_t perm = 8;             // N for brute_perm / D_vertices
  std::size_t transport = 100000;   // candidate linkage hypergraphs for T_vertices
  std::size_t rigid = kRigidBruteLimit;

  // TROPCRAM_CAP="perm=9,transport=200000,rigid=18"; unknown keys or bad
  // numbers throw ParseError.
  static Caps from_env();
};

using Matrix = std::vector<RationalVector>;

struct BrutePerm {
  Rational value;
  std::vector<Partition> optima;  // ascending
};

// Every permutation of the row-expanded matrix, folded back into partitions.
BrutePerm brute_perm(const TwMatrix& a, const Caps& caps = {});

// <A, Y>_w = sum m_i A_ij Y_ij
Rational weighted_inner(const TwMatrix& a, const Matrix& y);

// One matrix per partition of `size` columns into blocks of sizes m_i.
std::vector<Matrix> D_vertices(const std::vector<int>& weights, std::size_t size, const Caps& caps = {});

struct TransportVertex {
  Matrix y;
  Hypergraph support;
};

// Flow realization of a connected linkage hypergraph (a tree) as a vertex of T.
Matrix transport_vertex(const std::vector<int>& weights, const Hypergraph& tree);
Hypergraph support_hypergraph(const Matrix& y);

std::vector<TransportVertex> T_vertices(const std::vector<int>& weights, std::size_t n, const Caps& caps = {});

struct TransportMin {
  Rational value;
  std::vector<std::size_t> argmin;  // indices into T_vertices
  std::size_t vertex_count = 0;
};

TransportMin min_over_transport(const TwMatrix& a, const Caps& caps = {});

struct BruteRigid {
  bool rigid = false;
  std::vector<PointSet> minimal_witnesses;  // inclusion-minimal deformable sets
};

BruteRigid brute_rigid(const Weighting& w, const LatticeSubdivision& sub, const Caps& caps = {});

// Sum over maximal simplices of dim >= |K^0| - h^0 for the subcomplex generated by `cells`.
bool span_inequality_check(const LatticeSubdivision& sub, const std::vector<std::size_t>& cells);

}  // namespace tropcram::oracle
