#pragma once

#include "json.hpp"
#include <string>
#include <vector>

#include "tropcram/geometry.hpp"
#include "tropcram/hypergraph.hpp"
#include "tropcram/trop_core.hpp"
#include "tropcram/twla.hpp"

// JSON documents. Integers are written as numbers, other rationals as "p/q"
// strings; indices are 0-based. Readers throw ParseError on schema violations.
namespace tropcram::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);
Json to_json(const RationalVector& values);
RationalVector vector_from_json(const Json& j);  // bare array or {"x": [...]}

Json to_json(const TwMatrix& a);
TwMatrix matrix_from_json(const Json& j);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json to_json(const PermResult& r);
PermResult perm_result_from_json(const Json& j);

Json to_json(const TropPolynomial& f);
TropPolynomial polynomial_from_json(const Json& j);

Json to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j);

Json to_json(const std::vector<PointCondition>& conditions);
std::vector<PointCondition> conditions_from_json(const Json& j);

// {"polytope": ..., "points": [...], "cells": [[...], ...]}; on input "points"
// is ignored and the cells are closed under faces.
Json to_json(const LatticeSubdivision& sub);
LatticeSubdivision subdivision_from_json(const Json& j);

// {"mu": [{"cell": [...], "weight": w}, ...]} listing non-zero weights only.
Json to_json(const Weighting& w, const LatticeSubdivision& sub);
Weighting weighting_from_json(const Json& j, const LatticeSubdivision& sub);

Json to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const Json& j);

Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace tropcram::io
