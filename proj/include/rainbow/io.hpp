#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/analysis.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/locality.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

using Json = nlohmann::json;

// {"r":3,"n":6,"edges":[[0,1,2],...]} — edges sorted ascending, 0-based.
Json hypergraph_to_json(const UniformHypergraph& h);
UniformHypergraph hypergraph_from_json(const Json& j);

// {canonical, status:"2LL"|"NOT2LL", witness:[ranks]|null, orders_examined, ...}
Json record_to_json(const ClassificationRecord& rec);

// {pattern, embedding:[...], clashes:[{vertex,edge_a,edge_b,color},...]}
Json witness_to_json(const ViolationWitness& w);

Json certificate_to_json(const SolveCertificate& cert, const std::string& family_path);

// RLCF binary: magic "RLCF", version u8=1, n u32, r u8, k u32, seed u64, then
// row-major color[v][edge_rank] as u32 little-endian. A single-coloring file
// holds one row instead of n.
void write_family(const ColoringFamily& fam, const std::string& path);
ColoringFamily read_family(const std::string& path);
void write_single_coloring(const PQColoring& col, const std::string& path);
PQColoring read_single_coloring(const std::string& path, int p, int q);

std::vector<std::string> read_vector_lines(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace rainbow
