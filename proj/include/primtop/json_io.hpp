#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "primtop/digraph.hpp"
#include "primtop/kgraph.hpp"
#include "primtop/sgds.hpp"
#include "primtop/transform.hpp"

namespace primtop {

using Json = nlohmann::json;

using InputObject = std::variant<DirectedGraph, KGraphSkeleton, SGDS, FiniteAction>;

// Reads a self-describing envelope {"type": "graph"|"kgraph"|"sgds"|"action"}
// and validates the payload. Throws parse_error / domain_error.
InputObject parse_input_json(const Json& j);
InputObject parse_input_file(const std::string& path);

Json load_json_file(const std::string& path);

// circle sets: {"points":["1/3"],"arcs":[["0","1/4"]],"full":false}
CircleSet circle_from_json(const Json& j);
Json circle_to_json(const CircleSet& c);

// subgroups of Z^k: {"k":2,"basis":[[2,0],[0,1]]}
IntSubgroup subgroup_from_json(const Json& j);
Json subgroup_to_json(const IntSubgroup& s);
Json torus_desc_to_json(const TorusSubgroupDesc& t);

// prim points: {"kind":"gamma","tail":[...]} | {"kind":"breaking","vertex":v}
// | {"kind":"loop","loop":[...],"fiber":"1/4"}
PrimPoint prim_point_from_json(const DirectedGraph& g, const Json& j);
Json prim_point_to_json(const DirectedGraph& g, const PrimPoint& p);

Json tail_to_json(const DirectedGraph& g, const Tail& t);
Json spectrum_to_json(const DirectedGraph& g, const PrimSpectrum& s);
Json closed_set_to_json(const DirectedGraph& g, const ClosedPrimSet& c);
Json graph_to_json(const DirectedGraph& g);
Json kgraph_to_json(const KGraphSkeleton& sk);
Json sgds_to_json(const SGDS& s);
Json action_to_json(const FiniteAction& a);

KPath kpath_from_json(const KGraphSkeleton& sk, const Json& j);
Json kpath_to_json(const KGraphSkeleton& sk, const KPath& p);
KPrimPoint kprim_point_from_json(const KGraphSkeleton& sk, const Json& j);
Json per_result_to_json(const KGraphSkeleton& sk, const PerResult& r);

std::map<int, CircleSet> y_map_from_json(const SGDS& s, const Json& j);
std::map<int, TorusSubsetDesc> d_map_from_json(const KGraphSkeleton& sk, const Json& j);

CharacterVector character_from_json(int k, const Json& j);
Json character_to_json(const CharacterVector& c);

}  // namespace primtop
