#include "primtop/json_io.hpp"

#include <fstream>

#include "primtop/errors.hpp"

namespace primtop {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw parse_error("invalid JSON in '" + path + "': " + ex.what());
  }
  return j;
}

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw parse_error(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<std::string> string_list(const Json& j) {
  std::vector<std::string> out;
  if (!j.is_array()) throw parse_error("expected an array of strings");
  for (const auto& x : j) out.push_back(x.get<std::string>());
  return out;
}

}  // namespace

CircleSet circle_from_json(const Json& j) {
  if (j.contains("full") && j["full"].get<bool>()) return CircleSet::full_circle();
  std::vector<RationalAngle> pts;
  std::vector<CircleSet::Arc> arcs;
  if (j.contains("points"))
    for (const auto& p : j["points"]) pts.push_back(RationalAngle::parse(p.get<std::string>()));
  if (j.contains("arcs"))
    for (const auto& a : j["arcs"]) {
      if (!a.is_array() || a.size() != 2) throw parse_error("arc must be a pair of angles");
      RationalAngle s = RationalAngle::parse(a[0].get<std::string>());
      RationalAngle e = RationalAngle::parse(a[1].get<std::string>());
      Ratio len = (e - s).value();
      if (len == 0)
        pts.push_back(s);
      else
        arcs.push_back({s, len});
    }
  return CircleSet::make(std::move(pts), std::move(arcs), false);
}

Json circle_to_json(const CircleSet& c) {
  Json j;
  j["full"] = c.is_full();
  j["points"] = Json::array();
  j["arcs"] = Json::array();
  for (const auto& p : c.points()) j["points"].push_back(p.str());
  for (const auto& a : c.arcs())
    j["arcs"].push_back({a.start.str(), RationalAngle(a.start.value() + a.len).str()});
  return j;
}

IntSubgroup subgroup_from_json(const Json& j) {
  int k = field(j, "k").get<int>();
  std::vector<std::vector<Int>> gens;
  for (const auto& row : field(j, "basis")) {
    std::vector<Int> r;
    for (const auto& x : row) r.push_back(Int(x.get<long long>()));
    gens.push_back(std::move(r));
  }
  return IntSubgroup::from_generators(k, gens);
}

Json subgroup_to_json(const IntSubgroup& s) {
  Json j;
  j["k"] = s.k;
  j["basis"] = Json::array();
  for (int r = 0; r < s.basis.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < s.k; ++c) row.push_back(s.basis.at(r, c).convert_to<long long>());
    j["basis"].push_back(row);
  }
  return j;
}

Json torus_desc_to_json(const TorusSubgroupDesc& t) {
  Json j;
  j["k"] = t.k;
  j["generators"] = Json::array();
  for (const auto& g : t.generators) j["generators"].push_back(character_to_json(g));
  j["subtorus"] = Json::array();
  for (int r = 0; r < t.connected_dims.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < t.k; ++c) row.push_back(t.connected_dims.at(r, c).convert_to<long long>());
    j["subtorus"].push_back(row);
  }
  j["full"] = t.is_full();
  j["trivial"] = t.is_trivial();
  return j;
}

CharacterVector character_from_json(int k, const Json& j) {
  CharacterVector c;
  for (const auto& x : j) c.t.push_back(RationalAngle::parse(x.get<std::string>()));
  if (c.k() != k) throw parse_error("character has wrong rank");
  return c;
}

Json character_to_json(const CharacterVector& c) {
  Json j = Json::array();
  for (const auto& a : c.t) j.push_back(a.str());
  return j;
}

namespace {

DirectedGraph graph_from_json(const Json& j) {
  DirectedGraph g;
  g.vnames = string_list(field(j, "vertices"));
  for (const auto& e : field(j, "edges")) {
    DirectedGraph::Edge edge;
    edge.name = field(e, "name").get<std::string>();
    edge.source = g.vertex(field(e, "source").get<std::string>());
    edge.range = g.vertex(field(e, "range").get<std::string>());
    const Json& m = field(e, "mult");
    if (m.is_string()) {
      std::string s = m.get<std::string>();
      if (s != "inf" && s != "omega") throw parse_error("bad multiplicity '" + s + "'");
      edge.mult = kOmegaMult;
    } else {
      edge.mult = m.get<long long>();
    }
    g.edges.push_back(std::move(edge));
  }
  g.validate();
  return g;
}

KGraphSkeleton kgraph_from_json(const Json& j) {
  KGraphSkeleton sk;
  sk.k = field(j, "k").get<int>();
  sk.vnames = string_list(field(j, "vertices"));
  for (const auto& e : field(j, "edges")) {
    KGraphSkeleton::KEdge ke;
    ke.name = field(e, "name").get<std::string>();
    ke.color = field(e, "color").get<int>();
    ke.source = sk.vertex(field(e, "source").get<std::string>());
    ke.range = sk.vertex(field(e, "range").get<std::string>());
    sk.edges.push_back(std::move(ke));
  }
  if (j.contains("squares"))
    for (const auto& s : j["squares"]) {
      const Json& a = field(s, "first");
      const Json& b = field(s, "second");
      if (a.size() != 2 || b.size() != 2) throw parse_error("square cells are edge pairs");
      KGraphSkeleton::SquareCell cell;
      cell.first_a = sk.edge(a[0].get<std::string>());
      cell.first_b = sk.edge(a[1].get<std::string>());
      cell.second_a = sk.edge(b[0].get<std::string>());
      cell.second_b = sk.edge(b[1].get<std::string>());
      sk.squares.push_back(cell);
    }
  validate_kgraph(sk);
  return sk;
}

SGDS sgds_from_json(const Json& j) {
  SGDS s;
  s.xnames = string_list(field(j, "X"));
  s.sigma.assign(s.xnames.size(), -1);
  for (const auto& [key, value] : field(j, "sigma").items())
    s.sigma[s.point(key)] = s.point(value.get<std::string>());
  s.validate();
  return s;
}

FiniteAction action_from_json(const Json& j) {
  FiniteAction a;
  const Json& grp = field(j, "group");
  a.group.names = string_list(field(grp, "elements"));
  auto element = [&](const std::string& n) {
    for (int i = 0; i < a.group.order(); ++i)
      if (a.group.names[i] == n) return i;
    throw parse_error("unknown group element '" + n + "'");
  };
  for (const auto& row : field(grp, "table")) {
    std::vector<int> r;
    for (const auto& x : row) r.push_back(element(x.get<std::string>()));
    a.group.table.push_back(std::move(r));
  }
  a.xnames = string_list(field(j, "X"));
  a.act.assign(a.group.order(), {});
  for (int g = 0; g < a.group.order(); ++g) {
    a.act[g].resize(a.nx());
    for (int x = 0; x < a.nx(); ++x) a.act[g][x] = x;
  }
  if (j.contains("act"))
    for (const auto& [gname, perm] : j["act"].items()) {
      int g = element(gname);
      for (const auto& [from, to] : perm.items())
        a.act[g][a.point(from)] = a.point(to.get<std::string>());
    }
  a.validate();
  return a;
}

}  // namespace

InputObject parse_input_json(const Json& j) {
  std::string type = field(j, "type").get<std::string>();
  if (type == "graph") return graph_from_json(j);
  if (type == "kgraph") return kgraph_from_json(j);
  if (type == "sgds") return sgds_from_json(j);
  if (type == "action") return action_from_json(j);
  throw parse_error("unknown input type '" + type + "'");
}

InputObject parse_input_file(const std::string& path) {
  return parse_input_json(load_json_file(path));
}

PrimPoint prim_point_from_json(const DirectedGraph& g, const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "gamma") {
    std::vector<int> tail;
    for (const auto& v : field(j, "tail")) tail.push_back(g.vertex(v.get<std::string>()));
    return PrimPoint::gamma(tail);
  }
  if (kind == "breaking") return PrimPoint::breaking(g.vertex(field(j, "vertex").get<std::string>()));
  if (kind == "loop") {
    std::vector<int> loop;
    for (const auto& v : field(j, "loop")) loop.push_back(g.vertex(v.get<std::string>()));
    return PrimPoint::loop(loop, RationalAngle::parse(field(j, "fiber").get<std::string>()));
  }
  throw parse_error("unknown prim point kind '" + kind + "'");
}

Json prim_point_to_json(const DirectedGraph& g, const PrimPoint& p) {
  Json j;
  switch (p.kind) {
    case PrimPoint::Kind::Gamma: {
      j["kind"] = "gamma";
      Json tail = Json::array();
      for (int v : p.members) tail.push_back(g.vnames[v]);
      j["tail"] = tail;
      break;
    }
    case PrimPoint::Kind::Breaking:
      j["kind"] = "breaking";
      j["vertex"] = g.vnames[p.members[0]];
      break;
    case PrimPoint::Kind::Loop: {
      j["kind"] = "loop";
      Json l = Json::array();
      for (int v : p.members) l.push_back(g.vnames[v]);
      j["loop"] = l;
      j["fiber"] = p.fiber.str();
      break;
    }
  }
  return j;
}

Json tail_to_json(const DirectedGraph& g, const Tail& t) {
  Json j;
  Json mem = Json::array();
  for (int v : t.members) mem.push_back(g.vnames[v]);
  j["members"] = mem;
  j["gamma"] = t.gamma;
  if (t.unique_least_no_loop)
    j["unique_least_no_loop"] = g.vnames[*t.unique_least_no_loop];
  else
    j["unique_least_no_loop"] = nullptr;
  return j;
}

Json spectrum_to_json(const DirectedGraph& g, const PrimSpectrum& s) {
  Json j;
  j["gammas"] = Json::array();
  for (const auto& t : s.gammas) j["gammas"].push_back(tail_to_json(g, t));
  j["breakings"] = Json::array();
  for (int v : s.breakings) j["breakings"].push_back(g.vnames[v]);
  j["loops"] = Json::array();
  for (const auto& l : s.loops) {
    Json e;
    Json mem = Json::array();
    for (int v : l) mem.push_back(g.vnames[v]);
    e["members"] = mem;
    e["fiber"] = "T";
    j["loops"].push_back(e);
  }
  return j;
}

Json closed_set_to_json(const DirectedGraph& g, const ClosedPrimSet& c) {
  Json j;
  j["finite_points"] = Json::array();
  for (const auto& p : c.finite_points) j["finite_points"].push_back(prim_point_to_json(g, p));
  j["loop_fibers"] = Json::array();
  for (const auto& [l, set] : c.loop_fibers) {
    Json e;
    Json mem = Json::array();
    for (int v : l) mem.push_back(g.vnames[v]);
    e["loop"] = mem;
    e["set"] = circle_to_json(set);
    j["loop_fibers"].push_back(e);
  }
  return j;
}

Json graph_to_json(const DirectedGraph& g) {
  Json j;
  j["type"] = "graph";
  j["vertices"] = g.vnames;
  j["edges"] = Json::array();
  for (const auto& e : g.edges) {
    Json je;
    je["name"] = e.name;
    je["source"] = g.vnames[e.source];
    je["range"] = g.vnames[e.range];
    if (e.mult == kOmegaMult)
      je["mult"] = "inf";
    else
      je["mult"] = e.mult;
    j["edges"].push_back(je);
  }
  return j;
}

Json kgraph_to_json(const KGraphSkeleton& sk) {
  Json j;
  j["type"] = "kgraph";
  j["k"] = sk.k;
  j["vertices"] = sk.vnames;
  j["edges"] = Json::array();
  for (const auto& e : sk.edges) {
    Json je;
    je["name"] = e.name;
    je["color"] = e.color;
    je["source"] = sk.vnames[e.source];
    je["range"] = sk.vnames[e.range];
    j["edges"].push_back(je);
  }
  j["squares"] = Json::array();
  for (const auto& c : sk.squares) {
    Json jc;
    jc["first"] = {sk.edges[c.first_a].name, sk.edges[c.first_b].name};
    jc["second"] = {sk.edges[c.second_a].name, sk.edges[c.second_b].name};
    j["squares"].push_back(jc);
  }
  return j;
}

Json sgds_to_json(const SGDS& s) {
  Json j;
  j["type"] = "sgds";
  j["X"] = s.xnames;
  Json sig = Json::object();
  for (int x = 0; x < s.n(); ++x)
    if (s.sigma[x] >= 0) sig[s.xnames[x]] = s.xnames[s.sigma[x]];
  j["sigma"] = sig;
  return j;
}

Json action_to_json(const FiniteAction& a) {
  Json j;
  j["type"] = "action";
  Json grp;
  grp["elements"] = a.group.names;
  grp["table"] = Json::array();
  for (int g = 0; g < a.group.order(); ++g) {
    Json row = Json::array();
    for (int h = 0; h < a.group.order(); ++h) row.push_back(a.group.names[a.group.mul(g, h)]);
    grp["table"].push_back(row);
  }
  j["group"] = grp;
  j["X"] = a.xnames;
  Json act = Json::object();
  for (int g = 0; g < a.group.order(); ++g) {
    Json perm = Json::object();
    for (int x = 0; x < a.nx(); ++x)
      if (a.act[g][x] != x) perm[a.xnames[x]] = a.xnames[a.act[g][x]];
    if (!perm.empty()) act[a.group.names[g]] = perm;
  }
  j["act"] = act;
  return j;
}

KPath kpath_from_json(const KGraphSkeleton& sk, const Json& j) {
  if (j.contains("vertex")) return vertex_path(sk, sk.vertex(j["vertex"].get<std::string>()));
  std::vector<int> seq;
  for (const auto& e : field(j, "edges")) seq.push_back(sk.edge(e.get<std::string>()));
  return path_from_edges(sk, seq);
}

Json kpath_to_json(const KGraphSkeleton& sk, const KPath& p) {
  Json j;
  if (p.is_vertex()) {
    j["vertex"] = sk.vnames[p.range_v];
  } else {
    Json e = Json::array();
    for (int ei : p.edges) e.push_back(sk.edges[ei].name);
    j["edges"] = e;
  }
  j["degree"] = p.deg;
  return j;
}

KPrimPoint kprim_point_from_json(const KGraphSkeleton& sk, const Json& j) {
  KPrimPoint p;
  for (const auto& v : field(j, "tail")) p.tail.members.push_back(sk.vertex(v.get<std::string>()));
  std::sort(p.tail.members.begin(), p.tail.members.end());
  p.chi = character_from_json(sk.k, field(j, "chi"));
  return p;
}

Json per_result_to_json(const KGraphSkeleton& sk, const PerResult& r) {
  Json j;
  j["per"] = subgroup_to_json(r.subgroup);
  if (r.stabilized)
    j["status"] = Json{{"StabilizedAt", r.stabilized_at}};
  else
    j["status"] = "LowerBoundOnly";
  j["witnesses"] = Json::array();
  for (const auto& w : r.witnesses) {
    Json combo = Json::array();
    for (const auto& [coef, pair] : w.combo) {
      Json e;
      e["coefficient"] = coef.convert_to<long long>();
      e["mu"] = kpath_to_json(sk, pair.mu);
      e["nu"] = kpath_to_json(sk, pair.nu);
      combo.push_back(e);
    }
    j["witnesses"].push_back(combo);
  }
  return j;
}

std::map<int, CircleSet> y_map_from_json(const SGDS& s, const Json& j) {
  std::map<int, CircleSet> out;
  for (const auto& [key, value] : j.items()) out[s.point(key)] = circle_from_json(value);
  return out;
}

std::map<int, TorusSubsetDesc> d_map_from_json(const KGraphSkeleton& sk, const Json& j) {
  std::map<int, TorusSubsetDesc> out;
  for (const auto& [key, value] : j.items()) {
    TorusSubsetDesc d;
    std::string kind = field(value, "kind").get<std::string>();
    if (kind == "full") {
      d.kind = TorusSubsetDesc::Kind::Full;
    } else if (kind == "empty") {
      d.kind = TorusSubsetDesc::Kind::Empty;
    } else if (kind == "chars") {
      d.kind = TorusSubsetDesc::Kind::CharList;
      for (const auto& c : field(value, "chars")) d.chars.push_back(character_from_json(sk.k, c));
    } else if (kind == "product") {
      d.kind = TorusSubsetDesc::Kind::CircleProduct;
      for (const auto& f : field(value, "factors")) d.factors.push_back(circle_from_json(f));
      if (static_cast<int>(d.factors.size()) != sk.k)
        throw parse_error("product D-entry needs one factor per coordinate");
    } else {
      throw parse_error("unknown D-entry kind '" + kind + "'");
    }
    out[sk.vertex(key)] = std::move(d);
  }
  return out;
}

}  // namespace primtop
