#include "primtop/dot.hpp"

#include <algorithm>
#include <sstream>

namespace primtop {

namespace {

std::string join_names(const DirectedGraph& g, const std::vector<int>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += g.vnames[vs[i]];
  }
  return out;
}

}  // namespace

std::string emit_dot(const DirectedGraph& g) {
  PrimSpectrum spec = prim_spectrum(g);
  // node-level points; loop fibers collapse to one node each
  struct Node {
    std::string id, label;
    PrimPoint probe;  // fiber angle irrelevant at node level
  };
  std::vector<Node> nodes;
  for (const auto& t : spec.gammas)
    nodes.push_back({"tail_" + join_names(g, t.members), "M{" + join_names(g, t.members) + "}",
                     PrimPoint::gamma(t.members)});
  for (int v : spec.breakings)
    nodes.push_back({"bv_" + g.vnames[v], "BV:" + g.vnames[v], PrimPoint::breaking(v)});
  for (const auto& l : spec.loops)
    nodes.push_back({"loop_" + join_names(g, l), "L{" + join_names(g, l) + "} x T",
                     PrimPoint::loop(l, RationalAngle())});
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });

  int n = static_cast<int>(nodes.size());
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // same-fiber points only specialize at equal angles, never node-level
      if (nodes[i].probe.kind == PrimPoint::Kind::Loop &&
          nodes[j].probe.kind == PrimPoint::Kind::Loop &&
          nodes[i].probe.members == nodes[j].probe.members)
        continue;
      rel[i][j] = specializes(g, nodes[i].probe, nodes[j].probe) ? 1 : 0;
    }
  // transitive reduction of the (acyclic) strict order
  std::vector<std::vector<char>> cover = rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!rel[i][j]) continue;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && rel[i][k] && rel[k][j]) cover[i][j] = 0;
    }

  std::ostringstream out;
  out << "digraph prim {\n";
  out << "  rankdir=TB;\n";
  for (const auto& nd : nodes) out << "  \"" << nd.id << "\" [label=\"" << nd.label << "\"];\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cover[i][j]) out << "  \"" << nodes[i].id << "\" -> \"" << nodes[j].id << "\";\n";
  out << "}\n";
  return out.str();
}

std::string emit_dot(const SGDS& s) {
  SgdsSpectrum spec = sgds_prim(s);
  auto join = [&](const std::vector<int>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ",";
      out += s.xnames[xs[i]];
    }
    return out;
  };
  std::vector<std::string> lines;
  for (const auto& o : spec.aperiodic_orbits)
    lines.push_back("  \"orbit_" + join(o) + "\" [label=\"[" + join(o) + "]\"];");
  for (const auto& f : spec.periodic_fibers)
    lines.push_back("  \"fiber_" + join(f.orbit) + "\" [label=\"[" + join(f.orbit) +
                    "] x T (p=" + std::to_string(f.period) + ")\"];");
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  out << "digraph prim {\n";
  for (const auto& l : lines) out << l << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace primtop
