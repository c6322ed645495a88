#include <algorithm>
#include <functional>
#include <set>

#include "primtop/errors.hpp"
#include "primtop_ref.hpp"

namespace primtop::ref {

namespace {

std::vector<std::vector<char>> vertex_reach(const DirectedGraph& g) {
  int n = g.nv();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) r[v][v] = 1;
  for (const auto& e : g.edges) r[e.source][e.range] = 1;
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < n; ++i)
      if (r[i][t])
        for (int j = 0; j < n; ++j)
          if (r[t][j]) r[i][j] = 1;
  return r;
}

}  // namespace

std::vector<SimpleCycle> simple_cycles(const DirectedGraph& g) {
  std::vector<SimpleCycle> out;
  int n = g.nv();
  // each cycle reported once, rooted at its smallest vertex
  for (int root = 0; root < n; ++root) {
    SimpleCycle cur;
    std::vector<char> used(n, 0);
    std::function<void(int)> dfs = [&](int tip) {
      // extend at the source end: in-edges of the tip
      for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
        const auto& e = g.edges[ei];
        if (e.range != tip) continue;
        if (e.source == root) {
          SimpleCycle c = cur;
          c.edges.push_back(ei);
          c.vertices.push_back(root);
          std::rotate(c.vertices.begin(), c.vertices.end() - 1, c.vertices.end());
          out.push_back(std::move(c));
          continue;
        }
        if (e.source < root || used[e.source]) continue;
        used[e.source] = 1;
        cur.edges.push_back(ei);
        cur.vertices.push_back(e.source);
        dfs(e.source);
        cur.edges.pop_back();
        cur.vertices.pop_back();
        used[e.source] = 0;
      }
    };
    // vertices holds the visit order after r(edges[0]) = root
    cur.vertices.clear();
    dfs(root);
  }
  // fix vertex lists: rebuild from edges (r of first edge, then sources)
  for (auto& c : out) {
    c.vertices.clear();
    c.vertices.push_back(g.edges[c.edges[0]].range);
    for (size_t i = 0; i + 1 < c.edges.size(); ++i)
      c.vertices.push_back(g.edges[c.edges[i]].source);
  }
  return out;
}

std::vector<Tail> maximal_tails_bruteforce(const DirectedGraph& g) {
  int n = g.nv();
  auto reach = vertex_reach(g);
  auto cycles = simple_cycles(g);
  std::vector<Tail> out;
  for (long long mask = 1; mask < (1LL << n); ++mask) {
    auto in = [&](int v) { return (mask >> v) & 1; };
    bool ok = true;
    // (i) if v >= w in M then v in M: everything reachable from a member
    for (int w = 0; w < n && ok; ++w) {
      if (!in(w)) continue;
      for (int v = 0; v < n && ok; ++v)
        if (reach[w][v] && !in(v)) ok = false;
    }
    // (ii) members with finite positive in-degree have an in-edge from M
    for (int v = 0; v < n && ok; ++v) {
      if (!in(v)) continue;
      Card c = in_multiplicity(g, v);
      if (c.infinite || c.n == 0) continue;
      bool any = false;
      for (const auto& e : g.edges)
        if (e.range == v && in(e.source)) any = true;
      if (!any) ok = false;
    }
    // (iii) common lower bound inside M
    for (int v = 0; v < n && ok; ++v) {
      if (!in(v)) continue;
      for (int w = v; w < n && ok; ++w) {
        if (!in(w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u)
          if (in(u) && reach[u][v] && reach[u][w]) found = true;
        if (!found) ok = false;
      }
    }
    if (!ok) continue;
    Tail t;
    for (int v = 0; v < n; ++v)
      if (in(v)) t.members.push_back(v);
    // gamma: every simple cycle with vertices in M has an entrance in M; a
    // parallel copy of a cycle edge (multiplicity >= 2) is an entrance
    t.gamma = true;
    for (const auto& c : cycles) {
      bool inside = true;
      for (int v : c.vertices)
        if (!in(v)) inside = false;
      if (!inside) continue;
      bool entrance = false;
      for (size_t i = 0; i < c.edges.size() && !entrance; ++i) {
        const auto& ce = g.edges[c.edges[i]];
        if (ce.mult == kOmegaMult || ce.mult >= 2) entrance = true;
      }
      for (int ei = 0; ei < static_cast<int>(g.edges.size()) && !entrance; ++ei) {
        const auto& e = g.edges[ei];
        if (!in(e.source)) continue;
        bool on_cycle_range = false;
        for (int v : c.vertices)
          if (e.range == v) on_cycle_range = true;
        if (!on_cycle_range) continue;
        bool is_cycle_edge = false;
        for (int cei : c.edges)
          if (cei == ei) is_cycle_edge = true;
        if (!is_cycle_edge) entrance = true;
      }
      if (!entrance) {
        t.gamma = false;
        break;
      }
    }
    // unique least element without self-loops
    for (int v = 0; v < n; ++v) {
      if (!in(v)) continue;
      bool least = true, unique = true;
      for (int w = 0; w < n; ++w) {
        if (!in(w) || w == v) continue;
        if (!reach[v][w]) least = false;
        if (reach[w][v] && reach[v][w]) unique = false;  // a second least
      }
      bool self_loop = false;
      for (const auto& e : g.edges)
        if (e.source == v && e.range == v) self_loop = true;
      if (least && unique && !self_loop) {
        t.unique_least_no_loop = v;
        break;
      }
    }
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const Tail& a, const Tail& b) { return a.members < b.members; });
  return out;
}

namespace {

struct BoundaryRep {
  bool finite = false;
  int end = -1;                // finite reps are zero-length paths at `end`
  std::vector<PathSym> word;   // materialized prefix otherwise
};

BoundaryRep rep_of(const DirectedGraph& g, const PrimPoint& p, int len) {
  BoundaryRep r;
  switch (p.kind) {
    case PrimPoint::Kind::Breaking:
      r.finite = true;
      r.end = p.members[0];
      return r;
    case PrimPoint::Kind::Loop:
      r.word = loop_word(g, p.members, len);
      return r;
    case PrimPoint::Kind::Gamma: {
      for (const auto& t : maximal_tails(g)) {
        if (t.members != p.members || !t.gamma) continue;
        QuasiOrbitRep q = quasi_orbit_representative(g, t);
        if (q.is_vertex) {
          r.finite = true;
          r.end = q.vertex;
        } else {
          r.word = q.word.materialize(len);
        }
        return r;
      }
      throw domain_error("PointNotInSpectrum", "gamma tail not found");
    }
  }
  throw domain_error("PointNotInSpectrum", "bad point");
}

// Vertices visited by shifts of the representative.
std::vector<int> visited_vertices(const DirectedGraph& g, const BoundaryRep& r) {
  std::set<int> vs;
  if (r.finite) {
    vs.insert(r.end);
  } else {
    for (const auto& [e, copy] : r.word) vs.insert(g.edges[e].range);
    if (!r.word.empty()) vs.insert(g.edges[r.word.back().first].source);
  }
  return {vs.begin(), vs.end()};
}

// Forward reachability (walk steps source -> range) in at most `depth` steps.
std::vector<char> reach_within(const DirectedGraph& g, const std::vector<int>& from, int depth) {
  std::vector<char> in(g.nv(), 0);
  std::vector<int> frontier = from;
  for (int v : from) in[v] = 1;
  for (int step = 0; step < depth && !frontier.empty(); ++step) {
    std::vector<int> next;
    for (int v : frontier)
      for (const auto& e : g.edges)
        if (e.source == v && !in[e.range]) {
          in[e.range] = 1;
          next.push_back(e.range);
        }
    frontier = std::move(next);
  }
  return in;
}

}  // namespace

bool specializes_cylsim(const DirectedGraph& g, const PrimPoint& p1, const PrimPoint& p2,
                        int depth) {
  if (p1.kind == PrimPoint::Kind::Loop && p2.kind == PrimPoint::Kind::Loop &&
      p1.members == p2.members)
    return p1.fiber == p2.fiber;
  BoundaryRep src = rep_of(g, p1, 2 * depth + 2);
  std::vector<char> reach = reach_within(g, visited_vertices(g, src), depth);

  // finite-path targets: breaking vertices and unique-least tails
  BoundaryRep tgt = rep_of(g, p2, depth);
  if (tgt.finite) {
    int u = tgt.end;
    if (src.finite && src.end == u) return true;
    // infinitely many distinct initial edges continuing into the orbit
    Card c;
    for (const auto& e : g.edges) {
      if (e.range != u || !reach[e.source]) continue;
      if (e.mult == kOmegaMult)
        c.infinite = true;
      else
        c.n += e.mult;
    }
    return c.infinite;
  }

  // infinite targets: some orbit element starts with the depth-prefix
  const std::vector<PathSym>& P = tgt.word;  // length == depth
  int m = static_cast<int>(P.size());
  if (m == 0) return true;
  // wholly inside the prepended part: a path from a visited vertex to s(P)
  int sP = g.edges[P[m - 1].first].source;
  if (reach[sP]) return true;
  // split: a prefix of P prepended to a shift of the source word
  if (!src.finite) {
    int W = static_cast<int>(src.word.size());
    for (int j = 0; j < m; ++j)
      for (int n = 0; n + (m - j) <= W && n <= 2 * depth; ++n) {
        bool match = true;
        for (int i = 0; i < m - j && match; ++i)
          if (src.word[n + i] != P[j + i]) match = false;
        if (match) return true;
      }
  }
  return false;
}

bool periodic_path_isolated(const DirectedGraph& g, const std::vector<int>& cycle_vertices,
                            const std::vector<int>& cycle_edges, int depth) {
  int period = static_cast<int>(cycle_edges.size());
  // A neighbour y != x inside a cylinder Z(x(0..m)) is a continuation that
  // diverges from the cycle word at some position and still attaches a
  // shifted copy of x, i.e. its divergence source is reachable from the
  // cycle. Positions repeat with the period, so scanning one period decides
  // every cylinder at once.
  std::vector<char> cycle_reach = reach_within(g, cycle_vertices, depth);
  for (int pos = 0; pos < period; ++pos) {
    int tip = g.edges[cycle_edges[pos]].range;
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
      const auto& e = g.edges[ei];
      if (e.range != tip || !cycle_reach[e.source]) continue;
      bool divergent = ei != cycle_edges[pos] || e.mult == kOmegaMult || e.mult >= 2;
      if (divergent) return false;
    }
  }
  return true;
}

}  // namespace primtop::ref
