#include "primtop/digraph.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <set>

#include "primtop/errors.hpp"
#include "primtop/parallel.hpp"

namespace primtop {

int DirectedGraph::vertex(const std::string& name) const {
  for (int i = 0; i < nv(); ++i)
    if (vnames[i] == name) return i;
  throw parse_error("unknown vertex '" + name + "'");
}

void DirectedGraph::validate() const {
  std::set<std::string> vs(vnames.begin(), vnames.end());
  if (vs.size() != vnames.size()) throw parse_error("duplicate vertex names");
  std::set<std::string> es;
  for (const auto& e : edges) {
    if (!es.insert(e.name).second) throw parse_error("duplicate edge name '" + e.name + "'");
    if (e.source < 0 || e.source >= nv() || e.range < 0 || e.range >= nv())
      throw parse_error("edge '" + e.name + "' references unknown vertex");
    if (e.mult != kOmegaMult && e.mult < 1)
      throw parse_error("edge '" + e.name + "' has non-positive multiplicity");
  }
}

Card in_multiplicity(const DirectedGraph& g, int v) {
  std::vector<char> all(g.nv(), 1);
  return in_multiplicity_from(g, v, all);
}

Card in_multiplicity_from(const DirectedGraph& g, int v, const std::vector<char>& from) {
  Card c;
  for (const auto& e : g.edges) {
    if (e.range != v || !from[e.source]) continue;
    if (e.mult == kOmegaMult)
      c.infinite = true;
    else
      c.n += e.mult;
  }
  return c;
}

bool Components::has_internal_edge(const DirectedGraph& g, int c) const {
  for (const auto& e : g.edges)
    if (comp_of[e.source] == c && comp_of[e.range] == c) return true;
  return false;
}

Components components(const DirectedGraph& g) {
  int n = g.nv();
  std::vector<std::vector<int>> out_adj(n);
  for (const auto& e : g.edges) out_adj[e.source].push_back(e.range);
  // Tarjan
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<int> comp_of(n, -1);
  int counter = 0, ncomp = 0;
  std::function<void(int)> dfs = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : out_adj[v]) {
      if (index[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp_of[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) dfs(v);

  Components c;
  c.comp_of = comp_of;
  c.members.assign(ncomp, {});
  for (int v = 0; v < n; ++v) c.members[comp_of[v]].push_back(v);
  for (auto& m : c.members) std::sort(m.begin(), m.end());
  // reachability between components (walk direction source -> range)
  c.reach.assign(ncomp, std::vector<char>(ncomp, 0));
  for (int i = 0; i < ncomp; ++i) c.reach[i][i] = 1;
  for (const auto& e : g.edges) c.reach[comp_of[e.source]][comp_of[e.range]] = 1;
  for (int k = 0; k < ncomp; ++k)
    for (int i = 0; i < ncomp; ++i)
      if (c.reach[i][k])
        for (int j = 0; j < ncomp; ++j)
          if (c.reach[k][j]) c.reach[i][j] = 1;
  return c;
}

std::vector<int> singular_vertices(const DirectedGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.nv(); ++v) {
    Card c = in_multiplicity(g, v);
    if (c.infinite || c.n == 0) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> primitive_loops(const DirectedGraph& g) {
  Components c = components(g);
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < c.members.size(); ++i) {
    const auto& mem = c.members[i];
    std::vector<char> in_set(g.nv(), 0);
    for (int v : mem) in_set[v] = 1;
    bool ok = true;
    for (int v : mem) {
      Card card = in_multiplicity_from(g, v, in_set);
      if (card.infinite || card.n != 1) {
        ok = false;
        break;
      }
    }
    if (ok && !c.has_internal_edge(g, static_cast<int>(i))) ok = false;  // no cycle at all
    if (ok) out.push_back(mem);
  }
  return out;
}

std::vector<char> up_closure(const DirectedGraph& g, const std::vector<int>& seed) {
  std::vector<char> in(g.nv(), 0);
  std::vector<int> todo = seed;
  for (int v : seed) in[v] = 1;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (const auto& e : g.edges)
      if (e.source == v && !in[e.range]) {
        in[e.range] = 1;
        todo.push_back(e.range);
      }
  }
  return in;
}

namespace {

bool has_self_loop(const DirectedGraph& g, int v) {
  for (const auto& e : g.edges)
    if (e.source == v && e.range == v) return true;
  return false;
}

// A tail is non-gamma iff some simple cycle inside it has no entrance from
// it. Every vertex of such a cycle receives exactly one edge from the tail,
// of multiplicity one, so these cycles are exactly the cycles of the partial
// map "unique in-tail predecessor".
bool tail_is_gamma(const DirectedGraph& g, const std::vector<char>& in_tail) {
  int n = g.nv();
  std::vector<int> pred(n, -1);  // unique predecessor, -2 = not unique/absent
  for (int v = 0; v < n; ++v) {
    if (!in_tail[v]) {
      pred[v] = -2;
      continue;
    }
    long long count = 0;
    bool inf = false;
    int src = -1;
    for (const auto& e : g.edges) {
      if (e.range != v || !in_tail[e.source]) continue;
      if (e.mult == kOmegaMult)
        inf = true;
      else
        count += e.mult;
      src = e.source;
    }
    pred[v] = (!inf && count == 1) ? src : -2;
  }
  // cycle detection in the partial functional graph
  std::vector<int> state(n, 0);  // 0 unvisited, 1 in progress, 2 done
  for (int v = 0; v < n; ++v) {
    if (state[v] != 0 || pred[v] < 0) continue;
    int u = v;
    std::vector<int> chain;
    while (u >= 0 && pred[u] >= 0 && state[u] == 0) {
      state[u] = 1;
      chain.push_back(u);
      u = pred[u];
      if (u >= 0 && state[u] == 1) return false;  // closed a cycle
    }
    for (int w : chain) state[w] = 2;
  }
  return true;
}

}  // namespace

std::vector<Tail> maximal_tails(const DirectedGraph& g) {
  Components c = components(g);
  int ncomp = static_cast<int>(c.members.size());
  std::vector<char> qualifies(ncomp, 0);
  for (int i = 0; i < ncomp; ++i) {
    if (c.has_internal_edge(g, i)) {
      qualifies[i] = 1;
    } else if (c.members[i].size() == 1) {
      Card card = in_multiplicity(g, c.members[i][0]);
      if (card.infinite || card.n == 0) qualifies[i] = 1;
    }
  }
  std::vector<Tail> out(ncomp);
#pragma omp parallel for num_threads(thread_limit()) schedule(dynamic)
  for (int i = 0; i < ncomp; ++i) {
    if (!qualifies[i]) continue;
    std::vector<char> in = up_closure(g, c.members[i]);
    Tail t;
    for (int v = 0; v < g.nv(); ++v)
      if (in[v]) t.members.push_back(v);
    t.gamma = tail_is_gamma(g, in);
    t.least_component = i;
    if (c.members[i].size() == 1 && !has_self_loop(g, c.members[i][0]))
      t.unique_least_no_loop = c.members[i][0];
    out[i] = std::move(t);
  }
  std::vector<Tail> tails;
  for (int i = 0; i < ncomp; ++i)
    if (qualifies[i]) tails.push_back(std::move(out[i]));
  std::sort(tails.begin(), tails.end(),
            [](const Tail& a, const Tail& b) { return a.members < b.members; });
  return tails;
}

std::vector<int> breaking_vertices(const DirectedGraph& g) {
  std::vector<int> out;
  for (int v : singular_vertices(g)) {
    std::vector<char> up = up_closure(g, {v});
    Card c = in_multiplicity_from(g, v, up);
    if (!c.infinite && c.n > 0) out.push_back(v);
  }
  return out;
}

PrimSpectrum prim_spectrum(const DirectedGraph& g) {
  PrimSpectrum s;
  for (auto& t : maximal_tails(g))
    if (t.gamma) s.gammas.push_back(std::move(t));
  s.breakings = breaking_vertices(g);
  s.loops = primitive_loops(g);
  return s;
}

namespace {

// name-lexicographic comparison of symbol words, shorter first
bool word_less(const DirectedGraph& g, const std::vector<PathSym>& a,
               const std::vector<PathSym>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    const auto& ea = g.edges[a[i].first];
    const auto& eb = g.edges[b[i].first];
    if (ea.name != eb.name) return ea.name < eb.name;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return false;
}

// smallest simple return cycle at base within the component, stored order
std::vector<PathSym> smallest_simple_cycle(const DirectedGraph& g, const std::vector<char>& in_set,
                                           int base) {
  std::vector<PathSym> best;
  std::vector<PathSym> cur;
  std::vector<char> used(g.nv(), 0);
  std::function<void(int)> dfs = [&](int tip) {
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
      const auto& e = g.edges[ei];
      if (e.range != tip || !in_set[e.source]) continue;
      if (e.source == base) {
        cur.push_back({ei, 1});
        if (best.empty() || word_less(g, cur, best)) best = cur;
        cur.pop_back();
        continue;
      }
      if (used[e.source]) continue;
      used[e.source] = 1;
      cur.push_back({ei, 1});
      dfs(e.source);
      cur.pop_back();
      used[e.source] = 0;
    }
  };
  used[base] = 1;
  dfs(base);
  return best;
}

// shortest stored path with r = from, s = to (walk to -> from), inside the set
std::vector<PathSym> shortest_connector(const DirectedGraph& g, const std::vector<char>& in_set,
                                        int from, int to) {
  std::vector<int> prev_edge(g.nv(), -1), prev_vertex(g.nv(), -1);
  std::vector<char> seen(g.nv(), 0);
  std::vector<int> frontier{from};
  seen[from] = 1;
  while (!frontier.empty() && !seen[to]) {
    std::vector<int> next;
    for (int v : frontier)
      for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
        const auto& e = g.edges[ei];
        if (e.range != v || !in_set[e.source] || seen[e.source]) continue;
        seen[e.source] = 1;
        prev_edge[e.source] = ei;
        prev_vertex[e.source] = v;
        next.push_back(e.source);
      }
    frontier = std::move(next);
  }
  std::vector<PathSym> out;
  if (!seen[to]) throw domain_error("Disconnected", "no connector inside the component");
  int at = to;
  while (at != from) {
    out.push_back({prev_edge[at], 1});
    at = prev_vertex[at];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<PathSym> concat(const std::vector<PathSym>& a, const std::vector<PathSym>& b) {
  std::vector<PathSym> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::vector<PathSym> AperiodicWordSpec::materialize(int len) const {
  std::vector<PathSym> out;
  for (int block = 0; static_cast<int>(out.size()) < len; ++block) {
    bool bit = __builtin_parity(static_cast<unsigned>(block));
    const auto& cyc = bit ? cycle_b : cycle_a;
    out.insert(out.end(), cyc.begin(), cyc.end());
  }
  out.resize(len);
  return out;
}

QuasiOrbitRep quasi_orbit_representative(const DirectedGraph& g, const Tail& tail) {
  if (!tail.gamma)
    throw domain_error("NonGammaTail", "quasi-orbit representative requires a gamma tail");
  QuasiOrbitRep rep;
  if (tail.unique_least_no_loop) {
    rep.is_vertex = true;
    rep.vertex = *tail.unique_least_no_loop;
    return rep;
  }
  Components c = components(g);
  const auto& least = c.members[tail.least_component];
  std::vector<char> in_comp(g.nv(), 0);
  for (int v : least) in_comp[v] = 1;
  int base = *std::min_element(least.begin(), least.end(), [&](int a, int b) {
    return g.vnames[a] < g.vnames[b];
  });
  AperiodicWordSpec w;
  w.base = base;
  w.cycle_a = smallest_simple_cycle(g, in_comp, base);
  if (w.cycle_a.empty())
    throw domain_error("NoAperiodicWord", "least component carries no cycle");
  // second cycle: detour through the lexicographically smallest entrance of
  // the first cycle (it exists since the tail is gamma, and its source stays
  // in the least component)
  std::vector<PathSym> best_b;
  for (size_t j = 0; j < w.cycle_a.size(); ++j) {
    int at = g.edges[w.cycle_a[j].first].range;
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
      const auto& e = g.edges[ei];
      if (e.range != at || !in_comp[e.source]) continue;
      int copy = 1;
      if (ei == w.cycle_a[j].first) {
        if (e.mult != kOmegaMult && e.mult < 2) continue;  // no parallel copy
        copy = 2;
      }
      std::vector<PathSym> b(w.cycle_a.begin(), w.cycle_a.begin() + j);
      b.push_back({ei, copy});
      auto back = shortest_connector(g, in_comp, e.source, base);
      b.insert(b.end(), back.begin(), back.end());
      if (concat(w.cycle_a, b) == concat(b, w.cycle_a)) continue;
      if (best_b.empty() || word_less(g, b, best_b)) best_b = b;
    }
  }
  if (best_b.empty())
    throw domain_error("NoAperiodicWord",
                       "could not build an aperiodic word for the tail (not gamma?)");
  w.cycle_b = best_b;
  rep.word = w;
  return rep;
}

std::vector<PathSym> loop_word(const DirectedGraph& g, const std::vector<int>& loop, int len) {
  std::vector<char> in_set(g.nv(), 0);
  for (int v : loop) in_set[v] = 1;
  int base = *std::min_element(loop.begin(), loop.end(),
                               [&](int a, int b) { return g.vnames[a] < g.vnames[b]; });
  std::vector<PathSym> cycle;
  int at = base;
  do {
    int found = -1;
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei)
      if (g.edges[ei].range == at && in_set[g.edges[ei].source]) {
        found = ei;
        break;
      }
    if (found < 0) throw domain_error("BadLoop", "loop vertex without internal in-edge");
    cycle.push_back({found, 1});
    at = g.edges[found].source;
  } while (at != base);
  std::vector<PathSym> out;
  while (static_cast<int>(out.size()) < len) out.insert(out.end(), cycle.begin(), cycle.end());
  out.resize(len);
  return out;
}

PrimPoint PrimPoint::gamma(std::vector<int> tail) {
  PrimPoint p;
  p.kind = Kind::Gamma;
  std::sort(tail.begin(), tail.end());
  p.members = std::move(tail);
  return p;
}

PrimPoint PrimPoint::breaking(int v) {
  PrimPoint p;
  p.kind = Kind::Breaking;
  p.members = {v};
  return p;
}

PrimPoint PrimPoint::loop(std::vector<int> l, RationalAngle w) {
  PrimPoint p;
  p.kind = Kind::Loop;
  std::sort(l.begin(), l.end());
  p.members = std::move(l);
  p.fiber = w;
  return p;
}

bool PrimPoint::operator<(const PrimPoint& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (members != o.members) return members < o.members;
  if (kind == Kind::Loop) return fiber < o.fiber;
  return false;
}

namespace {

struct SpectrumIndex {
  PrimSpectrum spec;
  std::vector<Tail> all_tails;

  const Tail* find_gamma(const std::vector<int>& members) const {
    for (const auto& t : spec.gammas)
      if (t.members == members) return &t;
    return nullptr;
  }
  bool is_breaking(int v) const {
    return std::find(spec.breakings.begin(), spec.breakings.end(), v) != spec.breakings.end();
  }
  bool is_loop(const std::vector<int>& l) const {
    return std::find(spec.loops.begin(), spec.loops.end(), l) != spec.loops.end();
  }
};

SpectrumIndex index_spectrum(const DirectedGraph& g) {
  SpectrumIndex idx;
  idx.spec = prim_spectrum(g);
  idx.all_tails = maximal_tails(g);
  return idx;
}

void check_point(const SpectrumIndex& idx, const PrimPoint& p) {
  switch (p.kind) {
    case PrimPoint::Kind::Gamma:
      if (!idx.find_gamma(p.members))
        throw domain_error("PointNotInSpectrum", "gamma point is not in the spectrum");
      break;
    case PrimPoint::Kind::Breaking:
      if (!idx.is_breaking(p.members[0]))
        throw domain_error("PointNotInSpectrum", "vertex is not breaking");
      break;
    case PrimPoint::Kind::Loop:
      if (!idx.is_loop(p.members))
        throw domain_error("PointNotInSpectrum", "not a primitive loop");
      break;
  }
}

// Vertex set M1 of the source point: its tail, or the up-closure of the
// loop / breaking vertex.
std::vector<char> source_tail_set(const DirectedGraph& g, const PrimPoint& p) {
  if (p.kind == PrimPoint::Kind::Gamma) {
    std::vector<char> in(g.nv(), 0);
    for (int v : p.members) in[v] = 1;
    return in;
  }
  return up_closure(g, p.members);
}

bool specializes_indexed(const DirectedGraph& g, const SpectrumIndex& idx, const PrimPoint& p1,
                         const PrimPoint& p2) {
  std::vector<char> m1 = source_tail_set(g, p1);
  switch (p2.kind) {
    case PrimPoint::Kind::Loop: {
      if (p1.kind == PrimPoint::Kind::Loop && p1.members == p2.members)
        return p1.fiber == p2.fiber;
      for (int v : p2.members)
        if (!m1[v]) return false;
      return true;
    }
    case PrimPoint::Kind::Breaking: {
      if (p1 == p2) return true;
      int v = p2.members[0];
      if (!m1[v]) return false;
      return in_multiplicity_from(g, v, m1).infinite;
    }
    case PrimPoint::Kind::Gamma: {
      const Tail* t2 = idx.find_gamma(p2.members);
      if (t2->unique_least_no_loop) {
        if (p1 == p2) return true;
        int u = *t2->unique_least_no_loop;
        if (!m1[u]) return false;
        return in_multiplicity_from(g, u, m1).infinite;
      }
      for (int v : p2.members)
        if (!m1[v]) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool specializes(const DirectedGraph& g, const PrimPoint& p1, const PrimPoint& p2) {
  SpectrumIndex idx = index_spectrum(g);
  check_point(idx, p1);
  check_point(idx, p2);
  return specializes_indexed(g, idx, p1, p2);
}

ClosedPrimSet closure(const DirectedGraph& g, const std::vector<PrimPoint>& seeds,
                      const std::map<std::vector<int>, CircleSet>& fiber_seeds) {
  SpectrumIndex idx = index_spectrum(g);
  std::set<PrimPoint> finite;
  std::map<std::vector<int>, CircleSet> fibers;
  for (const auto& s : seeds) {
    check_point(idx, s);
    if (s.kind == PrimPoint::Kind::Loop)
      fibers[s.members] = circle_union(fibers.count(s.members) ? fibers[s.members]
                                                               : CircleSet::empty_set(),
                                       CircleSet::point(s.fiber));
    else
      finite.insert(s);
  }
  for (const auto& [l, c] : fiber_seeds) {
    if (!idx.is_loop(l)) throw domain_error("PointNotInSpectrum", "fiber seed is not a loop");
    fibers[l] = circle_union(fibers.count(l) ? fibers[l] : CircleSet::empty_set(), c);
  }

  // candidate targets
  std::vector<PrimPoint> fin_candidates;
  for (const auto& t : idx.spec.gammas) fin_candidates.push_back(PrimPoint::gamma(t.members));
  for (int v : idx.spec.breakings) fin_candidates.push_back(PrimPoint::breaking(v));

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<PrimPoint> sources(finite.begin(), finite.end());
    for (const auto& [l, c] : fibers)
      if (!c.is_empty()) sources.push_back(PrimPoint::loop(l, RationalAngle()));
    for (const auto& src : sources) {
      for (const auto& tgt : fin_candidates) {
        if (finite.count(tgt)) continue;
        if (specializes_indexed(g, idx, src, tgt)) {
          finite.insert(tgt);
          changed = true;
        }
      }
      for (const auto& l : idx.spec.loops) {
        if (src.kind == PrimPoint::Kind::Loop && src.members == l) continue;
        if (fibers.count(l) && fibers[l].is_full()) continue;
        if (specializes_indexed(g, idx, src, PrimPoint::loop(l, RationalAngle()))) {
          fibers[l] = CircleSet::full_circle();
          changed = true;
        }
      }
    }
  }
  ClosedPrimSet out;
  out.finite_points.assign(finite.begin(), finite.end());
  for (auto& [l, c] : fibers)
    if (!c.is_empty()) out.loop_fibers[l] = c;
  return out;
}

bool is_row_finite_no_sources(const DirectedGraph& g, std::string* why) {
  for (int v = 0; v < g.nv(); ++v) {
    Card c = in_multiplicity(g, v);
    if (c.infinite) {
      if (why) *why = "NotRowFinite";
      return false;
    }
    if (c.n == 0) {
      if (why) *why = "HasSources";
      return false;
    }
  }
  return true;
}

namespace {

void require_row_finite_no_sources(const DirectedGraph& g) {
  std::string why;
  if (!is_row_finite_no_sources(g, &why))
    throw domain_error(why, "operation requires a row-finite graph without sources");
}

bool is_hereditary(const DirectedGraph& g, const std::vector<char>& in) {
  // sources of edges into the set must lie in the set
  for (const auto& e : g.edges)
    if (in[e.range] && !in[e.source]) return false;
  return true;
}

bool is_saturated(const DirectedGraph& g, const std::vector<char>& in) {
  for (int v = 0; v < g.nv(); ++v) {
    if (in[v]) continue;
    bool all_in = true, any = false;
    for (const auto& e : g.edges)
      if (e.range == v) {
        any = true;
        if (!in[e.source]) all_in = false;
      }
    if (any && all_in) return false;
  }
  return true;
}

}  // namespace

std::vector<int> saturate(const DirectedGraph& g, const std::vector<int>& hereditary) {
  require_row_finite_no_sources(g);
  std::vector<char> in(g.nv(), 0);
  for (int v : hereditary) in[v] = 1;
  if (!is_hereditary(g, in))
    throw domain_error("NotHereditary", "input set is not hereditary");
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.nv(); ++v) {
      if (in[v]) continue;
      bool all_in = true, any = false;
      for (const auto& e : g.edges)
        if (e.range == v) {
          any = true;
          if (!in[e.source]) all_in = false;
        }
      if (any && all_in) {
        in[v] = 1;
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < g.nv(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> hereditary_saturated_sets(const DirectedGraph& g) {
  require_row_finite_no_sources(g);
  int n = g.nv();
  if (n > 24) throw domain_error("TooLarge", "vertex set too large for subset enumeration");
  long long total = 1LL << n;
  std::vector<std::vector<std::vector<int>>> per_thread(thread_limit());
#pragma omp parallel num_threads(thread_limit())
  {
#pragma omp for schedule(static)
    for (long long mask = 0; mask < total; ++mask) {
      std::vector<char> in(n, 0);
      for (int v = 0; v < n; ++v)
        if (mask & (1LL << v)) in[v] = 1;
      if (!is_hereditary(g, in) || !is_saturated(g, in)) continue;
      std::vector<int> set;
      for (int v = 0; v < n; ++v)
        if (in[v]) set.push_back(v);
      int tid = omp_get_thread_num();
      per_thread[tid].push_back(std::move(set));
    }
  }
  std::vector<std::vector<int>> out;
  for (auto& chunk : per_thread)
    for (auto& s : chunk) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace primtop
