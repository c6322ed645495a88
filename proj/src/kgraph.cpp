#include "primtop/kgraph.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <set>

#include "primtop/digraph.hpp"
#include "primtop/errors.hpp"
#include "primtop/parallel.hpp"

namespace primtop {

Degree deg_zero(int k) { return Degree(k, 0); }

bool deg_leq(const Degree& a, const Degree& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Degree deg_add(const Degree& a, const Degree& b) {
  Degree out(a);
  for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Degree deg_sub(const Degree& a, const Degree& b) {
  Degree out(a);
  for (size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Degree deg_min(const Degree& a, const Degree& b) {
  Degree out(a);
  for (size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

Degree deg_max(const Degree& a, const Degree& b) {
  Degree out(a);
  for (size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

int deg_total(const Degree& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

int KGraphSkeleton::vertex(const std::string& name) const {
  for (int i = 0; i < nv(); ++i)
    if (vnames[i] == name) return i;
  throw parse_error("unknown vertex '" + name + "'");
}

int KGraphSkeleton::edge(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].name == name) return i;
  throw parse_error("unknown edge '" + name + "'");
}

namespace {

std::string cell_str(const KGraphSkeleton& sk, int a, int b) {
  return "(" + sk.edges[a].name + "," + sk.edges[b].name + ")";
}

// All normal forms reachable from `word` by inversion-fixing square
// applications; used for the cube check where confluence is the condition.
void reduce_all_orders(const KGraphSkeleton& sk, std::vector<int> word,
                       std::set<std::vector<int>>& normal) {
  bool any = false;
  for (size_t p = 0; p + 1 < word.size(); ++p) {
    int x = word[p], y = word[p + 1];
    if (sk.edges[x].color > sk.edges[y].color) {
      any = true;
      auto it = sk.inv.find({x, y});
      if (it == sk.inv.end())
        throw domain_error("InvalidFactorization",
                           "missing square for " + cell_str(sk, x, y));
      auto next = word;
      next[p] = it->second.first;
      next[p + 1] = it->second.second;
      reduce_all_orders(sk, std::move(next), normal);
    }
  }
  if (!any) normal.insert(word);
}

}  // namespace

void validate_kgraph(KGraphSkeleton& sk) {
  if (sk.k < 1) throw parse_error("rank must be >= 1");
  std::set<std::string> names;
  for (const auto& v : sk.vnames)
    if (!names.insert(v).second) throw parse_error("duplicate vertex name '" + v + "'");
  names.clear();
  for (const auto& e : sk.edges) {
    if (!names.insert(e.name).second) throw parse_error("duplicate edge name '" + e.name + "'");
    if (e.color < 1 || e.color > sk.k) throw parse_error("edge '" + e.name + "' has bad color");
    if (e.source < 0 || e.source >= sk.nv() || e.range < 0 || e.range >= sk.nv())
      throw parse_error("edge '" + e.name + "' references unknown vertex");
  }
  // no sources (finiteness is automatic for a finite presentation)
  for (int v = 0; v < sk.nv(); ++v)
    for (int c = 1; c <= sk.k; ++c) {
      bool any = false;
      for (const auto& e : sk.edges)
        if (e.range == v && e.color == c) any = true;
      if (!any)
        throw domain_error("HasSources", "vertex '" + sk.vnames[v] + "' receives no color-" +
                                             std::to_string(c) + " edge");
    }

  sk.fwd.clear();
  sk.inv.clear();
  for (const auto& cell : sk.squares) {
    const auto& fa = sk.edges[cell.first_a];
    const auto& fb = sk.edges[cell.first_b];
    const auto& sa = sk.edges[cell.second_a];
    const auto& sb = sk.edges[cell.second_b];
    if (!(fa.color < fb.color) || sa.color != fb.color || sb.color != fa.color)
      throw domain_error("InvalidFactorization",
                         "square cell " + cell_str(sk, cell.first_a, cell.first_b) +
                             " has inconsistent colors");
    if (fa.source != fb.range)
      throw domain_error("InvalidFactorization",
                         "square cell " + cell_str(sk, cell.first_a, cell.first_b) +
                             " is not composable");
    if (sa.source != sb.range || sa.range != fa.range || sb.source != fb.source)
      throw domain_error("InvalidFactorization",
                         "square cell " + cell_str(sk, cell.first_a, cell.first_b) +
                             " has mismatched endpoints");
    if (!sk.fwd.emplace(std::make_pair(cell.first_a, cell.first_b),
                        std::make_pair(cell.second_a, cell.second_b))
             .second)
      throw domain_error("InvalidFactorization",
                         "duplicate square for " + cell_str(sk, cell.first_a, cell.first_b));
    if (!sk.inv.emplace(std::make_pair(cell.second_a, cell.second_b),
                        std::make_pair(cell.first_a, cell.first_b))
             .second)
      throw domain_error("InvalidFactorization",
                         "square map is not injective at " +
                             cell_str(sk, cell.second_a, cell.second_b));
  }
  // totality on composable pairs of distinct colors, both orders
  for (int a = 0; a < static_cast<int>(sk.edges.size()); ++a)
    for (int b = 0; b < static_cast<int>(sk.edges.size()); ++b) {
      if (sk.edges[a].source != sk.edges[b].range) continue;
      if (sk.edges[a].color < sk.edges[b].color) {
        if (!sk.fwd.count({a, b}))
          throw domain_error("InvalidFactorization", "no square for " + cell_str(sk, a, b));
      } else if (sk.edges[a].color > sk.edges[b].color) {
        if (!sk.inv.count({a, b}))
          throw domain_error("InvalidFactorization",
                             "square map is not onto: nothing factors through " +
                                 cell_str(sk, a, b));
      }
    }

  // cube condition over composable triples of pairwise distinct colors
  if (sk.k >= 3) {
    int ne = static_cast<int>(sk.edges.size());
    std::vector<std::vector<int>> triples;
    for (int a = 0; a < ne; ++a)
      for (int b = 0; b < ne; ++b) {
        if (sk.edges[a].source != sk.edges[b].range) continue;
        if (sk.edges[a].color == sk.edges[b].color) continue;
        for (int c = 0; c < ne; ++c) {
          if (sk.edges[b].source != sk.edges[c].range) continue;
          if (sk.edges[c].color == sk.edges[a].color || sk.edges[c].color == sk.edges[b].color)
            continue;
          triples.push_back({a, b, c});
        }
      }
    std::string failure;
#pragma omp parallel for num_threads(thread_limit()) schedule(dynamic)
    for (size_t i = 0; i < triples.size(); ++i) {
      std::string local;
      try {
        std::set<std::vector<int>> normal;
        reduce_all_orders(sk, triples[i], normal);
        if (normal.size() != 1)
          local = "triple " + sk.edges[triples[i][0]].name + "." + sk.edges[triples[i][1]].name +
                  "." + sk.edges[triples[i][2]].name + " does not normalize uniquely";
      } catch (const std::exception& ex) {
        local = ex.what();
      }
      if (!local.empty()) {
#pragma omp critical
        failure = local;
      }
    }
    if (!failure.empty()) throw domain_error("CubeViolation", failure);
  }
  sk.validated = true;
}

bool KPath::operator<(const KPath& o) const {
  if (deg != o.deg) return deg < o.deg;
  if (range_v != o.range_v) return range_v < o.range_v;
  return edges < o.edges;
}

KPath vertex_path(const KGraphSkeleton& sk, int v) {
  KPath p;
  p.range_v = p.source_v = v;
  p.deg = deg_zero(sk.k);
  return p;
}

namespace {

void require_validated(const KGraphSkeleton& sk) {
  if (!sk.validated) throw domain_error("NotValidated", "skeleton must be validated first");
}

std::vector<int> normalize_word(const KGraphSkeleton& sk, std::vector<int> word) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t p = 0; p + 1 < word.size(); ++p) {
      int x = word[p], y = word[p + 1];
      if (sk.edges[x].color > sk.edges[y].color) {
        auto it = sk.inv.find({x, y});
        if (it == sk.inv.end())
          throw domain_error("InvalidFactorization", "missing square for " + cell_str(sk, x, y));
        word[p] = it->second.first;
        word[p + 1] = it->second.second;
        changed = true;
      }
    }
  }
  return word;
}

}  // namespace

KPath path_from_edges(const KGraphSkeleton& sk, const std::vector<int>& seq) {
  require_validated(sk);
  KPath p;
  p.deg = deg_zero(sk.k);
  if (seq.empty()) throw domain_error("EmptyPath", "vertex paths need an explicit vertex");
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (sk.edges[seq[i]].source != sk.edges[seq[i + 1]].range)
      throw domain_error("EndpointMismatch", "edge sequence is not composable");
  p.range_v = sk.edges[seq.front()].range;
  p.source_v = sk.edges[seq.back()].source;
  for (int e : seq) p.deg[sk.edges[e].color - 1]++;
  p.edges = normalize_word(sk, seq);
  return p;
}

KPath compose(const KGraphSkeleton& sk, const KPath& a, const KPath& b) {
  require_validated(sk);
  if (a.source_v != b.range_v)
    throw domain_error("EndpointMismatch", "compose: source/range mismatch");
  if (a.is_vertex()) return b;
  if (b.is_vertex()) return a;
  std::vector<int> seq = a.edges;
  seq.insert(seq.end(), b.edges.begin(), b.edges.end());
  return path_from_edges(sk, seq);
}

namespace {

// Factors p = e.rest with e of the given color.
std::pair<int, KPath> peel_front(const KGraphSkeleton& sk, const KPath& p, int color) {
  int pos = 0;
  while (pos < static_cast<int>(p.edges.size()) && sk.edges[p.edges[pos]].color != color) ++pos;
  if (pos == static_cast<int>(p.edges.size()))
    throw domain_error("DegreeOutOfRange", "no edge of requested color to peel");
  std::vector<int> word = p.edges;
  for (int t = pos; t > 0; --t) {
    auto it = sk.fwd.find({word[t - 1], word[t]});
    if (it == sk.fwd.end())
      throw domain_error("InvalidFactorization",
                         "missing square for " + cell_str(sk, word[t - 1], word[t]));
    word[t - 1] = it->second.first;
    word[t] = it->second.second;
  }
  int front = word[0];
  KPath rest;
  if (word.size() == 1)
    rest = vertex_path(sk, sk.edges[front].source);
  else
    rest = path_from_edges(sk, std::vector<int>(word.begin() + 1, word.end()));
  return {front, rest};
}

// Splits p into (first, rest) with deg(first) = target.
std::pair<KPath, KPath> take_front(const KGraphSkeleton& sk, const KPath& p,
                                   const Degree& target) {
  std::vector<int> collected;
  KPath cur = p;
  for (int c = 1; c <= sk.k; ++c)
    for (int i = 0; i < target[c - 1]; ++i) {
      auto [e, rest] = peel_front(sk, cur, c);
      collected.push_back(e);
      cur = rest;
    }
  KPath first =
      collected.empty() ? vertex_path(sk, p.range_v) : path_from_edges(sk, collected);
  return {first, cur};
}

}  // namespace

KPath segment(const KGraphSkeleton& sk, const KPath& p, const Degree& from, const Degree& to) {
  require_validated(sk);
  Degree zero = deg_zero(sk.k);
  if (!deg_leq(zero, from) || !deg_leq(from, to) || !deg_leq(to, p.deg))
    throw domain_error("DegreeOutOfRange", "segment needs 0 <= from <= to <= deg");
  auto [skip, rest] = take_front(sk, p, from);
  auto [seg, tail] = take_front(sk, rest, deg_sub(to, from));
  (void)skip;
  (void)tail;
  return seg;
}

int path_vertex_at(const KGraphSkeleton& sk, const KPath& p, const Degree& m) {
  return segment(sk, p, m, m).range_v;
}

std::vector<KTail> ktails(const KGraphSkeleton& sk) {
  require_validated(sk);
  int n = sk.nv();
  if (n > 24) throw domain_error("TooLarge", "vertex set too large for subset enumeration");
  // forward reachability (walk direction source -> range over all colors)
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) reach[v][v] = 1;
  for (const auto& e : sk.edges) reach[e.source][e.range] = 1;
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < n; ++i)
      if (reach[i][t])
        for (int j = 0; j < n; ++j)
          if (reach[t][j]) reach[i][j] = 1;

  long long total = 1LL << n;
  std::vector<std::vector<KTail>> per_thread(thread_limit());
#pragma omp parallel num_threads(thread_limit())
  {
#pragma omp for schedule(static)
    for (long long mask = 1; mask < total; ++mask) {
      auto in = [&](int v) { return (mask >> v) & 1; };
      bool ok = true;
      // (i) up-closed: everything reachable from a member is a member
      for (int w = 0; w < n && ok; ++w) {
        if (!in(w)) continue;
        for (int v = 0; v < n && ok; ++v)
          if (reach[w][v] && !in(v)) ok = false;
      }
      // (ii) an in-edge of every color from inside
      for (int v = 0; v < n && ok; ++v) {
        if (!in(v)) continue;
        for (int c = 1; c <= sk.k && ok; ++c) {
          bool any = false;
          for (const auto& e : sk.edges)
            if (e.range == v && e.color == c && in(e.source)) any = true;
          if (!any) ok = false;
        }
      }
      // (iii) downward directed
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
      KTail t;
      for (int v = 0; v < n; ++v)
        if (in(v)) t.members.push_back(v);
      per_thread[omp_get_thread_num()].push_back(std::move(t));
    }
  }
  std::vector<KTail> out;
  for (auto& chunk : per_thread)
    for (auto& t : chunk) out.push_back(std::move(t));
  std::sort(out.begin(), out.end(),
            [](const KTail& a, const KTail& b) { return a.members < b.members; });
  return out;
}

namespace {

bool in_members(const std::vector<int>& members, int v) {
  return std::binary_search(members.begin(), members.end(), v);
}

void require_path_in_tail(const KGraphSkeleton& sk, const std::vector<int>& members,
                          const KPath& p) {
  if (!in_members(members, p.range_v) || !in_members(members, p.source_v))
    throw domain_error("PathOutsideTail", "path endpoints leave the tail");
  for (int e : p.edges)
    if (!in_members(members, sk.edges[e].source) || !in_members(members, sk.edges[e].range))
      throw domain_error("PathOutsideTail", "path passes outside the tail");
}

}  // namespace

std::vector<KPath> paths_with_range(const KGraphSkeleton& sk, const std::vector<int>& members,
                                    int v, const Degree& bound, bool exact) {
  require_validated(sk);
  for (int b : bound)
    if (b < 0) return {};
  std::set<KPath> seen;
  std::vector<KPath> frontier{vertex_path(sk, v)};
  seen.insert(frontier[0]);
  std::vector<KPath> out;
  while (!frontier.empty()) {
    std::vector<KPath> next;
    for (const auto& p : frontier) {
      if (!exact || p.deg == bound) out.push_back(p);
      for (int ei = 0; ei < static_cast<int>(sk.edges.size()); ++ei) {
        const auto& e = sk.edges[ei];
        if (e.range != p.source_v) continue;
        if (!in_members(members, e.source)) continue;
        if (p.deg[e.color - 1] + 1 > bound[e.color - 1]) continue;
        KPath q = compose(sk, p, path_from_edges(sk, {ei}));
        if (seen.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  if (exact) {
    std::vector<KPath> filtered;
    for (auto& p : out)
      if (p.deg == bound) filtered.push_back(std::move(p));
    out = std::move(filtered);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool path_equiv(const KGraphSkeleton& sk, const KTail& M, const KPath& mu, const KPath& nu) {
  require_validated(sk);
  if (mu.source_v != nu.source_v)
    throw domain_error("SourceMismatch", "paths must share their source");
  require_path_in_tail(sk, M.members, mu);
  require_path_in_tail(sk, M.members, nu);

  std::set<std::pair<std::vector<int>, std::vector<int>>> visited;
  std::function<bool(const KPath&, const KPath&)> explore = [&](const KPath& a,
                                                                const KPath& b) -> bool {
    Degree t = deg_min(a.deg, b.deg);
    if (!(segment(sk, a, deg_zero(sk.k), t) == segment(sk, b, deg_zero(sk.k), t))) return false;
    KPath ra = segment(sk, a, t, a.deg);
    KPath rb = segment(sk, b, t, b.deg);
    auto key = std::make_pair(ra.edges, rb.edges);
    if (ra.edges.empty() && rb.edges.empty()) return true;  // identical continuations forever
    if (visited.count(key)) return true;
    visited.insert(key);
    for (int ei = 0; ei < static_cast<int>(sk.edges.size()); ++ei) {
      const auto& e = sk.edges[ei];
      if (e.range != ra.source_v) continue;
      if (!in_members(M.members, e.source)) continue;
      KPath f = path_from_edges(sk, {ei});
      if (!explore(compose(sk, ra, f), compose(sk, rb, f))) return false;
    }
    return true;
  };
  return explore(mu, nu);
}

namespace {

Degree diag_bound(const Degree& B, int t) {
  Degree out(B);
  for (auto& x : out) x = std::min(x, t);
  return out;
}

}  // namespace

PerResult per_subgroup(const KGraphSkeleton& sk, const KTail& M, const Degree& B) {
  require_validated(sk);
  if (static_cast<int>(B.size()) != sk.k)
    throw domain_error("BoundTooSmall", "bound has wrong rank");
  for (int x : B)
    if (x < 1) throw domain_error("BoundTooSmall", "bound must be >= 1 in every coordinate");

  // all paths in Lambda M of degree <= B, grouped by source
  std::vector<KPath> all;
  for (int v : M.members) {
    auto ps = paths_with_range(sk, M.members, v, B, false);
    all.insert(all.end(), ps.begin(), ps.end());
  }
  std::vector<std::vector<int>> by_source(sk.nv());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) by_source[all[i].source_v].push_back(i);

  struct Found {
    Degree dmu, dnu;
    int mu_idx, nu_idx;
  };
  std::vector<std::pair<int, int>> candidate_pairs;
  for (int v : M.members)
    for (size_t i = 0; i < by_source[v].size(); ++i)
      for (size_t j = i + 1; j < by_source[v].size(); ++j) {
        int a = by_source[v][i], b = by_source[v][j];
        if (all[a].deg == all[b].deg && all[a].edges == all[b].edges) continue;
        candidate_pairs.push_back({a, b});
      }
  std::vector<char> equivalent(candidate_pairs.size(), 0);
#pragma omp parallel for num_threads(thread_limit()) schedule(dynamic)
  for (size_t i = 0; i < candidate_pairs.size(); ++i) {
    auto [a, b] = candidate_pairs[i];
    if (all[a].deg == all[b].deg) continue;  // zero difference contributes nothing
    equivalent[i] = path_equiv(sk, M, all[a], all[b]) ? 1 : 0;
  }
  std::vector<Found> found;
  for (size_t i = 0; i < candidate_pairs.size(); ++i)
    if (equivalent[i])
      found.push_back(
          {all[candidate_pairs[i].first].deg, all[candidate_pairs[i].second].deg,
           candidate_pairs[i].first, candidate_pairs[i].second});

  auto subgroup_at = [&](const Degree& bound) {
    std::vector<std::vector<Int>> gens;
    for (const auto& f : found) {
      if (!deg_leq(f.dmu, bound) || !deg_leq(f.dnu, bound)) continue;
      std::vector<Int> diff(sk.k);
      for (int c = 0; c < sk.k; ++c) diff[c] = Int(f.dmu[c] - f.dnu[c]);
      gens.push_back(diff);
    }
    return IntSubgroup::from_generators(sk.k, gens);
  };

  PerResult out;
  out.bound = B;
  int T = *std::max_element(B.begin(), B.end());
  std::vector<IntSubgroup> chain;
  for (int t = 1; t <= T; ++t) chain.push_back(subgroup_at(diag_bound(B, t)));
  out.subgroup = chain.back();
  out.stabilized = false;
  for (int t = 2; t <= T && !out.stabilized; ++t) {
    bool stable = true;
    for (int u = t; u <= T; ++u)
      if (!(chain[u - 1] == chain[t - 2])) stable = false;
    if (stable) {
      out.stabilized = true;
      out.stabilized_at = diag_bound(B, t);
    }
  }

  // witnesses per Hermite basis row: direct pair when available, otherwise
  // an integer combination recovered from the Hermite transform
  std::vector<std::vector<Int>> gen_rows;
  std::vector<PerWitness> gen_wit;
  for (const auto& f : found) {
    std::vector<Int> diff(sk.k);
    for (int c = 0; c < sk.k; ++c) diff[c] = Int(f.dmu[c] - f.dnu[c]);
    gen_rows.push_back(diff);
    gen_wit.push_back({all[f.mu_idx], all[f.nu_idx]});
  }
  for (int r = 0; r < out.subgroup.basis.rows; ++r) {
    std::vector<Int> row = out.subgroup.basis.row(r);
    std::vector<Int> neg_row(row);
    for (auto& x : neg_row) x = -x;
    PerResult::RowWitness w;
    bool direct = false;
    for (size_t i = 0; i < gen_rows.size() && !direct; ++i) {
      if (gen_rows[i] == row) {
        w.combo = {{Int(1), gen_wit[i]}};
        direct = true;
      } else if (gen_rows[i] == neg_row) {
        w.combo = {{Int(1), PerWitness{gen_wit[i].nu, gen_wit[i].mu}}};
        direct = true;
      }
    }
    if (!direct) {
      // solve row = sum c_i gen_i through the tracked Hermite transform
      IMat G(static_cast<int>(gen_rows.size()), sk.k);
      for (size_t i = 0; i < gen_rows.size(); ++i)
        for (int c = 0; c < sk.k; ++c) G.at(static_cast<int>(i), c) = gen_rows[i][c];
      auto [H, Tr] = hermite_rows_with_transform(G);
      for (int hr = 0; hr < H.rows; ++hr)
        if (H.row(hr) == row) {
          for (int gi = 0; gi < Tr.cols; ++gi)
            if (Tr.at(hr, gi) != 0) w.combo.push_back({Tr.at(hr, gi), gen_wit[gi]});
          break;
        }
    }
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

std::vector<int> m_per(const KGraphSkeleton& sk, const KTail& M, const PerResult& per) {
  require_validated(sk);
  if (!per.stabilized)
    throw domain_error("NotStabilized", "m_per needs a stabilized Per subgroup");
  std::vector<int> out;
  for (int v : M.members) {
    bool good = true;
    for (int r = 0; r < per.subgroup.basis.rows && good; ++r) {
      Degree p(sk.k), q(sk.k);
      for (int c = 0; c < sk.k; ++c) {
        Int x = per.subgroup.basis.at(r, c);
        p[c] = x > 0 ? x.convert_to<int>() : 0;
        q[c] = x < 0 ? Int(-x).convert_to<int>() : 0;
      }
      Degree pq = deg_max(p, q);
      for (const auto& w : paths_with_range(sk, M.members, v, pq, true)) {
        KPath wp = segment(sk, w, p, pq);
        KPath wq = segment(sk, w, q, pq);
        if (!path_equiv(sk, M, wp, wq)) {
          good = false;
          break;
        }
      }
    }
    if (good) out.push_back(v);
  }
  // stated consequences: nonempty and hereditary inside Lambda M
  if (out.empty()) throw domain_error("MPerInconsistent", "computed M_Per is empty");
  for (const auto& e : sk.edges)
    if (in_members(M.members, e.source) && in_members(M.members, e.range) &&
        std::binary_search(out.begin(), out.end(), e.range) &&
        !std::binary_search(out.begin(), out.end(), e.source))
      throw domain_error("MPerInconsistent", "computed M_Per is not hereditary");
  return out;
}

std::vector<KPrimEntry> kprim_spectrum(const KGraphSkeleton& sk, const Degree& B) {
  require_validated(sk);
  std::vector<KPrimEntry> out;
  for (const auto& tail : ktails(sk)) {
    KPrimEntry e;
    e.tail = tail;
    e.per = per_subgroup(sk, tail, B);
    if (!e.per.stabilized)
      throw domain_error("NotStabilized",
                         "Per search did not stabilize within the bound for a tail");
    e.char_space = annihilator(e.per.subgroup);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::pair<Degree, Degree> pos_neg_parts(const std::vector<Int>& l) {
  Degree p(l.size()), q(l.size());
  for (size_t c = 0; c < l.size(); ++c) {
    p[c] = l[c] > 0 ? l[c].convert_to<int>() : 0;
    q[c] = l[c] < 0 ? Int(-l[c]).convert_to<int>() : 0;
  }
  return {p, q};
}

}  // namespace

KConvergeResult k_converges(const KGraphSkeleton& sk, const KPrimPoint& target,
                            const std::vector<KPrimPoint>& seq, const KConvergeParams& params) {
  require_validated(sk);
  if (params.eps <= 0) throw domain_error("BadEps", "eps must be positive");
  if (!deg_leq(params.lambda0.deg, params.b_search))
    throw domain_error("DegreeOutOfRange", "lambda0 exceeds the search bound");
  PerResult tper = per_subgroup(sk, target.tail, params.b_search);
  if (!tper.stabilized)
    throw domain_error("NotStabilized", "target Per did not stabilize within the search bound");
  require_path_in_tail(sk, target.tail.members, params.lambda0);
  std::vector<int> tmper = m_per(sk, target.tail, tper);
  if (!std::binary_search(tmper.begin(), tmper.end(), params.lambda0.range_v))
    throw domain_error("RangeOutsideMPer", "lambda0 must have range in M_Per of the target");
  for (const auto& l : params.F)
    if (!tper.subgroup.contains(l))
      throw domain_error("BadTestSet", "F must be contained in Per of the target");

  KConvergeResult res;
  for (int n = 0; n < static_cast<int>(seq.size()); ++n) {
    const KPrimPoint& pn = seq[n];
    PerResult nper = per_subgroup(sk, pn.tail, params.b_search);
    if (!nper.stabilized)
      throw domain_error("NotStabilized", "sequence Per did not stabilize within the bound");
    std::vector<int> nmper = m_per(sk, pn.tail, nper);

    // lambda0 must already live in Lambda M_n for any extension to exist
    bool inside = in_members(pn.tail.members, params.lambda0.range_v) &&
                  in_members(pn.tail.members, params.lambda0.source_v);
    for (int e : params.lambda0.edges)
      if (!in_members(pn.tail.members, sk.edges[e].source) ||
          !in_members(pn.tail.members, sk.edges[e].range))
        inside = false;

    bool witnessed = false;
    KCertificateItem item;
    if (inside) {
      auto exts = paths_with_range(sk, pn.tail.members, params.lambda0.source_v,
                                   deg_sub(params.b_search, params.lambda0.deg), false);
      for (const auto& rho : exts) {
        KPath mu = compose(sk, params.lambda0, rho);
        // enumerate m <= d(mu)
        std::vector<Degree> ms{deg_zero(sk.k)};
        for (int c = 0; c < sk.k; ++c) {
          std::vector<Degree> next;
          for (const auto& m : ms)
            for (int x = 0; x <= mu.deg[c]; ++x) {
              Degree m2 = m;
              m2[c] = x;
              next.push_back(m2);
            }
          ms = std::move(next);
        }
        for (const auto& m : ms) {
          if (!std::binary_search(nmper.begin(), nmper.end(), path_vertex_at(sk, mu, m)))
            continue;
          bool all_ok = true;
          for (const auto& l : params.F) {
            if (!nper.subgroup.contains(l)) continue;
            auto [p, q] = pos_neg_parts(l);
            Degree pq = deg_max(p, q);
            if (!deg_leq(pq, deg_sub(mu.deg, m))) {
              all_ok = false;
              break;
            }
            KPath sp = segment(sk, mu, p, deg_add(m, p));
            KPath sq = segment(sk, mu, q, deg_add(m, q));
            if (sp == sq) {
              RationalAngle a = target.chi.eval(l), b = pn.chi.eval(l);
              if (!chord_lt(a, b, params.eps)) {
                all_ok = false;
                break;
              }
            }
          }
          if (all_ok) {
            witnessed = true;
            item = {n + 1, mu, m};
            break;
          }
        }
        if (witnessed) break;
      }
    }
    if (!witnessed) {
      res.ok = false;
      res.fail_at = n + 1;
      return res;
    }
    res.certificate.push_back(std::move(item));
  }
  res.ok = true;
  return res;
}

KSpecializeResult k_specializes(const KGraphSkeleton& sk, const KPrimPoint& p1,
                                const KPrimPoint& p2, const Degree& b_search) {
  require_validated(sk);
  KSpecializeResult out;
  PerResult tper = per_subgroup(sk, p2.tail, b_search);
  if (!tper.stabilized)
    throw domain_error("NotStabilized", "target Per did not stabilize within the bound");
  std::vector<int> tmper = m_per(sk, p2.tail, tper);
  std::vector<std::vector<Int>> F;
  for (int r = 0; r < tper.subgroup.basis.rows; ++r) F.push_back(tper.subgroup.basis.row(r));

  std::vector<KPath> lambdas;
  for (int v : tmper) {
    auto ps = paths_with_range(sk, p2.tail.members, v, b_search, false);
    lambdas.insert(lambdas.end(), ps.begin(), ps.end());
  }
  for (const auto& lam : lambdas) {
    for (int d = 1; d <= 4; ++d) {
      Ratio eps(1, Int(1) << d);
      KConvergeParams params{lam, eps, F, b_search};
      KConvergeResult r = k_converges(sk, p2, {p1}, params);
      if (!r.ok) {
        out.yes = false;
        out.failing = params;
        return out;
      }
      out.certificates.push_back({params, r.certificate[0]});
    }
  }
  out.yes = true;
  return out;
}

namespace {

bool torus_subset_contains(const TorusSubsetDesc& s, const CharacterVector& z) {
  switch (s.kind) {
    case TorusSubsetDesc::Kind::Full:
      return true;
    case TorusSubsetDesc::Kind::Empty:
      return false;
    case TorusSubsetDesc::Kind::CharList:
      return std::find(s.chars.begin(), s.chars.end(), z) != s.chars.end();
    case TorusSubsetDesc::Kind::CircleProduct: {
      for (size_t i = 0; i < s.factors.size(); ++i)
        if (!s.factors[i].contains(z.t[i])) return false;
      return true;
    }
  }
  return false;
}

// T_y ⊆ S where T_y is an arbitrarily small band neighbourhood of
// z * ann(L'): every coordinate projection of the coset must land in the
// interior of the corresponding factor.
bool ty_contained(const TorusSubsetDesc& s, const CharacterVector& z,
                  const TorusSubgroupDesc& ann) {
  if (s.kind == TorusSubsetDesc::Kind::Full) return true;
  if (s.kind != TorusSubsetDesc::Kind::CircleProduct) return false;  // open set vs finite set
  int k = ann.k;
  for (int i = 0; i < k; ++i) {
    bool proj_full = false;
    for (int r = 0; r < ann.connected_dims.rows; ++r)
      if (ann.connected_dims.at(r, i) != 0) proj_full = true;
    if (proj_full) {
      if (!s.factors[i].is_full()) return false;
      continue;
    }
    for (const auto& u : enumerate_finite_part(ann))
      if (!s.factors[i].interior_contains(z.t[i] + u.t[i])) return false;
  }
  return true;
}

}  // namespace

DSetReport validate_D_set(const KGraphSkeleton& sk, const std::map<int, TorusSubsetDesc>& D,
                          const Degree& horizon) {
  require_validated(sk);
  for (int v = 0; v < sk.nv(); ++v)
    if (!D.count(v)) throw parse_error("D-set misses vertex '" + sk.vnames[v] + "'");

  // sample characters separating all slices
  std::vector<std::vector<RationalAngle>> coord_samples(sk.k);
  for (int i = 0; i < sk.k; ++i) {
    std::set<RationalAngle> pts;
    pts.insert(RationalAngle(Ratio(0)));
    for (const auto& [v, s] : D) {
      if (s.kind == TorusSubsetDesc::Kind::CharList)
        for (const auto& c : s.chars) pts.insert(c.t[i]);
      if (s.kind == TorusSubsetDesc::Kind::CircleProduct) {
        for (const auto& p : s.factors[i].points()) pts.insert(p);
        for (const auto& a : s.factors[i].arcs()) {
          pts.insert(a.start);
          pts.insert(RationalAngle(a.start.value() + a.len));
          pts.insert(RationalAngle(a.start.value() + a.len / 2));
        }
      }
    }
    std::vector<RationalAngle> sorted(pts.begin(), pts.end());
    std::vector<RationalAngle> samples = sorted;
    for (size_t j = 0; j < sorted.size(); ++j) {
      Ratio a = sorted[j].value();
      Ratio b = j + 1 < sorted.size() ? sorted[j + 1].value() : sorted[0].value() + 1;
      samples.push_back(RationalAngle((a + b) / 2));
    }
    coord_samples[i] = samples;
  }
  std::vector<CharacterVector> grid{CharacterVector{{}}};
  for (int i = 0; i < sk.k; ++i) {
    std::vector<CharacterVector> next;
    for (const auto& base : grid)
      for (const auto& s : coord_samples[i]) {
        CharacterVector c = base;
        c.t.push_back(s);
        next.push_back(c);
      }
    grid = std::move(next);
    if (grid.size() > 20000) throw parse_error("D-set description too fine for slice sampling");
  }

  // (i) each slice hereditary and saturated
  for (const auto& z : grid) {
    std::vector<char> in(sk.nv(), 0);
    for (int v = 0; v < sk.nv(); ++v) in[v] = torus_subset_contains(D.at(v), z) ? 1 : 0;
    for (const auto& e : sk.edges)
      if (in[e.range] && !in[e.source])
        return {false, "condition (i): slice at " + z.t[0].str() +
                           "... is not hereditary at edge " + e.name};
    for (int v = 0; v < sk.nv(); ++v) {
      if (in[v]) continue;
      for (int c = 1; c <= sk.k; ++c) {
        bool all = true, any = false;
        for (const auto& e : sk.edges)
          if (e.range == v && e.color == c) {
            any = true;
            if (!in[e.source]) all = false;
          }
        if (any && all)
          return {false, "condition (i): slice is not saturated at vertex '" + sk.vnames[v] +
                             "' color " + std::to_string(c)};
      }
    }
  }

  // (ii) at the horizon, with n = horizon, the maximal valid relation set
  // and the eps -> 0 limit of the band inclusion test
  for (int v = 0; v < sk.nv(); ++v) {
    std::vector<CharacterVector> zs;
    for (const auto& z : grid)
      if (torus_subset_contains(D.at(v), z)) zs.push_back(z);
    if (zs.empty()) continue;
    std::vector<int> all(sk.nv());
    for (int i = 0; i < sk.nv(); ++i) all[i] = i;
    auto xs = paths_with_range(sk, all, v, horizon, true);
    for (const auto& z : zs) {
      for (const auto& x : xs) {
        // relation pairs valid on x at the horizon
        std::vector<std::vector<Int>> rels;
        std::vector<Degree> ms{deg_zero(sk.k)};
        for (int c = 0; c < sk.k; ++c) {
          std::vector<Degree> next;
          for (const auto& m : ms)
            for (int t = 0; t <= horizon[c]; ++t) {
              Degree m2 = m;
              m2[c] = t;
              next.push_back(m2);
            }
          ms = std::move(next);
        }
        for (const auto& m : ms)
          for (const auto& nn : ms) {
            if (m == nn) continue;
            Degree mv = deg_max(m, nn);
            Degree rest = deg_sub(horizon, mv);
            KPath sm = segment(sk, x, m, deg_add(m, rest));
            KPath sn = segment(sk, x, nn, deg_add(nn, rest));
            if (sm == sn) {
              std::vector<Int> l(sk.k);
              for (int c = 0; c < sk.k; ++c) l[c] = Int(m[c] - nn[c]);
              rels.push_back(l);
            }
          }
        TorusSubgroupDesc ann = annihilator(IntSubgroup::from_generators(sk.k, rels));
        bool ok = false;
        for (const auto& m : ms) {
          int ym = path_vertex_at(sk, x, m);
          if (ty_contained(D.at(ym), z, ann)) {
            ok = true;
            break;
          }
        }
        if (!ok)
          return {false, "condition (ii): no admissible m for vertex '" + sk.vnames[v] +
                             "' at character (" + z.t[0].str() + ", ...)"};
      }
    }
  }
  return {true, ""};
}

KGraphSkeleton import_1graph(const DirectedGraph& g) {
  std::string why;
  if (!is_row_finite_no_sources(g, &why))
    throw domain_error(why, "1-graph import requires a row-finite graph without sources");
  KGraphSkeleton sk;
  sk.k = 1;
  sk.vnames = g.vnames;
  for (const auto& e : g.edges) {
    if (e.mult == kOmegaMult)
      throw domain_error("NotRowFinite", "omega multiplicities cannot be imported");
    for (long long c = 1; c <= e.mult; ++c) {
      KGraphSkeleton::KEdge ke;
      ke.name = e.mult == 1 ? e.name : e.name + "#" + std::to_string(c);
      ke.color = 1;
      ke.source = e.source;
      ke.range = e.range;
      sk.edges.push_back(ke);
    }
  }
  validate_kgraph(sk);
  return sk;
}

}  // namespace primtop
