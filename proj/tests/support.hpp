#pragma once

// Shared corpus generators for unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "primtop/circle_set.hpp"
#include "primtop/digraph.hpp"
#include "primtop/kgraph.hpp"
#include "primtop/lattice.hpp"
#include "primtop/sgds.hpp"

namespace primtop::test {

inline DirectedGraph random_graph(std::mt19937& rng, int max_v = 6, int max_e = 12) {
  DirectedGraph g;
  int nv = 1 + static_cast<int>(rng() % max_v);
  for (int i = 0; i < nv; ++i) g.vnames.push_back("v" + std::to_string(i));
  int ne = static_cast<int>(rng() % (max_e + 1));
  for (int i = 0; i < ne; ++i) {
    DirectedGraph::Edge e;
    e.name = "e" + std::to_string(i);
    e.source = static_cast<int>(rng() % nv);
    e.range = static_cast<int>(rng() % nv);
    switch (rng() % 3) {
      case 0: e.mult = 1; break;
      case 1: e.mult = 2; break;
      default: e.mult = kOmegaMult; break;
    }
    g.edges.push_back(e);
  }
  return g;
}

// row-finite, no sources, finite multiplicities in {1,2}
inline DirectedGraph random_row_finite_graph(std::mt19937& rng, int max_v = 5, int extra_e = 4) {
  DirectedGraph g;
  int nv = 1 + static_cast<int>(rng() % max_v);
  for (int i = 0; i < nv; ++i) g.vnames.push_back("v" + std::to_string(i));
  int counter = 0;
  for (int v = 0; v < nv; ++v) {
    DirectedGraph::Edge e;
    e.name = "e" + std::to_string(counter++);
    e.range = v;
    e.source = static_cast<int>(rng() % nv);
    e.mult = 1;
    g.edges.push_back(e);
  }
  int ne = static_cast<int>(rng() % (extra_e + 1));
  for (int i = 0; i < ne; ++i) {
    DirectedGraph::Edge e;
    e.name = "e" + std::to_string(counter++);
    e.source = static_cast<int>(rng() % nv);
    e.range = static_cast<int>(rng() % nv);
    e.mult = 1 + static_cast<int>(rng() % 2);
    g.edges.push_back(e);
  }
  return g;
}

inline RationalAngle random_angle(std::mt19937& rng, int max_den = 12) {
  long long q = 1 + static_cast<long long>(rng() % max_den);
  long long p = static_cast<long long>(rng() % static_cast<unsigned long long>(q));
  return RationalAngle(Ratio(p, q));
}

inline CircleSet random_circle_set(std::mt19937& rng) {
  switch (rng() % 6) {
    case 0: return CircleSet::empty_set();
    case 1: return CircleSet::full_circle();
    default: {
      std::vector<RationalAngle> pts;
      std::vector<CircleSet::Arc> arcs;
      int np = static_cast<int>(rng() % 3);
      for (int i = 0; i < np; ++i) pts.push_back(random_angle(rng));
      int na = static_cast<int>(rng() % 3);
      for (int i = 0; i < na; ++i) {
        RationalAngle s = random_angle(rng);
        long long q = 2 + static_cast<long long>(rng() % 10);
        arcs.push_back({s, Ratio(1, q)});
      }
      return CircleSet::make(pts, arcs, false);
    }
  }
}

// random subgroup of Z^k with invariant factors bounded by max_factor
// (0 encodes a free direction), conjugated by small unimodular matrices
inline IntSubgroup random_subgroup(std::mt19937& rng, int k, int max_factor = 12) {
  IMat m(k, k);
  for (int i = 0; i < k; ++i) {
    int pick = static_cast<int>(rng() % (max_factor + 2));
    m.at(i, i) = pick > max_factor ? Int(0) : Int(pick);  // 0 drops the row, too
  }
  // a few elementary row/column operations with coefficients in {-1,0,1}
  for (int step = 0; step < 6; ++step) {
    int i = static_cast<int>(rng() % k), j = static_cast<int>(rng() % k);
    if (i == j) continue;
    long long c = static_cast<long long>(rng() % 3) - 1;
    if (rng() % 2)
      for (int t = 0; t < k; ++t) m.at(i, t) += Int(c) * m.at(j, t);
    else
      for (int t = 0; t < k; ++t) m.at(t, i) += Int(c) * m.at(t, j);
  }
  std::vector<std::vector<Int>> gens;
  for (int i = 0; i < k; ++i) gens.push_back(m.row(i));
  return IntSubgroup::from_generators(k, gens);
}

inline IMat random_imat(std::mt19937& rng, int max_dim = 4, int max_entry = 9) {
  int r = 1 + static_cast<int>(rng() % max_dim);
  int c = 1 + static_cast<int>(rng() % max_dim);
  IMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.at(i, j) = Int(static_cast<long long>(rng() % (2 * max_entry + 1)) - max_entry);
  return m;
}

// all partial maps on n labelled points
inline std::vector<SGDS> all_sgds(int n) {
  std::vector<SGDS> out;
  SGDS base;
  for (int i = 0; i < n; ++i) base.xnames.push_back(std::string(1, static_cast<char>('a' + i)));
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= (n + 1);
  for (long long code = 0; code < total; ++code) {
    SGDS s = base;
    long long c = code;
    s.sigma.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      s.sigma[i] = static_cast<int>(c % (n + 1)) - 1;
      c /= (n + 1);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace primtop::test
