#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "primtop/circle_set.hpp"
#include "primtop/lattice.hpp"

namespace primtop {

struct DirectedGraph;

// Degree vectors in Z^k_+.
using Degree = std::vector<int>;
Degree deg_zero(int k);
bool deg_leq(const Degree& a, const Degree& b);
Degree deg_add(const Degree& a, const Degree& b);
Degree deg_sub(const Degree& a, const Degree& b);
Degree deg_min(const Degree& a, const Degree& b);
Degree deg_max(const Degree& a, const Degree& b);
int deg_total(const Degree& a);

// Finite k-graph presented by a colored skeleton plus factorization squares.
// Edges of color i are drawn s -> r; v Lambda^{e_i} is the set of color-i
// edges with range v. A square cell says f.g = g'.f' where f, f' have the
// lower color, g, g' the higher one, and the left factor sits closer to the
// range.
struct KGraphSkeleton {
  struct KEdge {
    std::string name;
    int color = 1;  // 1..k
    int source = 0, range = 0;
  };
  struct SquareCell {
    int first_a = 0, first_b = 0;    // (low color, high color), reading from the range
    int second_a = 0, second_b = 0;  // (high color, low color)
  };

  int k = 1;
  std::vector<std::string> vnames;
  std::vector<KEdge> edges;
  std::vector<SquareCell> squares;
  bool validated = false;

  // filled by validate_kgraph
  std::map<std::pair<int, int>, std::pair<int, int>> fwd;  // (lo,hi) -> (hi',lo')
  std::map<std::pair<int, int>, std::pair<int, int>> inv;  // (hi,lo) -> (lo',hi')

  int nv() const { return static_cast<int>(vnames.size()); }
  int vertex(const std::string& name) const;
  int edge(const std::string& name) const;
};

// Checks endpoints, square bijectivity, the cube condition for all color
// triples, row-finiteness and no-sources; fills the rewrite tables. Throws
// domain_error with kinds InvalidFactorization, CubeViolation, NotRowFinite,
// HasSources.
void validate_kgraph(KGraphSkeleton& sk);

// Finite path in normal form: edges sorted color block by color block, the
// color-1 block closest to the range.
struct KPath {
  int range_v = -1, source_v = -1;
  Degree deg;
  std::vector<int> edges;

  bool is_vertex() const { return edges.empty(); }
  bool operator==(const KPath& o) const = default;
  bool operator<(const KPath& o) const;
};

KPath vertex_path(const KGraphSkeleton& sk, int v);
KPath path_from_edges(const KGraphSkeleton& sk, const std::vector<int>& seq);
KPath compose(const KGraphSkeleton& sk, const KPath& a, const KPath& b);
KPath segment(const KGraphSkeleton& sk, const KPath& p, const Degree& from, const Degree& to);
// Vertex p(m) visited at position m.
int path_vertex_at(const KGraphSkeleton& sk, const KPath& p, const Degree& m);

// Maximal tail of a k-graph.
struct KTail {
  std::vector<int> members;  // sorted
  bool operator==(const KTail& o) const = default;
};

std::vector<KTail> ktails(const KGraphSkeleton& sk);

// All normal-form paths in the sub-k-graph on `members` with range v and
// degree <= bound (or == bound when exact).
std::vector<KPath> paths_with_range(const KGraphSkeleton& sk, const std::vector<int>& members,
                                    int v, const Degree& bound, bool exact);

// Decides mu ~_M nu by the residual-pair fixpoint.
bool path_equiv(const KGraphSkeleton& sk, const KTail& M, const KPath& mu, const KPath& nu);

struct PerWitness {
  KPath mu, nu;
};

struct PerResult {
  IntSubgroup subgroup;
  Degree bound;
  bool stabilized = false;
  Degree stabilized_at;  // meaningful iff stabilized
  // one entry per Hermite basis row: integer combination of verified pairs
  // (a single pair with coefficient 1 in the common case)
  struct RowWitness {
    std::vector<std::pair<Int, PerWitness>> combo;
  };
  std::vector<RowWitness> witnesses;
};

PerResult per_subgroup(const KGraphSkeleton& sk, const KTail& M, const Degree& B);

std::vector<int> m_per(const KGraphSkeleton& sk, const KTail& M, const PerResult& per);

struct KPrimPoint {
  KTail tail;
  CharacterVector chi;  // meaningful modulo the annihilator of Per(tail)
};

struct KPrimEntry {
  KTail tail;
  PerResult per;
  TorusSubgroupDesc char_space;  // annihilator of Per; characters = T^k mod this
};

std::vector<KPrimEntry> kprim_spectrum(const KGraphSkeleton& sk, const Degree& B);

struct KConvergeParams {
  KPath lambda0;
  Ratio eps;
  std::vector<std::vector<Int>> F;  // finite subset of Per(target)
  Degree b_search;
};

struct KCertificateItem {
  int n = 0;
  KPath mu;
  Degree m;
};

struct KConvergeResult {
  bool ok = false;
  std::vector<KCertificateItem> certificate;
  int fail_at = -1;  // 1-based index of the first failing sequence element
};

KConvergeResult k_converges(const KGraphSkeleton& sk, const KPrimPoint& target,
                            const std::vector<KPrimPoint>& seq, const KConvergeParams& params);

struct KSpecializeResult {
  bool yes = false;
  std::vector<std::pair<KConvergeParams, KCertificateItem>> certificates;
  std::optional<KConvergeParams> failing;
};

KSpecializeResult k_specializes(const KGraphSkeleton& sk, const KPrimPoint& p1,
                                const KPrimPoint& p2, const Degree& b_search);

// Finitely described subset of T^k attached to a vertex by a D-set.
struct TorusSubsetDesc {
  enum class Kind { Full, Empty, CharList, CircleProduct } kind = Kind::Empty;
  std::vector<CharacterVector> chars;  // CharList
  std::vector<CircleSet> factors;      // CircleProduct, one factor per coordinate
};

struct DSetReport {
  bool valid = false;
  std::string violation;  // empty when valid
};

DSetReport validate_D_set(const KGraphSkeleton& sk, const std::map<int, TorusSubsetDesc>& D,
                          const Degree& horizon);

// Imports a row-finite no-source 1-graph; multiplicity-m edges expand into m
// parallel edges named name#1..name#m. Throws on omega multiplicities or
// sources.
KGraphSkeleton import_1graph(const DirectedGraph& g);

}  // namespace primtop
