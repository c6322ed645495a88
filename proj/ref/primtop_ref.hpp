#pragma once

// Serial reference implementations: definitional brute-force filters and
// bounded simulations used as independent oracles by the tests and as the
// baseline in the benchmarks. Nothing here is reachable from the CLI.

#include <map>
#include <vector>

#include "primtop/circle_set.hpp"
#include "primtop/digraph.hpp"
#include "primtop/kgraph.hpp"
#include "primtop/lattice.hpp"
#include "primtop/sgds.hpp"
#include "primtop/transform.hpp"

namespace primtop::ref {

// Definitional maximal-tail filter: tests the three axioms on every
// nonempty vertex subset; gamma by explicit simple-cycle enumeration.
std::vector<Tail> maximal_tails_bruteforce(const DirectedGraph& g);

// Depth-bounded boundary-path simulation deciding p2 in closure{p1}:
// enumerates orbit elements of the source representative and tests
// membership in neighbourhoods of the target representative.
bool specializes_cylsim(const DirectedGraph& g, const PrimPoint& p1, const PrimPoint& p2,
                        int depth);

// Whether the periodic path over the simple cycle `cycle_vertices` (in cycle
// order) is isolated in its orbit, decided by searching for a divergent
// in-orbit path at some phase, to the given depth.
bool periodic_path_isolated(const DirectedGraph& g, const std::vector<int>& cycle_vertices,
                            const std::vector<int>& cycle_edges, int depth);

// Lists all simple cycles (vertex sequence + edge sequence in stored order).
struct SimpleCycle {
  std::vector<int> vertices;  // visit order, vertices[0] = r of edges[0]
  std::vector<int> edges;
};
std::vector<SimpleCycle> simple_cycles(const DirectedGraph& g);

// mu ~_M nu tested against all extensions of degree <= depth.
bool path_equiv_bruteforce(const KGraphSkeleton& sk, const KTail& M, const KPath& mu,
                           const KPath& nu, const Degree& depth);

// Per subgroup from the definitional pair search with the brute-force
// equivalence; serial.
IntSubgroup per_subgroup_bruteforce(const KGraphSkeleton& sk, const KTail& M, const Degree& B,
                                    const Degree& depth);

// M_Per by the definitional quantifier at bounded depth.
std::vector<int> m_per_bruteforce(const KGraphSkeleton& sk, const KTail& M,
                                  const IntSubgroup& per, const Degree& depth);

// Diagonal of the Smith form from gcds of i x i minors.
std::vector<Int> snf_diagonal_by_minors(const IMat& a);

// Definitional filter for Y-set validity over finite-point-set alphabets
// (every set is either full or a finite list of angles).
struct FiniteY {
  bool full = false;
  std::vector<RationalAngle> points;  // sorted
  bool operator==(const FiniteY& o) const = default;
};
bool katsura_filter(const SGDS& s, const std::map<int, FiniteY>& Y);

// Characters by exhaustive homomorphism search over generator images.
std::vector<SubgroupCharacter> dual_group_bruteforce(const FiniteGroup& g, const Subgroup& h);

}  // namespace primtop::ref
