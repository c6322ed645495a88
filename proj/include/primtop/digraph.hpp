#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primtop/circle_set.hpp"
#include "primtop/rational.hpp"

namespace primtop {

// Edge multiplicity; kOmegaMult encodes countably many parallel edges.
inline constexpr long long kOmegaMult = -1;

// Finite presentation of a countable directed graph. An edge e is drawn
// s(e) -> r(e); a path e1...en satisfies s(e_i) = r(e_{i+1}), so stored
// paths begin at their range and extend at the source end. v <= w iff there
// is a directed walk v -> w.
struct DirectedGraph {
  struct Edge {
    std::string name;
    int source = 0, range = 0;
    long long mult = 1;  // >= 1 or kOmegaMult
  };

  std::vector<std::string> vnames;
  std::vector<Edge> edges;

  int nv() const { return static_cast<int>(vnames.size()); }
  int vertex(const std::string& name) const;  // throws parse_error if unknown
  void validate() const;
};

// Count that may be infinite.
struct Card {
  bool infinite = false;
  long long n = 0;
  bool positive() const { return infinite || n > 0; }
};

Card in_multiplicity(const DirectedGraph& g, int v);
// Total multiplicity of edges into v whose source lies in the given set.
Card in_multiplicity_from(const DirectedGraph& g, int v, const std::vector<char>& from);

struct Components {
  std::vector<int> comp_of;               // vertex -> component id
  std::vector<std::vector<int>> members;  // component id -> sorted vertices
  // reach[c][d]: some (equivalently every) vertex of c has a walk to one of d
  std::vector<std::vector<char>> reach;
  bool has_internal_edge(const DirectedGraph& g, int c) const;
};

Components components(const DirectedGraph& g);

std::vector<int> singular_vertices(const DirectedGraph& g);
std::vector<std::vector<int>> primitive_loops(const DirectedGraph& g);

struct Tail {
  std::vector<int> members;  // sorted vertex ids
  bool gamma = false;
  // engaged iff the tail has a unique least element without self-loops
  std::optional<int> unique_least_no_loop;
  int least_component = -1;  // the component whose up-closure this is

  bool operator==(const Tail& o) const {
    return members == o.members && gamma == o.gamma &&
           unique_least_no_loop == o.unique_least_no_loop;
  }
};

// All maximal tails, classified, via the component characterization.
std::vector<Tail> maximal_tails(const DirectedGraph& g);

std::vector<int> breaking_vertices(const DirectedGraph& g);

struct PrimSpectrum {
  std::vector<Tail> gammas;
  std::vector<int> breakings;
  std::vector<std::vector<int>> loops;  // each a sorted vertex set
};

PrimSpectrum prim_spectrum(const DirectedGraph& g);

// Symbol of a boundary-path word: edge id plus a 1-based parallel-copy index
// (copies beyond the first exist for multiplicity >= 2 and omega edges).
using PathSym = std::pair<int, int>;

// Deterministic aperiodic word: Thue-Morse alternation of the two smallest
// non-commuting first-return cycles at the base vertex.
struct AperiodicWordSpec {
  int base = -1;
  std::vector<PathSym> cycle_a, cycle_b;  // stored order, r(cycle) = s(cycle) = base
  std::vector<PathSym> materialize(int len) const;
};

struct QuasiOrbitRep {
  bool is_vertex = false;
  int vertex = -1;
  AperiodicWordSpec word;
};

// Representative of the quasi-orbit of a gamma tail. Throws on non-gamma.
QuasiOrbitRep quasi_orbit_representative(const DirectedGraph& g, const Tail& tail);

// Canonical periodic word of a primitive loop, repeated to length len.
std::vector<PathSym> loop_word(const DirectedGraph& g, const std::vector<int>& loop, int len);

struct PrimPoint {
  enum class Kind { Gamma, Breaking, Loop };
  Kind kind = Kind::Gamma;
  std::vector<int> members;  // tail for Gamma, loop for Loop, {v} for Breaking
  RationalAngle fiber;       // Loop only; the value z^{|L|}

  static PrimPoint gamma(std::vector<int> tail);
  static PrimPoint breaking(int v);
  static PrimPoint loop(std::vector<int> l, RationalAngle w);
  bool operator==(const PrimPoint& o) const {
    return kind == o.kind && members == o.members && (kind != Kind::Loop || fiber == o.fiber);
  }
  bool operator<(const PrimPoint& o) const;
};

// p2 lies in the closure of {p1}, i.e. ideal(p1) is contained in ideal(p2).
bool specializes(const DirectedGraph& g, const PrimPoint& p1, const PrimPoint& p2);

struct ClosedPrimSet {
  std::vector<PrimPoint> finite_points;               // Gamma and Breaking, sorted
  std::map<std::vector<int>, CircleSet> loop_fibers;  // loop -> fiber subset
};

ClosedPrimSet closure(const DirectedGraph& g, const std::vector<PrimPoint>& seeds,
                      const std::map<std::vector<int>, CircleSet>& fiber_seeds = {});

// Row-finite no-source operations. H is given and returned as a sorted
// vertex list; hereditary means closed under taking sources of paths into H.
std::vector<int> saturate(const DirectedGraph& g, const std::vector<int>& hereditary);
std::vector<std::vector<int>> hereditary_saturated_sets(const DirectedGraph& g);

// Shared helpers.
std::vector<char> up_closure(const DirectedGraph& g, const std::vector<int>& seed);
bool is_row_finite_no_sources(const DirectedGraph& g, std::string* why = nullptr);

}  // namespace primtop
