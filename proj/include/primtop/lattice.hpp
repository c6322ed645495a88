#pragma once

#include <optional>
#include <vector>

#include "primtop/rational.hpp"

namespace primtop {

// Dense integer matrix, row-major.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
  static IMat identity(int n);

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  std::vector<Int> row(int r) const;

  bool operator==(const IMat& o) const = default;
};

IMat matmul(const IMat& x, const IMat& y);
Int det(IMat m);  // Bareiss fraction-free elimination

struct SmithResult {
  IMat U, D, V;  // U*A*V = D, U and V unimodular, D diagonal with d1|d2|...
};
SmithResult smith_normal_form(const IMat& A);

// Canonical row Hermite normal form: row echelon, positive pivots, entries
// above a pivot reduced to [0, pivot); zero rows removed.
IMat hermite_rows(const IMat& A);
// Same, also returning the unimodular row transform T (T*A = H padded with
// the zero rows that were dropped).
std::pair<IMat, IMat> hermite_rows_with_transform(const IMat& A);

// Rows form a basis of {x : A x = 0}, in Hermite form.
IMat integer_kernel(const IMat& A);

// Subgroup of Z^k presented by a canonical Hermite basis.
struct IntSubgroup {
  int k = 0;
  IMat basis;  // basis.rows == rank, basis.cols == k

  static IntSubgroup zero(int k);
  static IntSubgroup whole(int k);
  static IntSubgroup from_generators(int k, const std::vector<std::vector<Int>>& gens);
  bool contains(const std::vector<Int>& v) const;
  int rank() const { return basis.rows; }
  bool operator==(const IntSubgroup& o) const = default;
};

// Character of Z^k given by a rational angle vector t: l -> exp(2 pi i <t,l>).
struct CharacterVector {
  std::vector<RationalAngle> t;

  int k() const { return static_cast<int>(t.size()); }
  RationalAngle eval(const std::vector<Int>& gamma) const;
  static CharacterVector zero(int k);
  bool operator==(const CharacterVector& o) const { return t == o.t; }
  bool operator<(const CharacterVector& o) const { return t < o.t; }
};

// Closed subgroup of T^k: a finite part given by generators plus a subtorus
// spanned by integer directions. Membership is decided through the
// annihilating lattice, which is computed from the generators at
// construction time.
struct TorusSubgroupDesc {
  int k = 0;
  std::vector<CharacterVector> generators;  // finite part
  IMat connected_dims;                      // rows span the identity component
  IntSubgroup dual_lattice;                 // {l : <t,l> in Z for all t in the subgroup}

  bool contains(const CharacterVector& t) const;
  bool is_trivial() const;  // just the zero character
  bool is_full() const;     // all of T^k
};

TorusSubgroupDesc make_torus_desc(int k, std::vector<CharacterVector> generators,
                                  IMat connected_dims);

// P^perp in T^k, computed through the Smith normal form of P's basis.
TorusSubgroupDesc annihilator(const IntSubgroup& P);
// Back to Z^k; annihilator_lattice(annihilator(P)) recovers P.
IntSubgroup annihilator_lattice(const TorusSubgroupDesc& T);

// Elements of the finite part (cosets of the subtorus); throws if there are
// more than `cap`.
std::vector<CharacterVector> enumerate_finite_part(const TorusSubgroupDesc& T, size_t cap = 4096);

// True iff <t1 - t2, l> is an integer for every l in P.
bool char_eq_on(const IntSubgroup& P, const CharacterVector& t1, const CharacterVector& t2);

// One term of a convergence-along instance: a subset of Z^k (finite list or
// a subgroup) together with a character.
struct AlongSample {
  bool is_subgroup = false;
  IntSubgroup subgroup;
  std::vector<std::vector<Int>> finite;
  CharacterVector chi;

  bool set_contains(const std::vector<Int>& gamma) const;
};

// Finite-horizon convergence along sets: for every gamma in test_set there
// must be a sample index N such that all later samples whose set contains
// gamma are eps-close at gamma (exact chordal comparison).
bool converges_along(const std::vector<AlongSample>& samples, const CharacterVector& limit,
                     const std::vector<std::vector<Int>>& test_set, const Ratio& eps);

}  // namespace primtop
