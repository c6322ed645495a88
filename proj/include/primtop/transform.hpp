#pragma once

#include <map>
#include <string>
#include <vector>

#include "primtop/lattice.hpp"

namespace primtop {

// Finite group presented by its Cayley table.
struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // table[g][h] = g*h
  int identity = -1;

  int order() const { return static_cast<int>(names.size()); }
  int mul(int g, int h) const { return table[g][h]; }
  int inv(int g) const;
  void validate();  // fills identity; checks Latin square and associativity
};

// Action of a finite group on a finite set, validated at load.
struct FiniteAction {
  FiniteGroup group;
  std::vector<std::string> xnames;
  std::vector<std::vector<int>> act;  // act[g][x]

  int nx() const { return static_cast<int>(xnames.size()); }
  int point(const std::string& name) const;
  void validate();
};

struct Subgroup {
  std::vector<int> elements;  // sorted, contains the identity
  bool abelian = false;
};

Subgroup stabilizer(const FiniteAction& a, int x);

// Character of a finite abelian subgroup as angle values indexed like
// `elements` of the subgroup.
struct SubgroupCharacter {
  std::vector<int> elements;
  std::vector<RationalAngle> values;

  RationalAngle at(int g) const;  // g must be in elements
  bool operator==(const SubgroupCharacter& o) const = default;
  bool operator<(const SubgroupCharacter& o) const;
};

// All |H| characters, through the Smith normal form of the relation matrix
// read off the Cayley table. Throws NonAbelianStabilizer on non-abelian H.
std::vector<SubgroupCharacter> dual_group(const FiniteGroup& g, const Subgroup& h);

// Point of Stab^ for a finite transformation groupoid: a point of X with a
// character of its stabilizer.
struct DeltaPoint {
  int x = -1;
  SubgroupCharacter chi;
  bool operator==(const DeltaPoint& o) const = default;
  bool operator<(const DeltaPoint& o) const {
    return x != o.x ? x < o.x : chi < o.chi;
  }
};

struct StabHat {
  std::vector<DeltaPoint> points;                  // sorted
  std::vector<std::vector<int>> orbits;            // indices into points
};

// Delta with its G-action g(x,chi) = (gx, chi(g^{-1} . g)). Throws
// NonAbelianStabilizer when some stabilizer is non-abelian.
StabHat stab_hat(const FiniteAction& a);

// Orbit partition of Delta; on a finite discrete space these are the
// quasi-orbits.
std::vector<std::vector<DeltaPoint>> quasi_orbit_space(const FiniteAction& a);

// The image of a Delta point under g.
DeltaPoint delta_act(const FiniteAction& a, int g, const DeltaPoint& p);

}  // namespace primtop
