#pragma once

#include <utility>
#include <vector>

#include "primtop/rational.hpp"

namespace primtop {

// Closed subset of the circle: a finite union of rational points and closed
// arcs with rational endpoints. Always held in canonical form: arcs are
// pairwise disjoint, non-touching, sorted by start angle; points lie outside
// every arc; a union covering the whole circle collapses to `full`.
class CircleSet {
 public:
  // Arc [start, start+len] going counterclockwise, 0 < len < 1.
  struct Arc {
    RationalAngle start;
    Ratio len;
    bool operator==(const Arc& o) const { return start == o.start && len == o.len; }
  };

  CircleSet() = default;  // empty set

  static CircleSet empty_set() { return CircleSet(); }
  static CircleSet full_circle();
  static CircleSet point(const RationalAngle& a);
  // endpoints given as circle points; [a,b] runs counterclockwise from a to b
  static CircleSet arc(const RationalAngle& a, const RationalAngle& b);
  static CircleSet make(std::vector<RationalAngle> points, std::vector<Arc> arcs, bool full);

  bool is_full() const { return full_; }
  bool is_empty() const { return !full_ && points_.empty() && arcs_.empty(); }
  const std::vector<RationalAngle>& points() const { return points_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool contains(const RationalAngle& a) const;
  // Strict interior: inside an arc (endpoints excluded) or the full circle.
  bool interior_contains(const RationalAngle& a) const;

  bool operator==(const CircleSet& o) const {
    return full_ == o.full_ && points_ == o.points_ && arcs_ == o.arcs_;
  }

 private:
  bool full_ = false;
  std::vector<RationalAngle> points_;
  std::vector<Arc> arcs_;
};

CircleSet circle_union(const CircleSet& a, const CircleSet& b);
CircleSet circle_intersect(const CircleSet& a, const CircleSet& b);
bool circle_eq(const CircleSet& a, const CircleSet& b);
CircleSet circle_rotate(const CircleSet& c, const RationalAngle& a);
// C == rotation of C by 1/p
bool circle_invariant_p(const CircleSet& c, const Int& p);
// {w : w = z^p for some z in C}; an arc of length >= 1/p saturates to the
// full circle.
CircleSet circle_power_image(const CircleSet& c, const Int& p);

}  // namespace primtop
