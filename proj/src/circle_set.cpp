#include "primtop/circle_set.hpp"

#include <algorithm>

#include "primtop/errors.hpp"

namespace primtop {

namespace {

// Line interval [s, e] with 0 <= s < 1, s < e (may extend past 1 to encode
// wrap-around). Scratch representation during canonicalization.
struct Seg {
  Ratio s, e;
};

}  // namespace

CircleSet CircleSet::full_circle() {
  CircleSet c;
  c.full_ = true;
  return c;
}

CircleSet CircleSet::point(const RationalAngle& a) {
  CircleSet c;
  c.points_.push_back(a);
  return c;
}

CircleSet CircleSet::arc(const RationalAngle& a, const RationalAngle& b) {
  Ratio len = (b - a).value();
  if (len == 0) return point(a);
  Arc arc{a, len};
  return make({}, {arc}, false);
}

CircleSet CircleSet::make(std::vector<RationalAngle> points, std::vector<Arc> arcs, bool full) {
  CircleSet out;
  if (full) {
    out.full_ = true;
    return out;
  }
  std::vector<Seg> segs;
  for (const auto& a : arcs) {
    if (a.len <= 0) throw domain_error("BadArc", "arc length must be positive");
    if (a.len >= 1) {
      out.full_ = true;
      return out;
    }
    segs.push_back({a.start.value(), a.start.value() + a.len});
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.s < y.s; });
  std::vector<Seg> merged;
  for (const auto& sg : segs) {
    if (!merged.empty() && sg.s <= merged.back().e)
      merged.back().e = std::max(merged.back().e, sg.e);
    else
      merged.push_back(sg);
  }
  // Wrap: the last interval may reach past 1 and swallow intervals at the
  // start (touching counts, these are closed arcs).
  if (!merged.empty() && merged.back().e >= 1) {
    Seg last = merged.back();
    merged.pop_back();
    while (!merged.empty() && last.e - 1 >= merged.front().s) {
      last.e = std::max(last.e, Ratio(merged.front().e + 1));
      merged.erase(merged.begin());
    }
    if (last.e - last.s >= 1) {
      out.full_ = true;
      return out;
    }
    merged.push_back(last);
  }
  for (const auto& sg : merged)
    out.arcs_.push_back({RationalAngle(sg.s), sg.e - sg.s});
  std::sort(out.arcs_.begin(), out.arcs_.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    bool covered = false;
    for (const auto& a : out.arcs_) {
      Ratio rel = (p - a.start).value();
      if (rel <= a.len) {
        covered = true;
        break;
      }
    }
    if (!covered) out.points_.push_back(p);
  }
  return out;
}

bool CircleSet::contains(const RationalAngle& a) const {
  if (full_) return true;
  for (const auto& p : points_)
    if (p == a) return true;
  for (const auto& arc : arcs_) {
    Ratio rel = (a - arc.start).value();
    if (rel <= arc.len) return true;
  }
  return false;
}

bool CircleSet::interior_contains(const RationalAngle& a) const {
  if (full_) return true;
  for (const auto& arc : arcs_) {
    Ratio rel = (a - arc.start).value();
    if (rel > 0 && rel < arc.len) return true;
  }
  return false;
}

CircleSet circle_union(const CircleSet& a, const CircleSet& b) {
  if (a.is_full() || b.is_full()) return CircleSet::full_circle();
  std::vector<RationalAngle> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  std::vector<CircleSet::Arc> arcs = a.arcs();
  arcs.insert(arcs.end(), b.arcs().begin(), b.arcs().end());
  return CircleSet::make(std::move(pts), std::move(arcs), false);
}

CircleSet circle_intersect(const CircleSet& a, const CircleSet& b) {
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  std::vector<RationalAngle> pts;
  std::vector<CircleSet::Arc> arcs;
  for (const auto& p : a.points())
    if (b.contains(p)) pts.push_back(p);
  for (const auto& p : b.points())
    if (a.contains(p)) pts.push_back(p);
  for (const auto& x : a.arcs()) {
    Ratio xs = x.start.value(), xe = xs + x.len;
    for (const auto& y : b.arcs()) {
      for (int shift = -1; shift <= 1; ++shift) {
        Ratio ys = y.start.value() + shift, ye = ys + y.len;
        Ratio s = std::max(xs, ys), e = std::min(xe, ye);
        if (s < e)
          arcs.push_back({RationalAngle(s), e - s});
        else if (s == e)
          pts.push_back(RationalAngle(s));
      }
    }
  }
  return CircleSet::make(std::move(pts), std::move(arcs), false);
}

bool circle_eq(const CircleSet& a, const CircleSet& b) { return a == b; }

CircleSet circle_rotate(const CircleSet& c, const RationalAngle& a) {
  if (c.is_full()) return c;
  std::vector<RationalAngle> pts;
  for (const auto& p : c.points()) pts.push_back(p + a);
  std::vector<CircleSet::Arc> arcs;
  for (const auto& arc : c.arcs()) arcs.push_back({arc.start + a, arc.len});
  return CircleSet::make(std::move(pts), std::move(arcs), false);
}

bool circle_invariant_p(const CircleSet& c, const Int& p) {
  if (p < 1) throw domain_error("BadPeriod", "p must be >= 1");
  return c == circle_rotate(c, RationalAngle(Ratio(1, p)));
}

CircleSet circle_power_image(const CircleSet& c, const Int& p) {
  if (p < 1) throw domain_error("BadPeriod", "p must be >= 1");
  if (c.is_full()) return c;
  std::vector<RationalAngle> pts;
  for (const auto& q : c.points()) pts.push_back(q.scaled(p));
  std::vector<CircleSet::Arc> arcs;
  for (const auto& arc : c.arcs()) {
    Ratio len = arc.len * Ratio(p);
    if (len >= 1) return CircleSet::full_circle();
    arcs.push_back({arc.start.scaled(p), len});
  }
  return CircleSet::make(std::move(pts), std::move(arcs), false);
}

}  // namespace primtop
