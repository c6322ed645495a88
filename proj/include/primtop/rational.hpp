#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace primtop {

using Int = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p". Throws parse_error on garbage or q == 0.
Ratio parse_ratio(const std::string& s);

// Reduced "p/q", or just "p" when the denominator is 1.
std::string ratio_str(const Ratio& r);

// Point of the circle, measured in turns and normalized to [0,1).
class RationalAngle {
 public:
  RationalAngle() : v_(0) {}
  explicit RationalAngle(const Ratio& v);
  static RationalAngle parse(const std::string& s);

  const Ratio& value() const { return v_; }
  std::string str() const { return ratio_str(v_); }

  RationalAngle operator+(const RationalAngle& o) const;
  RationalAngle operator-(const RationalAngle& o) const;
  RationalAngle scaled(const Int& n) const;

  bool operator==(const RationalAngle& o) const { return v_ == o.v_; }
  bool operator!=(const RationalAngle& o) const { return v_ != o.v_; }
  bool operator<(const RationalAngle& o) const { return v_ < o.v_; }
  bool operator<=(const RationalAngle& o) const { return v_ <= o.v_; }
  bool operator>(const RationalAngle& o) const { return v_ > o.v_; }
  bool operator>=(const RationalAngle& o) const { return v_ >= o.v_; }

 private:
  Ratio v_;
};

// Distance between two circle points in turns, in [0, 1/2].
Ratio angular_distance(const RationalAngle& a, const RationalAngle& b);

// Exact decision of 2*sin(pi*d) < eps for rational d in [0,1/2], i.e. of
// |e^{2 pi i a} - e^{2 pi i b}| < eps where d is the angular distance.
// Rational-only: special angles are compared symbolically, the rest through
// shrinking rational enclosures of pi (the two sides can only coincide at
// the special angles, so the refinement terminates).
bool chord_dist_lt(const Ratio& angular_dist, const Ratio& eps);
bool chord_lt(const RationalAngle& a, const RationalAngle& b, const Ratio& eps);

}  // namespace primtop
