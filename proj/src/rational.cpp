#include "primtop/rational.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "primtop/errors.hpp"

namespace primtop {

Ratio parse_ratio(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  std::string num, den;
  auto slash = s.find('/');
  num = s.substr(0, slash);
  if (slash != std::string::npos) den = s.substr(slash + 1);
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!is_int(num) || (slash != std::string::npos && !is_int(den)))
    throw parse_error("bad rational literal '" + s + "'");
  Int p(num);
  Int q = (slash == std::string::npos) ? Int(1) : Int(den);
  if (q == 0) throw parse_error("zero denominator in '" + s + "'");
  return Ratio(p, q);
}

std::string ratio_str(const Ratio& r) {
  Int p = numerator(r), q = denominator(r);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

static Ratio mod1(const Ratio& v) {
  Int p = numerator(v), q = denominator(v);
  Int m = p % q;
  if (m < 0) m += q;
  return Ratio(m, q);
}

RationalAngle::RationalAngle(const Ratio& v) : v_(mod1(v)) {}

RationalAngle RationalAngle::parse(const std::string& s) {
  return RationalAngle(parse_ratio(s));
}

RationalAngle RationalAngle::operator+(const RationalAngle& o) const {
  return RationalAngle(v_ + o.v_);
}

RationalAngle RationalAngle::operator-(const RationalAngle& o) const {
  return RationalAngle(v_ - o.v_);
}

RationalAngle RationalAngle::scaled(const Int& n) const {
  return RationalAngle(v_ * Ratio(n));
}

Ratio angular_distance(const RationalAngle& a, const RationalAngle& b) {
  Ratio d = (a - b).value();  // in [0,1)
  if (d > Ratio(1, 2)) d = Ratio(1) - d;
  return d;
}

namespace {

// 100 decimal digits of pi after the "3."
const char* kPiDigits =
    "1415926535897932384626433832795028841971693993751058209749445923"
    "078164062862089986280348253421170679";

// [lo, hi] enclosure of pi using `digits` decimals.
std::pair<Ratio, Ratio> pi_enclosure(int digits) {
  Int scale = 1;
  Int acc = 3;
  for (int i = 0; i < digits; ++i) {
    acc = acc * 10 + (kPiDigits[i] - '0');
    scale *= 10;
  }
  return {Ratio(acc, scale), Ratio(acc + 1, scale)};
}

// Alternating Maclaurin series with tail bounded by the first omitted term.
// Valid for 0 <= t < sqrt(6); we only call with t < 1.
std::pair<Ratio, Ratio> sin_enclosure(const Ratio& t, const Ratio& tol) {
  Ratio term = t, sum = t, t2 = t * t;
  int j = 1;
  while (true) {
    term = term * t2 / Ratio(2 * j * (2 * j + 1));
    if (term < tol || j > 80) break;
    sum += (j % 2 == 1) ? -term : term;
    ++j;
  }
  return {sum - term, sum + term};
}

std::pair<Ratio, Ratio> cos_enclosure(const Ratio& t, const Ratio& tol) {
  Ratio term(1), sum(1), t2 = t * t;
  int j = 1;
  while (true) {
    term = term * t2 / Ratio((2 * j - 1) * 2 * j);
    if (term < tol || j > 80) break;
    sum += (j % 2 == 1) ? -term : term;
    ++j;
  }
  return {sum - term, sum + term};
}

Ratio pow10_inv(int digits) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  return Ratio(1, scale);
}

}  // namespace

bool chord_dist_lt(const Ratio& angular_dist, const Ratio& eps) {
  Ratio d = angular_dist;
  if (d < 0 || d > Ratio(1, 2)) throw domain_error("BadAngle", "angular distance outside [0,1/2]");
  if (eps <= 0) return false;
  // Angles where the chord is rational: d = 0, 1/6, 1/2 give 0, 1, 2.
  if (d == 0) return true;
  if (d == Ratio(1, 6)) return Ratio(1) < eps;
  if (d == Ratio(1, 2)) return Ratio(2) < eps;
  if (eps >= 2) return true;
  // fast path: double arithmetic errs by far less than this margin, so a
  // comparison outside it is already exact; ties fall through to intervals
  {
    double chord = 2.0 * std::sin(3.14159265358979323846 * d.convert_to<double>());
    double e = eps.convert_to<double>();
    if (chord < e - 1e-9) return true;
    if (chord > e + 1e-9) return false;
  }
  for (int digits = 20; digits <= 100; digits += 20) {
    auto [pl, ph] = pi_enclosure(digits);
    Ratio tol = pow10_inv(digits + 5);
    Ratio lo, hi;
    if (d <= Ratio(1, 4)) {
      // chord = 2 sin(pi d), sin increasing on this range
      auto a = sin_enclosure(pl * d, tol);
      auto b = sin_enclosure(ph * d, tol);
      lo = 2 * a.first;
      hi = 2 * b.second;
    } else {
      // chord = 2 cos(pi (1/2 - d)), cos decreasing on this range
      Ratio c = Ratio(1, 2) - d;
      auto a = cos_enclosure(ph * c, tol);
      auto b = cos_enclosure(pl * c, tol);
      lo = 2 * a.first;
      hi = 2 * b.second;
    }
    if (hi < eps) return true;
    if (lo > eps) return false;
  }
  throw domain_error("ChordUndecided",
                     "chord comparison undecided at maximal precision (angular distance " +
                         ratio_str(d) + " vs eps " + ratio_str(eps) + ")");
}

bool chord_lt(const RationalAngle& a, const RationalAngle& b, const Ratio& eps) {
  return chord_dist_lt(angular_distance(a, b), eps);
}

}  // namespace primtop
