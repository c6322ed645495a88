#include "primtop/sgds.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "primtop/errors.hpp"

namespace primtop {

int SGDS::point(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (xnames[i] == name) return i;
  throw parse_error("unknown point '" + name + "'");
}

void SGDS::validate() const {
  std::set<std::string> seen(xnames.begin(), xnames.end());
  if (seen.size() != xnames.size()) throw parse_error("duplicate point names");
  if (static_cast<int>(sigma.size()) != n()) throw parse_error("sigma has wrong length");
  for (int img : sigma)
    if (img < -1 || img >= n()) throw parse_error("sigma image out of range");
}

PeriodData period_data(const SGDS& s, int x) {
  if (x < 0 || x >= s.n()) throw domain_error("BadPoint", "point outside X");
  std::vector<int> order;     // orbit in visit order
  std::vector<int> pos(s.n(), -1);
  int cur = x;
  while (cur >= 0 && pos[cur] < 0) {
    pos[cur] = static_cast<int>(order.size());
    order.push_back(cur);
    cur = s.sigma[cur];
  }
  PeriodData out;
  if (cur < 0) return out;  // left dom before repeating
  out.finite = true;
  out.l = pos[cur];
  out.p = static_cast<long long>(order.size()) - pos[cur];
  return out;
}

Classification classify(const SGDS& s) {
  Classification c;
  for (int x = 0; x < s.n(); ++x) {
    if (period_data(s, x).finite)
      c.isolated_periodic.push_back(x);
    else
      c.aperiodic.push_back(x);
  }
  return c;
}

std::vector<std::vector<int>> quasi_orbits(const SGDS& s) {
  // x ~ sigma(x) generates the relation; on a finite deterministic system the
  // classes are the weak components of the transition graph
  std::vector<int> parent(s.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int x = 0; x < s.n(); ++x)
    if (s.sigma[x] >= 0) parent[find(x)] = find(s.sigma[x]);
  std::map<int, std::vector<int>> cls;
  for (int x = 0; x < s.n(); ++x) cls[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, mem] : cls) {
    std::sort(mem.begin(), mem.end());
    out.push_back(mem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SgdsSpectrum sgds_prim(const SGDS& s) {
  SgdsSpectrum out;
  for (const auto& orbit : quasi_orbits(s)) {
    PeriodData pd = period_data(s, orbit[0]);
    if (pd.finite) {
      SgdsSpectrum::Fiber f;
      f.orbit = orbit;
      f.period = pd.p;
      out.periodic_fibers.push_back(std::move(f));
    } else {
      out.aperiodic_orbits.push_back(orbit);
    }
  }
  return out;
}

YReport validate_Y(const SGDS& s, const std::map<int, CircleSet>& Y) {
  for (int x = 0; x < s.n(); ++x)
    if (!Y.count(x)) throw parse_error("Y misses point '" + s.xnames[x] + "'");
  YReport rep;
  rep.vacuous.push_back(
      "closedness of Y in X x T is structural for circle-set values on a finite discrete X");
  rep.vacuous.push_back(
      "the neighbourhood clause of condition (iii) holds with V = {x0} on a discrete X");
  for (int x = 0; x < s.n(); ++x) {
    if (s.sigma[x] < 0) continue;
    if (!(Y.at(x) == Y.at(s.sigma[x]))) {
      rep.valid = false;
      rep.violation = "condition (ii): Y_" + s.xnames[x] + " differs from Y_" +
                      s.xnames[s.sigma[x]];
      return rep;
    }
  }
  for (int x = 0; x < s.n(); ++x) {
    const CircleSet& yx = Y.at(x);
    if (yx.is_empty() || yx.is_full()) continue;
    PeriodData pd = period_data(s, x);
    if (!pd.finite) {
      rep.valid = false;
      rep.violation =
          "condition (iii): Y_" + s.xnames[x] + " is proper but the point is not periodic";
      return rep;
    }
    if (!circle_invariant_p(yx, Int(pd.p))) {
      rep.valid = false;
      rep.violation = "condition (iii): Y_" + s.xnames[x] + " is not invariant under rotation by 1/" +
                      std::to_string(pd.p);
      return rep;
    }
  }
  rep.valid = true;
  return rep;
}

}  // namespace primtop
