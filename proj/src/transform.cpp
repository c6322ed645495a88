#include "primtop/transform.hpp"

#include <algorithm>
#include <set>

#include "primtop/errors.hpp"

namespace primtop {

int FiniteGroup::inv(int g) const {
  for (int h = 0; h < order(); ++h)
    if (mul(g, h) == identity) return h;
  throw domain_error("BadGroup", "element without inverse");
}

void FiniteGroup::validate() {
  int n = order();
  if (n == 0) throw parse_error("empty group");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw parse_error("duplicate group element names");
  if (static_cast<int>(table.size()) != n) throw parse_error("Cayley table has wrong shape");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw parse_error("Cayley table has wrong shape");
    for (int v : row)
      if (v < 0 || v >= n) throw parse_error("Cayley table entry out of range");
  }
  identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      if (mul(e, g) != g || mul(g, e) != g) ok = false;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw parse_error("Cayley table has no identity");
  // Latin square
  for (int g = 0; g < n; ++g) {
    std::set<int> row(table[g].begin(), table[g].end());
    std::set<int> col;
    for (int h = 0; h < n; ++h) col.insert(mul(h, g));
    if (static_cast<int>(row.size()) != n || static_cast<int>(col.size()) != n)
      throw parse_error("Cayley table is not a Latin square");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw parse_error("Cayley table is not associative");
  for (int g = 0; g < n; ++g) inv(g);  // throws if some inverse is missing
}

int FiniteAction::point(const std::string& name) const {
  for (int i = 0; i < nx(); ++i)
    if (xnames[i] == name) return i;
  throw parse_error("unknown point '" + name + "'");
}

void FiniteAction::validate() {
  group.validate();
  std::set<std::string> seen(xnames.begin(), xnames.end());
  if (seen.size() != xnames.size()) throw parse_error("duplicate point names");
  if (static_cast<int>(act.size()) != group.order()) throw parse_error("action table wrong shape");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != nx()) throw parse_error("action table wrong shape");
    for (int v : row)
      if (v < 0 || v >= nx()) throw parse_error("action image out of range");
  }
  for (int x = 0; x < nx(); ++x)
    if (act[group.identity][x] != x) throw parse_error("identity does not act trivially");
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      for (int x = 0; x < nx(); ++x)
        if (act[group.mul(g, h)][x] != act[g][act[h][x]])
          throw parse_error("action is not compatible with the group law");
}

Subgroup stabilizer(const FiniteAction& a, int x) {
  if (x < 0 || x >= a.nx()) throw domain_error("BadPoint", "point outside X");
  Subgroup s;
  for (int g = 0; g < a.group.order(); ++g)
    if (a.act[g][x] == x) s.elements.push_back(g);
  s.abelian = true;
  for (int g : s.elements)
    for (int h : s.elements)
      if (a.group.mul(g, h) != a.group.mul(h, g)) s.abelian = false;
  return s;
}

RationalAngle SubgroupCharacter::at(int g) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == g) return values[i];
  throw domain_error("BadElement", "element outside the character's domain");
}

bool SubgroupCharacter::operator<(const SubgroupCharacter& o) const {
  if (elements != o.elements) return elements < o.elements;
  return values < o.values;
}

std::vector<SubgroupCharacter> dual_group(const FiniteGroup& g, const Subgroup& h) {
  if (!h.abelian)
    throw domain_error("NonAbelianStabilizer", "characters need an abelian subgroup");
  int m = static_cast<int>(h.elements.size());
  std::vector<int> index_of(g.order(), -1);
  for (int i = 0; i < m; ++i) index_of[h.elements[i]] = i;
  // relations e_i + e_j - e_{ij} over the generators = all elements
  std::vector<std::vector<Int>> rel;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = g.mul(h.elements[i], h.elements[j]);
      if (index_of[p] < 0)
        throw domain_error("BadGroup", "subgroup is not closed under the group law");
      std::vector<Int> row(m, Int(0));
      row[i] += 1;
      row[j] += 1;
      row[index_of[p]] -= 1;
      rel.push_back(std::move(row));
    }
  IMat R = hermite_rows(IntSubgroup::from_generators(m, rel).basis);
  auto [U, D, V] = smith_normal_form(R);
  // characters: all sums of c_i * (column i of V) / d_i with 0 <= c_i < d_i
  std::vector<std::vector<RationalAngle>> basis;
  std::vector<long long> orders;
  int mn = std::min(R.rows, m);
  for (int i = 0; i < m; ++i) {
    Int d = i < mn ? D.at(i, i) : Int(0);
    if (d == 0)
      throw domain_error("BadGroup", "relation lattice of a finite group must have full rank");
    if (d == 1) continue;
    std::vector<RationalAngle> col(m);
    for (int r = 0; r < m; ++r) col[r] = RationalAngle(Ratio(V.at(r, i), d));
    basis.push_back(col);
    orders.push_back(d.convert_to<long long>());
  }
  std::vector<SubgroupCharacter> out;
  std::vector<long long> counter(orders.size(), 0);
  while (true) {
    SubgroupCharacter c;
    c.elements = h.elements;
    c.values.assign(m, RationalAngle());
    for (size_t b = 0; b < basis.size(); ++b)
      for (int r = 0; r < m; ++r) c.values[r] = c.values[r] + basis[b][r].scaled(Int(counter[b]));
    out.push_back(std::move(c));
    size_t pos = 0;
    while (pos < counter.size() && ++counter[pos] == orders[pos]) counter[pos++] = 0;
    if (pos == counter.size()) break;
  }
  if (out.size() != static_cast<size_t>(m))
    throw domain_error("BadGroup", "character count differs from the subgroup order");
  std::sort(out.begin(), out.end());
  return out;
}

DeltaPoint delta_act(const FiniteAction& a, int g, const DeltaPoint& p) {
  DeltaPoint q;
  q.x = a.act[g][p.x];
  Subgroup sq = stabilizer(a, q.x);
  q.chi.elements = sq.elements;
  int gi = a.group.inv(g);
  for (int h : sq.elements)
    q.chi.values.push_back(p.chi.at(a.group.mul(a.group.mul(gi, h), g)));
  return q;
}

StabHat stab_hat(const FiniteAction& a) {
  StabHat out;
  for (int x = 0; x < a.nx(); ++x) {
    Subgroup s = stabilizer(a, x);
    if (!s.abelian)
      throw domain_error("NonAbelianStabilizer",
                         "point '" + a.xnames[x] + "' has a non-abelian stabilizer");
    for (auto& chi : dual_group(a.group, s)) {
      DeltaPoint p;
      p.x = x;
      p.chi = std::move(chi);
      out.points.push_back(std::move(p));
    }
  }
  std::sort(out.points.begin(), out.points.end());
  // orbit partition
  std::vector<int> owner(out.points.size(), -1);
  auto find_point = [&](const DeltaPoint& p) {
    auto it = std::lower_bound(out.points.begin(), out.points.end(), p);
    if (it == out.points.end() || !(*it == p))
      throw domain_error("BadAction", "orbit left the Delta point set");
    return static_cast<int>(it - out.points.begin());
  };
  for (size_t i = 0; i < out.points.size(); ++i) {
    if (owner[i] >= 0) continue;
    std::vector<int> orbit;
    std::vector<int> todo{static_cast<int>(i)};
    owner[i] = static_cast<int>(i);
    while (!todo.empty()) {
      int cur = todo.back();
      todo.pop_back();
      orbit.push_back(cur);
      for (int g = 0; g < a.group.order(); ++g) {
        int img = find_point(delta_act(a, g, out.points[cur]));
        if (owner[img] < 0) {
          owner[img] = static_cast<int>(i);
          todo.push_back(img);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  std::sort(out.orbits.begin(), out.orbits.end());
  return out;
}

std::vector<std::vector<DeltaPoint>> quasi_orbit_space(const FiniteAction& a) {
  StabHat sh = stab_hat(a);
  std::vector<std::vector<DeltaPoint>> out;
  for (const auto& orbit : sh.orbits) {
    std::vector<DeltaPoint> cls;
    for (int i : orbit) cls.push_back(sh.points[i]);
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace primtop
