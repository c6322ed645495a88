#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "primtop/errors.hpp"
#include "primtop_ref.hpp"

namespace primtop::ref {

namespace {

Int gcd_of_minors(const IMat& a, int size) {
  // all size x size minors via row/column index combinations
  std::vector<int> rows(size), cols(size);
  Int g = 0;
  std::function<void(int, int)> pick_rows = [&](int start, int picked) {
    if (picked == size) {
      std::function<void(int, int)> pc = [&](int cstart, int cpicked) {
        if (cpicked == size) {
          IMat m(size, size);
          for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m.at(i, j) = a.at(rows[i], cols[j]);
          g = gcd(g, det(m));
          return;
        }
        for (int c = cstart; c < a.cols; ++c) {
          cols[cpicked] = c;
          pc(c + 1, cpicked + 1);
        }
      };
      pc(0, 0);
      return;
    }
    for (int r = start; r < a.rows; ++r) {
      rows[picked] = r;
      pick_rows(r + 1, picked + 1);
    }
  };
  pick_rows(0, 0);
  return g < 0 ? Int(-g) : g;
}

}  // namespace

std::vector<Int> snf_diagonal_by_minors(const IMat& a) {
  int n = std::min(a.rows, a.cols);
  std::vector<Int> d(n, Int(0));
  Int prev(1);
  for (int i = 1; i <= n; ++i) {
    Int gi = gcd_of_minors(a, i);
    if (gi == 0) break;  // all further diagonal entries vanish
    d[i - 1] = gi / prev;
    prev = gi;
  }
  return d;
}

bool katsura_filter(const SGDS& s, const std::map<int, FiniteY>& Y) {
  // (ii) equality along sigma
  for (int x = 0; x < s.n(); ++x) {
    if (s.sigma[x] < 0) continue;
    if (!(Y.at(x) == Y.at(s.sigma[x]))) return false;
  }
  // (iii) proper nonempty values force periodicity and pointwise rotation
  // invariance
  for (int x = 0; x < s.n(); ++x) {
    const FiniteY& y = Y.at(x);
    if (y.full || y.points.empty()) continue;
    PeriodData pd = period_data(s, x);
    if (!pd.finite) return false;
    RationalAngle rot{Ratio(1, Int(pd.p))};
    std::vector<RationalAngle> rotated;
    for (const auto& a : y.points) rotated.push_back(a + rot);
    std::sort(rotated.begin(), rotated.end());
    if (rotated != y.points) return false;
  }
  return true;
}

std::vector<SubgroupCharacter> dual_group_bruteforce(const FiniteGroup& g, const Subgroup& h) {
  if (!h.abelian) throw domain_error("NonAbelianStabilizer", "need an abelian subgroup");
  int m = static_cast<int>(h.elements.size());
  std::vector<int> index_of(g.order(), -1);
  for (int i = 0; i < m; ++i) index_of[h.elements[i]] = i;
  // greedy generating set
  std::vector<int> gens;
  std::set<int> span{g.identity};
  auto close = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(span.begin(), span.end());
      for (int a : cur)
        for (int b : cur)
          if (span.insert(g.mul(a, b)).second) grew = true;
    }
  };
  for (int e : h.elements)
    if (!span.count(e)) {
      gens.push_back(e);
      span.insert(e);
      close();
    }
  // element order
  auto order_of = [&](int e) {
    int o = 1, cur = e;
    while (cur != g.identity) {
      cur = g.mul(cur, e);
      ++o;
    }
    return o;
  };
  long long exponent = 1;
  for (int e : h.elements) exponent = std::lcm(exponent, static_cast<long long>(order_of(e)));

  // homomorphisms from generator images with angles k/exponent
  std::vector<SubgroupCharacter> out;
  std::vector<long long> counter(gens.size(), 0);
  std::set<std::vector<RationalAngle>> seen;
  while (true) {
    // try to extend to the whole subgroup by word decomposition
    std::vector<RationalAngle> vals(m);
    std::vector<char> known(m, 0);
    known[index_of[g.identity]] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t gi = 0; gi < gens.size(); ++gi)
        for (int i = 0; i < m; ++i) {
          if (!known[i]) continue;
          int p = g.mul(h.elements[i], gens[gi]);
          int pi = index_of[p];
          RationalAngle nv = vals[i] + RationalAngle(Ratio(counter[gi], exponent));
          if (!known[pi]) {
            vals[pi] = nv;
            known[pi] = 1;
            grew = true;
          }
        }
    }
    bool consistent = std::all_of(known.begin(), known.end(), [](char c) { return c == 1; });
    for (int i = 0; i < m && consistent; ++i)
      for (int j = 0; j < m && consistent; ++j) {
        int p = index_of[g.mul(h.elements[i], h.elements[j])];
        if (!(vals[i] + vals[j] == vals[p])) consistent = false;
      }
    if (consistent && seen.insert(vals).second) {
      SubgroupCharacter c;
      c.elements = h.elements;
      c.values = vals;
      out.push_back(std::move(c));
    }
    size_t pos = 0;
    while (pos < counter.size() && ++counter[pos] == exponent) counter[pos++] = 0;
    if (pos == counter.size() || counter.empty()) break;
  }
  if (gens.empty()) {
    SubgroupCharacter c;
    c.elements = h.elements;
    c.values.assign(m, RationalAngle());
    out = {c};
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace primtop::ref
