#include <algorithm>

#include "primtop_ref.hpp"

namespace primtop::ref {

namespace {

// every degree vector <= bound, in lexicographic order
std::vector<Degree> degree_box(const Degree& bound) {
  std::vector<Degree> out{Degree(bound.size(), 0)};
  for (size_t c = 0; c < bound.size(); ++c) {
    std::vector<Degree> next;
    for (const auto& d : out)
      for (int x = 0; x <= bound[c]; ++x) {
        Degree d2 = d;
        d2[c] = x;
        next.push_back(d2);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<KPath> paths_with_source(const KGraphSkeleton& sk, const std::vector<int>& members,
                                     int source, const Degree& deg_exact) {
  std::vector<KPath> out;
  for (int w : members)
    for (const auto& p : paths_with_range(sk, members, w, deg_exact, true))
      if (p.source_v == source) out.push_back(p);
  return out;
}

}  // namespace

bool path_equiv_bruteforce(const KGraphSkeleton& sk, const KTail& M, const KPath& mu,
                           const KPath& nu, const Degree& depth) {
  // mu ~ nu iff (mu lambda)(0,n) == (nu lambda)(0,n) for every extension
  // lambda and every comparable n
  for (const auto& lam : paths_with_range(sk, M.members, mu.source_v, depth, false)) {
    KPath a = compose(sk, mu, lam);
    KPath b = compose(sk, nu, lam);
    Degree top = deg_min(a.deg, b.deg);
    for (const auto& n : degree_box(top))
      if (!(segment(sk, a, deg_zero(sk.k), n) == segment(sk, b, deg_zero(sk.k), n)))
        return false;
  }
  return true;
}

IntSubgroup per_subgroup_bruteforce(const KGraphSkeleton& sk, const KTail& M, const Degree& B,
                                    const Degree& depth) {
  std::vector<KPath> all;
  for (int v : M.members) {
    auto ps = paths_with_range(sk, M.members, v, B, false);
    all.insert(all.end(), ps.begin(), ps.end());
  }
  std::vector<std::vector<Int>> gens;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].source_v != all[j].source_v) continue;
      if (all[i].deg == all[j].deg) continue;
      if (!path_equiv_bruteforce(sk, M, all[i], all[j], depth)) continue;
      std::vector<Int> diff(sk.k);
      for (int c = 0; c < sk.k; ++c) diff[c] = Int(all[i].deg[c] - all[j].deg[c]);
      gens.push_back(diff);
    }
  return IntSubgroup::from_generators(sk.k, gens);
}

std::vector<int> m_per_bruteforce(const KGraphSkeleton& sk, const KTail& M,
                                  const IntSubgroup& per, const Degree& depth) {
  std::vector<int> out;
  for (int v : M.members) {
    bool good = true;
    for (const auto& lam : paths_with_range(sk, M.members, v, depth, false)) {
      for (const auto& m : degree_box(depth)) {
        std::vector<Int> diff(sk.k);
        for (int c = 0; c < sk.k; ++c) diff[c] = Int(lam.deg[c] - m[c]);
        bool zero = true;
        for (const auto& x : diff)
          if (x != 0) zero = false;
        if (zero) continue;
        if (!per.contains(diff)) continue;
        bool exists = false;
        for (const auto& mu : paths_with_source(sk, M.members, lam.source_v, m))
          if (path_equiv_bruteforce(sk, M, lam, mu, depth)) {
            exists = true;
            break;
          }
        if (!exists) {
          good = false;
          break;
        }
      }
      if (!good) break;
    }
    if (good) out.push_back(v);
  }
  return out;
}

}  // namespace primtop::ref
