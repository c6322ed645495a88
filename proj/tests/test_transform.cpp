#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "primtop/errors.hpp"
#include "primtop/transform.hpp"
#include "primtop_ref.hpp"

using namespace primtop;

namespace {

FiniteGroup cyclic(int n) {
  FiniteGroup g;
  for (int i = 0; i < n; ++i) g.names.push_back("g" + std::to_string(i));
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  g.validate();
  return g;
}

FiniteGroup klein4() {
  FiniteGroup g;
  g.names = {"e", "a", "b", "c"};
  g.table = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  g.validate();
  return g;
}

FiniteGroup sym3() {
  // permutations of {0,1,2}: e, (01), (02), (12), (012), (021)
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  FiniteGroup g;
  for (int i = 0; i < 6; ++i) g.names.push_back("p" + std::to_string(i));
  g.table.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> comp;
      for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
      for (int c = 0; c < 6; ++c)
        if (perms[c] == comp) g.table[a][b] = c;
    }
  g.validate();
  return g;
}

FiniteAction trivial_action(FiniteGroup g, int npoints) {
  FiniteAction a;
  a.group = std::move(g);
  for (int i = 0; i < npoints; ++i) a.xnames.push_back("x" + std::to_string(i));
  a.act.assign(a.group.order(), {});
  for (int gi = 0; gi < a.group.order(); ++gi) {
    a.act[gi].resize(npoints);
    for (int x = 0; x < npoints; ++x) a.act[gi][x] = x;
  }
  a.validate();
  return a;
}

FiniteAction z2_swap() {
  FiniteAction a;
  a.group = cyclic(2);
  a.xnames = {"x", "y"};
  a.act = {{0, 1}, {1, 0}};
  a.validate();
  return a;
}

// Z/n rotating n points
FiniteAction rotation_action(int n) {
  FiniteAction a;
  a.group = cyclic(n);
  for (int i = 0; i < n; ++i) a.xnames.push_back("x" + std::to_string(i));
  a.act.assign(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) a.act[g][x] = (x + g) % n;
  a.validate();
  return a;
}

}  // namespace

TEST_CASE("group validation") {
  CHECK(cyclic(5).identity == 0);
  CHECK(sym3().order() == 6);
  {
    FiniteGroup g;
    g.names = {"e", "a"};
    g.table = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(g.validate(), parse_error);  // not a Latin square
  }
}

TEST_CASE("stabilizers") {
  {
    FiniteAction a = trivial_action(cyclic(2), 1);
    Subgroup s = stabilizer(a, 0);
    CHECK(s.elements.size() == 2);
    CHECK(s.abelian);
  }
  {
    FiniteAction a = z2_swap();
    Subgroup s = stabilizer(a, 0);
    CHECK(s.elements == std::vector<int>{0});
    CHECK(s.abelian);
  }
  {
    FiniteAction a = trivial_action(sym3(), 1);
    Subgroup s = stabilizer(a, 0);
    CHECK(s.elements.size() == 6);
    CHECK_FALSE(s.abelian);
  }
}

TEST_CASE("dual groups") {
  {
    FiniteGroup g = cyclic(2);
    Subgroup h{{0, 1}, true};
    auto chars = dual_group(g, h);
    REQUIRE(chars.size() == 2);
    CHECK(chars[0].at(1) == RationalAngle());             // trivial character
    CHECK(chars[1].at(1) == RationalAngle::parse("1/2"));  // sign character
  }
  {
    FiniteGroup g = klein4();
    Subgroup h{{0, 1, 2, 3}, true};
    auto chars = dual_group(g, h);
    CHECK(chars.size() == 4);
    CHECK(chars == ref::dual_group_bruteforce(g, h));
  }
  {
    FiniteGroup g = cyclic(1);
    Subgroup h{{0}, true};
    CHECK(dual_group(g, h).size() == 1);
  }
  {
    FiniteGroup g = sym3();
    Subgroup h{{0, 1, 2, 3, 4, 5}, false};
    CHECK_THROWS_AS(dual_group(g, h), domain_error);
  }
  // brute-force agreement on cyclic groups and their subgroups
  for (int n = 2; n <= 8; ++n) {
    FiniteGroup g = cyclic(n);
    Subgroup whole;
    for (int i = 0; i < n; ++i) whole.elements.push_back(i);
    whole.abelian = true;
    CHECK(dual_group(g, whole) == ref::dual_group_bruteforce(g, whole));
  }
}

TEST_CASE("Delta points and quasi-orbits on the pinned examples") {
  {
    // Z/2 acting trivially on one point: two Delta points, two quasi-orbits
    StabHat sh = stab_hat(trivial_action(cyclic(2), 1));
    CHECK(sh.points.size() == 2);
    CHECK(sh.orbits.size() == 2);
  }
  {
    // swap: stabilizers trivial, Delta collapses to X, one quasi-orbit
    StabHat sh = stab_hat(z2_swap());
    CHECK(sh.points.size() == 2);
    CHECK(sh.orbits.size() == 1);
  }
  {
    // trivial group on two points: two quasi-orbits
    StabHat sh = stab_hat(trivial_action(cyclic(1), 2));
    CHECK(sh.points.size() == 2);
    CHECK(sh.orbits.size() == 2);
  }
  {
    FiniteAction a = trivial_action(sym3(), 1);
    CHECK_THROWS_AS(stab_hat(a), domain_error);
  }
}

TEST_CASE("Delta is well-defined on an action corpus") {
  std::vector<FiniteAction> corpus;
  corpus.push_back(trivial_action(cyclic(2), 3));
  corpus.push_back(trivial_action(cyclic(4), 2));
  corpus.push_back(trivial_action(klein4(), 2));
  corpus.push_back(trivial_action(cyclic(8), 1));
  corpus.push_back(z2_swap());
  corpus.push_back(rotation_action(2));
  corpus.push_back(rotation_action(3));
  corpus.push_back(rotation_action(4));
  {
    // Z/4 acting through its order-2 quotient on two points
    FiniteAction a;
    a.group = cyclic(4);
    a.xnames = {"x", "y"};
    a.act = {{0, 1}, {1, 0}, {0, 1}, {1, 0}};
    a.validate();
    corpus.push_back(a);
  }

  for (const auto& a : corpus) {
    StabHat sh = stab_hat(a);
    // |Delta over x| = |dual of G_x|
    for (int x = 0; x < a.nx(); ++x) {
      Subgroup s = stabilizer(a, x);
      size_t count = 0;
      for (const auto& p : sh.points)
        if (p.x == x) ++count;
      CHECK(count == s.elements.size());
    }
    // the action is by well-defined characters and permutes Delta
    for (int g = 0; g < a.group.order(); ++g)
      for (const auto& p : sh.points) {
        DeltaPoint q = delta_act(a, g, p);
        // q.chi is multiplicative on the stabilizer of q.x
        for (int h1 : q.chi.elements)
          for (int h2 : q.chi.elements)
            CHECK(q.chi.at(a.group.mul(h1, h2)) == q.chi.at(h1) + q.chi.at(h2));
        CHECK(std::binary_search(sh.points.begin(), sh.points.end(), q));
      }
    // restriction route: for abelian ambient groups the action on full
    // characters descends to the identified points
    bool abelian = true;
    for (int x = 0; x < a.group.order(); ++x)
      for (int y = 0; y < a.group.order(); ++y)
        if (a.group.mul(x, y) != a.group.mul(y, x)) abelian = false;
    if (abelian) {
      Subgroup whole;
      for (int i = 0; i < a.group.order(); ++i) whole.elements.push_back(i);
      whole.abelian = true;
      auto full_chars = dual_group(a.group, whole);
      for (const auto& chi : full_chars)
        for (int g = 0; g < a.group.order(); ++g)
          for (int x = 0; x < a.nx(); ++x) {
            // restrict then act
            Subgroup sx = stabilizer(a, x);
            DeltaPoint p;
            p.x = x;
            p.chi.elements = sx.elements;
            for (int h : sx.elements) p.chi.values.push_back(chi.at(h));
            DeltaPoint via_restriction = delta_act(a, g, p);
            // act on the full character then restrict
            DeltaPoint direct;
            direct.x = a.act[g][x];
            Subgroup sgx = stabilizer(a, direct.x);
            direct.chi.elements = sgx.elements;
            int gi = a.group.inv(g);
            for (int h : sgx.elements)
              direct.chi.values.push_back(chi.at(a.group.mul(a.group.mul(gi, h), g)));
            CHECK(via_restriction == direct);
          }
    }
    // equivariance: quasi-orbit classes are unions of X-orbit fibres
    auto orbits = quasi_orbit_space(a);
    for (const auto& cls : orbits) {
      std::set<int> xs;
      for (const auto& p : cls) xs.insert(p.x);
      for (int g = 0; g < a.group.order(); ++g)
        for (int x : xs) CHECK(xs.count(a.act[g][x]) == 1);
    }
  }
}
