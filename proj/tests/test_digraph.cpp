#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "primtop/digraph.hpp"
#include "primtop/errors.hpp"
#include "primtop_ref.hpp"
#include "support.hpp"

using namespace primtop;

namespace {

DirectedGraph make_graph(std::vector<std::string> vs,
                         std::vector<std::tuple<std::string, std::string, std::string, long long>> es) {
  DirectedGraph g;
  g.vnames = std::move(vs);
  for (auto& [name, src, rng_, mult] : es) {
    DirectedGraph::Edge e;
    e.name = name;
    e.source = g.vertex(src);
    e.range = g.vertex(rng_);
    e.mult = mult;
    g.edges.push_back(e);
  }
  g.validate();
  return g;
}

DirectedGraph g_pt() { return make_graph({"v"}, {}); }
DirectedGraph g_loop() { return make_graph({"v"}, {{"e", "v", "v", 1}}); }
DirectedGraph g_bv() {
  return make_graph({"v", "w"}, {{"e", "v", "v", 1}, {"f", "w", "v", kOmegaMult}});
}
DirectedGraph g_out() {
  return make_graph({"v", "w"}, {{"e", "v", "v", 1}, {"f", "v", "w", 1}});
}
DirectedGraph g_two_loops() {
  return make_graph({"v"}, {{"a", "v", "v", 1}, {"b", "v", "v", 1}});
}

std::vector<int> ids(const DirectedGraph& g, std::vector<std::string> names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(g.vertex(n));
  std::sort(out.begin(), out.end());
  return out;
}

bool tails_match(const std::vector<Tail>& a, const std::vector<Tail>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("components and condensation order") {
  {
    Components c = components(g_pt());
    CHECK(c.members.size() == 1);
  }
  {
    DirectedGraph g = g_bv();
    Components c = components(g);
    REQUIRE(c.members.size() == 2);
    int cv = c.comp_of[g.vertex("v")], cw = c.comp_of[g.vertex("w")];
    CHECK(cv != cw);
    CHECK(c.reach[cw][cv]);  // w reaches v
    CHECK_FALSE(c.reach[cv][cw]);
  }
  {
    DirectedGraph g = g_out();
    Components c = components(g);
    REQUIRE(c.members.size() == 2);
    CHECK(c.reach[c.comp_of[g.vertex("v")]][c.comp_of[g.vertex("w")]]);
  }
}

TEST_CASE("singular vertices") {
  CHECK(singular_vertices(g_pt()) == ids(g_pt(), {"v"}));
  CHECK(singular_vertices(g_loop()).empty());
  CHECK(singular_vertices(g_bv()) == ids(g_bv(), {"v", "w"}));
}

TEST_CASE("primitive loops") {
  CHECK(primitive_loops(g_loop()) == std::vector<std::vector<int>>{{0}});
  CHECK(primitive_loops(g_bv()) == std::vector<std::vector<int>>{{0}});
  CHECK(primitive_loops(g_pt()).empty());
  CHECK(primitive_loops(g_two_loops()).empty());  // two internal edges into v
}

TEST_CASE("maximal tails on the fixtures") {
  {
    auto ts = maximal_tails(g_pt());
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].members == ids(g_pt(), {"v"}));
    CHECK(ts[0].gamma);
    CHECK(ts[0].unique_least_no_loop == g_pt().vertex("v"));
  }
  {
    auto ts = maximal_tails(g_loop());
    REQUIRE(ts.size() == 1);
    CHECK_FALSE(ts[0].gamma);
    CHECK_FALSE(ts[0].unique_least_no_loop.has_value());
  }
  {
    DirectedGraph g = g_bv();
    auto ts = maximal_tails(g);
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].members == ids(g, {"v"}));
    CHECK_FALSE(ts[0].gamma);
    CHECK(ts[1].members == ids(g, {"v", "w"}));
    CHECK(ts[1].gamma);
    CHECK(ts[1].unique_least_no_loop == g.vertex("w"));
  }
}

TEST_CASE("maximal tails match the brute-force filter on the fixtures and corpus") {
  for (const auto& g : {g_pt(), g_loop(), g_bv(), g_out(), g_two_loops()})
    CHECK(tails_match(maximal_tails(g), ref::maximal_tails_bruteforce(g)));
  std::mt19937 rng(31);
  for (int it = 0; it < 60; ++it) {
    DirectedGraph g = test::random_graph(rng);
    CHECK(tails_match(maximal_tails(g), ref::maximal_tails_bruteforce(g)));
  }
}

TEST_CASE("every maximal tail is the up-closure of a qualifying component") {
  std::mt19937 rng(37);
  for (int it = 0; it < 60; ++it) {
    DirectedGraph g = test::random_graph(rng);
    Components c = components(g);
    for (const auto& t : maximal_tails(g)) {
      REQUIRE(t.least_component >= 0);
      const auto& comp = c.members[t.least_component];
      std::vector<char> up = up_closure(g, comp);
      std::vector<int> up_list;
      for (int v = 0; v < g.nv(); ++v)
        if (up[v]) up_list.push_back(v);
      CHECK(up_list == t.members);
      bool internal = c.has_internal_edge(g, t.least_component);
      if (!internal) {
        REQUIRE(comp.size() == 1);
        Card card = in_multiplicity(g, comp[0]);
        CHECK((card.infinite || card.n == 0));
      }
    }
  }
}

TEST_CASE("breaking vertices") {
  DirectedGraph g = g_bv();
  CHECK(breaking_vertices(g) == std::vector<int>{g.vertex("v")});
  CHECK(breaking_vertices(g_loop()).empty());
  CHECK(breaking_vertices(g_pt()).empty());
}

TEST_CASE("spectrum of the fixtures") {
  {
    PrimSpectrum s = prim_spectrum(g_pt());
    CHECK(s.gammas.size() == 1);
    CHECK(s.breakings.empty());
    CHECK(s.loops.empty());
  }
  {
    PrimSpectrum s = prim_spectrum(g_loop());
    CHECK(s.gammas.empty());
    CHECK(s.breakings.empty());
    CHECK(s.loops == std::vector<std::vector<int>>{{0}});
  }
  {
    DirectedGraph g = g_bv();
    PrimSpectrum s = prim_spectrum(g);
    REQUIRE(s.gammas.size() == 1);
    CHECK(s.gammas[0].members == ids(g, {"v", "w"}));
    CHECK(s.breakings == std::vector<int>{g.vertex("v")});
    CHECK(s.loops == std::vector<std::vector<int>>{{g.vertex("v")}});
  }
}

TEST_CASE("quasi-orbit representatives") {
  {
    DirectedGraph g = g_bv();
    auto ts = maximal_tails(g);
    QuasiOrbitRep r = quasi_orbit_representative(g, ts[1]);
    CHECK(r.is_vertex);
    CHECK(r.vertex == g.vertex("w"));
    CHECK_THROWS_AS(quasi_orbit_representative(g, ts[0]), domain_error);
  }
  {
    QuasiOrbitRep r = quasi_orbit_representative(g_pt(), maximal_tails(g_pt())[0]);
    CHECK(r.is_vertex);
  }
  {
    DirectedGraph g = g_two_loops();
    auto ts = maximal_tails(g);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].gamma);  // loop b is an entrance for loop a
    QuasiOrbitRep r = quasi_orbit_representative(g, ts[0]);
    REQUIRE_FALSE(r.is_vertex);
    CHECK(r.word.cycle_a.size() == 1);
    CHECK(r.word.cycle_b.size() == 1);
    CHECK(r.word.cycle_a != r.word.cycle_b);
    // the materialized word is aperiodic at test depth
    auto w = r.word.materialize(64);
    for (size_t p = 1; p <= 8; ++p) {
      bool periodic = true;
      for (size_t i = 0; i + p < w.size(); ++i)
        if (w[i] != w[i + p]) periodic = false;
      CHECK_FALSE(periodic);
    }
  }
}

TEST_CASE("specialization on G_BV") {
  DirectedGraph g = g_bv();
  PrimPoint gamma = PrimPoint::gamma(ids(g, {"v", "w"}));
  PrimPoint breaking = PrimPoint::breaking(g.vertex("v"));
  PrimPoint loop0 = PrimPoint::loop({g.vertex("v")}, RationalAngle());
  PrimPoint loop13 = PrimPoint::loop({g.vertex("v")}, RationalAngle::parse("1/3"));

  CHECK(specializes(g, gamma, breaking));
  CHECK(specializes(g, breaking, loop0));
  CHECK(specializes(g, breaking, loop13));
  CHECK(specializes(g, gamma, loop0));
  CHECK_FALSE(specializes(g, loop0, breaking));
  CHECK_FALSE(specializes(g, loop0, gamma));
  CHECK_FALSE(specializes(g, breaking, gamma));
  CHECK_FALSE(specializes(g, loop0, loop13));
  CHECK(specializes(g, loop13, loop13));

  PrimPoint bogus = PrimPoint::gamma({g.vertex("v")});
  CHECK_THROWS_AS(specializes(g, bogus, gamma), domain_error);
}

TEST_CASE("specializes agrees with the cylinder simulation oracle") {
  std::mt19937 rng(41);
  int graphs = 0;
  for (int it = 0; it < 120 && graphs < 40; ++it) {
    DirectedGraph g = test::random_graph(rng);
    if (g.nv() > 4) continue;
    ++graphs;
    PrimSpectrum s = prim_spectrum(g);
    std::vector<PrimPoint> pts;
    for (const auto& t : s.gammas) pts.push_back(PrimPoint::gamma(t.members));
    for (int v : s.breakings) pts.push_back(PrimPoint::breaking(v));
    for (const auto& l : s.loops) {
      pts.push_back(PrimPoint::loop(l, RationalAngle()));
      pts.push_back(PrimPoint::loop(l, RationalAngle::parse("1/3")));
    }
    for (const auto& p1 : pts)
      for (const auto& p2 : pts)
        CHECK(specializes(g, p1, p2) == ref::specializes_cylsim(g, p1, p2, 8));
  }
  CHECK(graphs == 40);
}

TEST_CASE("specializes is reflexive and transitive on the corpus") {
  std::mt19937 rng(43);
  for (int it = 0; it < 25; ++it) {
    DirectedGraph g = test::random_graph(rng, 5, 8);
    PrimSpectrum s = prim_spectrum(g);
    std::vector<PrimPoint> pts;
    for (const auto& t : s.gammas) pts.push_back(PrimPoint::gamma(t.members));
    for (int v : s.breakings) pts.push_back(PrimPoint::breaking(v));
    for (const auto& l : s.loops) {
      pts.push_back(PrimPoint::loop(l, RationalAngle()));
      pts.push_back(PrimPoint::loop(l, RationalAngle::parse("1/4")));
    }
    for (const auto& p : pts) CHECK(specializes(g, p, p));
    for (const auto& a : pts)
      for (const auto& b : pts)
        for (const auto& c : pts)
          if (specializes(g, a, b) && specializes(g, b, c)) CHECK(specializes(g, a, c));
  }
}

TEST_CASE("isolated periodic paths are exactly the primitive loops") {
  std::mt19937 rng(47);
  int graphs = 0;
  for (int it = 0; it < 200 && graphs < 50; ++it) {
    DirectedGraph g = test::random_graph(rng, 4, 8);
    if (g.nv() > 4) continue;
    ++graphs;
    auto loops = primitive_loops(g);
    for (const auto& cyc : ref::simple_cycles(g)) {
      std::vector<int> vs = cyc.vertices;
      std::sort(vs.begin(), vs.end());
      bool is_prim = std::find(loops.begin(), loops.end(), vs) != loops.end();
      CHECK(ref::periodic_path_isolated(g, cyc.vertices, cyc.edges, 8) == is_prim);
    }
  }
}

TEST_CASE("closure on G_BV and G_PT") {
  DirectedGraph g = g_bv();
  PrimPoint gamma = PrimPoint::gamma(ids(g, {"v", "w"}));
  {
    ClosedPrimSet c = closure(g, {gamma});
    CHECK(c.finite_points.size() == 2);
    REQUIRE(c.loop_fibers.size() == 1);
    CHECK(c.loop_fibers.begin()->second.is_full());
  }
  {
    ClosedPrimSet c = closure(g, {PrimPoint::loop({g.vertex("v")}, RationalAngle::parse("1/4"))});
    CHECK(c.finite_points.empty());
    REQUIRE(c.loop_fibers.size() == 1);
    CHECK(c.loop_fibers.begin()->second == CircleSet::point(RationalAngle::parse("1/4")));
  }
  {
    DirectedGraph pt = g_pt();
    ClosedPrimSet c = closure(pt, {PrimPoint::gamma({0})});
    CHECK(c.finite_points.size() == 1);
    CHECK(c.loop_fibers.empty());
  }
}

TEST_CASE("closure is extensive, monotone and idempotent") {
  std::mt19937 rng(53);
  for (int it = 0; it < 20; ++it) {
    DirectedGraph g = test::random_graph(rng, 5, 8);
    PrimSpectrum s = prim_spectrum(g);
    std::vector<PrimPoint> pts;
    for (const auto& t : s.gammas) pts.push_back(PrimPoint::gamma(t.members));
    for (int v : s.breakings) pts.push_back(PrimPoint::breaking(v));
    for (const auto& l : s.loops) pts.push_back(PrimPoint::loop(l, RationalAngle::parse("1/6")));
    if (pts.empty()) continue;
    std::vector<PrimPoint> small, large;
    for (const auto& p : pts) {
      if (rng() % 2) small.push_back(p);
      large.push_back(p);
    }
    ClosedPrimSet cs = closure(g, small);
    ClosedPrimSet cl = closure(g, large);
    // extensive: every seed is in its closure
    for (const auto& p : small) {
      if (p.kind == PrimPoint::Kind::Loop)
        CHECK(cs.loop_fibers.at(p.members).contains(p.fiber));
      else
        CHECK(std::find(cs.finite_points.begin(), cs.finite_points.end(), p) !=
              cs.finite_points.end());
    }
    // monotone
    for (const auto& p : cs.finite_points)
      CHECK(std::find(cl.finite_points.begin(), cl.finite_points.end(), p) !=
            cl.finite_points.end());
    // idempotent: rerun with the closure as seeds
    std::vector<PrimPoint> reseed = cs.finite_points;
    ClosedPrimSet cs2 = closure(g, reseed, cs.loop_fibers);
    CHECK(cs2.finite_points == cs.finite_points);
    CHECK(cs2.loop_fibers == cs.loop_fibers);
  }
}

TEST_CASE("saturation and hereditary-saturated enumeration") {
  DirectedGraph g = g_out();
  CHECK(saturate(g, {g.vertex("v")}) == ids(g, {"v", "w"}));
  CHECK(saturate(g_loop(), {}).empty());
  CHECK(hereditary_saturated_sets(g) ==
        std::vector<std::vector<int>>({{}, ids(g, {"v", "w"})}));
  // brute-force cross-check of the enumeration on random row-finite graphs
  std::mt19937 rng(59);
  for (int it = 0; it < 20; ++it) {
    DirectedGraph h = test::random_row_finite_graph(rng);
    auto sets = hereditary_saturated_sets(h);
    int count = 0;
    for (long long mask = 0; mask < (1LL << h.nv()); ++mask) {
      std::vector<int> set;
      for (int v = 0; v < h.nv(); ++v)
        if (mask & (1LL << v)) set.push_back(v);
      bool hered = true, sat = true;
      auto in = [&](int v) { return (mask >> v) & 1; };
      for (const auto& e : h.edges)
        if (in(e.range) && !in(e.source)) hered = false;
      for (int v = 0; v < h.nv(); ++v) {
        if (in(v)) continue;
        bool all = true, any = false;
        for (const auto& e : h.edges)
          if (e.range == v) {
            any = true;
            if (!in(e.source)) all = false;
          }
        if (any && all) sat = false;
      }
      if (hered && sat) {
        ++count;
        CHECK(std::find(sets.begin(), sets.end(), set) != sets.end());
      }
    }
    CHECK(count == static_cast<int>(sets.size()));
  }
  // error paths
  CHECK_THROWS_AS(saturate(g_bv(), {}), domain_error);        // omega edge
  CHECK_THROWS_AS(saturate(g_pt(), {}), domain_error);        // source
  CHECK_THROWS_AS(saturate(g_out(), {g_out().vertex("w")}), domain_error);  // not hereditary
}
