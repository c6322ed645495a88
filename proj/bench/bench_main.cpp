// Benchmarks the OpenMP kernels against the serial reference
// implementations on generated instances and checks that both sides agree.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "primtop/digraph.hpp"
#include "primtop/kgraph.hpp"
#include "primtop/parallel.hpp"
#include "primtop_ref.hpp"
#include "support.hpp"

using namespace primtop;

namespace {

double time_of(const std::function<void()>& body, int reps = 3) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs < best) best = secs;
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::printf("%-44s %10.1f %10.1f %8.2fx   %s\n", name.c_str(), serial * 1e3, parallel * 1e3,
              serial / parallel, equal ? "results equal" : "MISMATCH");
}

void bench_maximal_tails() {
  std::mt19937 rng(101);
  std::vector<DirectedGraph> graphs;
  for (int i = 0; i < 6; ++i) graphs.push_back(test::random_graph(rng, 14, 40));
  std::vector<Tail> a, b;
  double ts = time_of([&] {
    for (const auto& g : graphs) a = ref::maximal_tails_bruteforce(g);
  });
  double tp = time_of([&] {
    for (const auto& g : graphs) b = maximal_tails(g);
  });
  bool equal = true;
  for (const auto& g : graphs) {
    auto x = maximal_tails(g);
    auto y = ref::maximal_tails_bruteforce(g);
    if (x.size() != y.size()) equal = false;
    for (size_t i = 0; equal && i < x.size(); ++i)
      if (!(x[i] == y[i])) equal = false;
  }
  row("maximal tails (14 vertices, subset filter)", ts, tp, equal);
}

void bench_hereditary_saturated() {
  std::mt19937 rng(103);
  DirectedGraph g = test::random_row_finite_graph(rng, 18, 10);
  while (g.nv() < 18) g = test::random_row_finite_graph(rng, 18, 10);
  auto serial_enum = [&] {
    // same filter, one thread
    std::vector<std::vector<int>> out;
    for (long long mask = 0; mask < (1LL << g.nv()); ++mask) {
      bool hered = true, sat = true;
      auto in = [&](int v) { return (mask >> v) & 1; };
      for (const auto& e : g.edges)
        if (in(e.range) && !in(e.source)) hered = false;
      if (!hered) continue;
      for (int v = 0; v < g.nv() && sat; ++v) {
        if (in(v)) continue;
        bool all = true, any = false;
        for (const auto& e : g.edges)
          if (e.range == v) {
            any = true;
            if (!in(e.source)) all = false;
          }
        if (any && all) sat = false;
      }
      if (sat) {
        std::vector<int> s;
        for (int v = 0; v < g.nv(); ++v)
          if (in(v)) s.push_back(v);
        out.push_back(std::move(s));
      }
    }
    return out;
  };
  std::vector<std::vector<int>> sres, pres;
  double ts = time_of([&] { sres = serial_enum(); });
  double tp = time_of([&] { pres = hereditary_saturated_sets(g); });
  row("hereditary-saturated sets (18 vertices)", ts, tp, sres == pres);
}

void bench_per_subgroup() {
  KGraphSkeleton sk;
  sk.k = 2;
  sk.vnames = {"v"};
  sk.edges = {{"b1", 1, 0, 0}, {"b2", 1, 0, 0}, {"r", 2, 0, 0}};
  sk.squares = {{0, 2, 2, 0}, {1, 2, 2, 1}};
  validate_kgraph(sk);
  KTail m = ktails(sk)[0];
  IntSubgroup sres, pres;
  double ts = time_of([&] { sres = ref::per_subgroup_bruteforce(sk, m, {3, 3}, {2, 2}); }, 1);
  double tp = time_of([&] { pres = per_subgroup(sk, m, {3, 3}).subgroup; }, 1);
  row("Per subgroup (rank 2, bound (3,3))", ts, tp, sres == pres);
}

}  // namespace

int main() {
  std::printf("threads: %d (cap via PRIMTOP_THREADS)\n\n", thread_limit());
  std::printf("%-44s %10s %10s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");
  bench_maximal_tails();
  bench_hereditary_saturated();
  bench_per_subgroup();
  return 0;
}
