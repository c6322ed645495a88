#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primtop/circle_set.hpp"

namespace primtop {

// Singly generated dynamical system on a finite discrete set: a partial map
// sigma from dom(sigma) into X.
struct SGDS {
  std::vector<std::string> xnames;
  std::vector<int> sigma;  // sigma[i] = image index, -1 = outside dom

  int n() const { return static_cast<int>(xnames.size()); }
  int point(const std::string& name) const;
  void validate() const;
};

// Minimal (p, l) with sigma^{l+p}(x) = sigma^l(x); both absent when the
// forward orbit leaves dom before repeating.
struct PeriodData {
  bool finite = false;
  long long p = 0, l = 0;
};

PeriodData period_data(const SGDS& s, int x);

struct Classification {
  std::vector<int> aperiodic;          // p = infinity
  std::vector<int> isolated_periodic;  // all periodic points (discrete space)
};

Classification classify(const SGDS& s);

// Classes of x ~ y iff sigma^m(x) = sigma^n(y) for some m, n >= 0.
std::vector<std::vector<int>> quasi_orbits(const SGDS& s);

struct SgdsSpectrum {
  std::vector<std::vector<int>> aperiodic_orbits;
  struct Fiber {
    std::vector<int> orbit;
    long long period = 1;  // fiber parameter is w = z^period
  };
  std::vector<Fiber> periodic_fibers;
};

SgdsSpectrum sgds_prim(const SGDS& s);

struct YReport {
  bool valid = false;
  std::string violation;               // names the failing condition when invalid
  std::vector<std::string> vacuous;    // clauses trivial on a finite discrete space
};

YReport validate_Y(const SGDS& s, const std::map<int, CircleSet>& Y);

}  // namespace primtop
