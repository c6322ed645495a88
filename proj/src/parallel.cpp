#include "primtop/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace primtop {

int thread_limit() {
  static int limit = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("PRIMTOP_THREADS")) {
      try {
        int cap = std::stoi(env);
        if (cap >= 1 && cap < n) n = cap;
      } catch (...) {
      }
    }
    return n < 1 ? 1 : n;
  }();
  return limit;
}

}  // namespace primtop
