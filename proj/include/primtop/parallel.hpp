#pragma once

namespace primtop {

// Worker cap for the OpenMP kernels: min(omp_get_max_threads(),
// PRIMTOP_THREADS) when the environment variable is set, at least 1.
int thread_limit();

}  // namespace primtop
