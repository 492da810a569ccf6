#include "rho/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

#include "rho/bigrational.hpp"

namespace rho {

int resolve_thread_count(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw ArgumentError("thread count must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("RHO_MOMENTS_THREADS"); env && *env) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw ArgumentError(std::string("RHO_MOMENTS_THREADS must be a positive integer, got '") + env + "'");
  }
  return omp_get_max_threads() > 0 ? omp_get_max_threads() : 1;
}

void set_thread_count(int threads) {
  if (threads < 1) throw ArgumentError("thread count must be >= 1");
  omp_set_num_threads(threads);
}

int current_thread_count() { return omp_get_max_threads(); }

}  // namespace rho
