#pragma once

#include <optional>

namespace rho {

/// Thread count from an explicit request, else RHO_MOMENTS_THREADS, else the
/// OpenMP default. Always >= 1.
int resolve_thread_count(std::optional<int> requested = std::nullopt);

/// Sets the OpenMP team size used by the parallel kernels.
void set_thread_count(int threads);

int current_thread_count();

}  // namespace rho
