#pragma once

#include <span>

namespace vcnls::par {

// Worker count: min(OMP default, VCNLS_THREADS if set and positive).
int max_threads();

// Deterministic recursive pairwise sum; result is independent of thread count
// because it is always evaluated serially in a fixed order.
double pairwise_sum(std::span<const double> v);

} // namespace vcnls::par
