#include "vcnls/parallel.hpp"

#include <cstdlib>
#include <omp.h>
#include <string>

namespace vcnls::par {

int max_threads() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("VCNLS_THREADS")) {
        try {
            int k = std::stoi(env);
            if (k >= 1) n = k;
        } catch (...) {
            // ignore unparsable values, keep the OMP default
        }
    }
    return n;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace vcnls::par
