// Times the residual engine with the serial reference implementation against
// the OpenMP row-parallel one on a mid-size lifted grid, and checks that the
// two agree bitwise (the parallel path must not change a single ulp).
#include "vcnls/coefficients.hpp"
#include "vcnls/manakov.hpp"
#include "vcnls/parallel.hpp"
#include "vcnls/presets.hpp"
#include "vcnls/transform.hpp"
#include "vcnls/verify.hpp"

#include <chrono>
#include <cstdio>

using namespace vcnls;

namespace {

double best_of(int reps, const std::function<verify::ResidualReport()>& op,
               verify::ResidualReport& out) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        out = op();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

} // namespace

int main() {
    auto cs = coeff::builtin_case("db-sin");
    auto sol = transform::lift(presets::default_seed("db-sin"), cs);
    verify::Grid g = presets::preset("db-sin").window;
    g.nx = 513;
    g.nt = 513;

    std::printf("residual fill, case db-sin, %d x %d grid, %d worker thread(s)\n", g.nx, g.nt,
                par::max_threads());
    std::printf("%-10s %10s %14s %14s\n", "exec", "best (s)", "max residual", "l2 residual");

    verify::ResidualReport serial, parallel;
    double ts = best_of(3, [&] { return verify::residual_vcnls(cs, sol, g, verify::Exec::serial); },
                        serial);
    double tp = best_of(
        3, [&] { return verify::residual_vcnls(cs, sol, g, verify::Exec::parallel); }, parallel);

    std::printf("%-10s %10.3f %14.6e %14.6e\n", "serial", ts, serial.max_residual(),
                serial.l2_eq1);
    std::printf("%-10s %10.3f %14.6e %14.6e\n", "parallel", tp, parallel.max_residual(),
                parallel.l2_eq1);
    std::printf("speedup %.2fx\n", ts / tp);

    bool same = serial.max_eq1 == parallel.max_eq1 && serial.max_eq2 == parallel.max_eq2 &&
                serial.l2_eq1 == parallel.l2_eq1 && serial.l2_eq2 == parallel.l2_eq2;
    std::printf("bitwise agreement: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
