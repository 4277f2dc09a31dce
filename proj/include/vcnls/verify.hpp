#pragma once

// Finite-difference residual verification for the coupled NLS systems.
//
// Everything here treats the candidate solution as a black-box sampler and
// asks: does it satisfy the PDE?  Derivatives are taken with 4th-order
// central stencils on a uniform grid extended by a 2-cell halo, so every
// reported node uses only sampled values (no one-sided formulas).
//
// The grid fill and the stencil sweep are parallelized over rows with
// OpenMP.  All reductions are deterministic: per-row pairwise sums into a
// fixed row slot, then a serial pairwise combine, so results are bit-stable
// across thread counts.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vcnls/coefficients.hpp"
#include "vcnls/manakov.hpp"
#include "vcnls/transform.hpp"

namespace vcnls::verify {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

struct Grid {
    double x_min = -1.0, x_max = 1.0;
    int nx = 65;
    double t_min = 0.0, t_max = 1.0;
    int nt = 65;

    double hx() const { return (x_max - x_min) / (nx - 1); }
    double ht() const { return (t_max - t_min) / (nt - 1); }
    Grid refined() const;  // halves both spacings (nx,nt -> 2n-1)
    void validate() const; // nx,nt >= 9, extents positive
};

struct GridND {
    int ndim = 2;  // 2 or 3
    std::array<double, 3> lo{{-1.0, -1.0, -1.0}};
    std::array<double, 3> hi{{1.0, 1.0, 1.0}};
    std::array<int, 3> n{{33, 33, 33}};
    double t_min = 0.0, t_max = 1.0;
    int nt = 17;

    double h(int d) const { return (hi[d] - lo[d]) / (n[d] - 1); }
    double ht() const { return (t_max - t_min) / (nt - 1); }
    GridND refined() const;
    void validate() const;
};

struct ResidualReport {
    double max_eq1 = 0.0;  // sup-norm of residual, first field
    double max_eq2 = 0.0;
    double l2_eq1 = 0.0;  // discrete L2 (cell-weighted)
    double l2_eq2 = 0.0;
    double field_scale = 0.0;  // max |field| seen, for context
    int stencil_order = 4;

    double max_residual() const { return max_eq1 > max_eq2 ? max_eq1 : max_eq2; }
};

// Row sampler contract: fill psi[j], phi[j] for every xs[j] at fixed t.
using RowSampler = std::function<void(double t, std::span<const double> xs, cplx* psi, cplx* phi)>;

RowSampler sampler_from(const transform::LiftedSolution& sol);
RowSampler sampler_from(const manakov::SeedPair& seed);

// Residual of the full variable-coefficient system for field pair (psi,phi):
//   R1 = i psi_t + a psi_xx - (b x^2 - i d - x f) psi - i (g - c x) psi_x
//        - h (|phi|^{2s} + |psi|^{2s}) psi
// and symmetrically for phi.  Throws GridTooCoarse when the sampled field
// shows unresolved phase rotation (see phase_resolution_check).
ResidualReport residual_vcnls(const coeff::CoefficientSet& cs, const RowSampler& field,
                              const Grid& g, Exec exec = Exec::parallel);
ResidualReport residual_vcnls(const coeff::CoefficientSet& cs, const transform::LiftedSolution& sol,
                              const Grid& g, Exec exec = Exec::parallel);

// Residual of the constant-coefficient target system in the (xi, tau) frame:
//   R = i chi_tau - l0 chi_xixi + l0 lambda (|phi|^{2s} + |chi|^{2s}) chi
ResidualReport residual_manakov(const manakov::SeedPair& seed, const Grid& g, int l0 = -1,
                                double lambda = -2.0, double s = 1.0, Exec exec = Exec::parallel);

// Residual of the n-dimensional system
//   R1 = i psi_t + a lap(psi) - b |x|^2 psi - h (|phi|^2 + |psi|^2) psi
// evaluated with a rolling 5-slab time window so only five spatial blocks
// are resident at once.
ResidualReport residual_nd(const transform::NDLiftedSolution& sol, const GridND& g,
                           Exec exec = Exec::parallel);

struct ConvergenceReport {
    std::vector<double> h;         // representative spacing per level (coarse -> fine)
    std::vector<double> residual;  // max-norm residual per level
    double observed_order = 0.0;   // least-squares slope of log(residual) vs log(h)
    bool saturated = false;        // hit rounding floor; order estimate unreliable
};

// Runs op on grids[0..], collects max residuals, fits the order.
ConvergenceReport convergence_study(const std::function<ResidualReport(const Grid&)>& op,
                                    std::span<const Grid> grids);
// Same fit applied to precomputed (h, residual) pairs (used for n-d ladders).
ConvergenceReport fit_convergence(std::span<const double> hs, std::span<const double> residuals);

struct BlowupScanRow {
    double t = 0.0;
    double sup_abs = 0.0;  // sup_x |psi(x,t)| over the scan window
    double mu = 0.0;
};

std::vector<BlowupScanRow> blowup_scan(const transform::BlowupSolution& sol,
                                       std::span<const double> times,
                                       double x_min = -10.0, double x_max = 10.0, int nx = 2001);

std::string report_json(const ResidualReport& rep, const Grid& g, const std::string& label);
std::string report_json(const ConvergenceReport& rep, const std::string& label);

namespace detail {
// Counts adjacent sample pairs (along x and t) whose phase jump exceeds
// pi/4 among pairs where both moduli are above 5% of the field max; more
// than 5% flagged means the grid cannot see the oscillation it is
// differencing.  Exposed for tests.
bool phase_underresolved(const cplx* field, int rows, int cols, double field_max);
}  // namespace detail

}  // namespace vcnls::verify
