#pragma once

// Independent method-of-lines integrator for the coupled system.  Space is
// discretized with the same 4th-order central stencils the verifier uses;
// the 2-node bands at each edge are not evolved but clamped to a reference
// sampler (or to zero).  Time integration is explicit adaptive RK, so this
// shares no mechanism with the Riccati construction it cross-checks.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "vcnls/coefficients.hpp"
#include "vcnls/transform.hpp"
#include "vcnls/verify.hpp"

namespace vcnls::numsolver {

using cplx = std::complex<double>;
using FieldSampler = verify::RowSampler;

enum class Boundary { analytic_clamped, zero };

struct EvolutionConfig {
    double x_min = -2.0, x_max = 2.0;
    int nx = 513;
    double t0 = 0.0, t1 = 0.3;
    double rel_tol = 1e-8, abs_tol = 1e-8;
    Boundary boundary = Boundary::analytic_clamped;
};

struct FieldState {
    std::vector<double> xs;
    std::vector<cplx> psi, phi;
    double t = 0.0;
};

// Evolves initial data sampled from `initial` at cfg.t0 up to cfg.t1.
// `reference` supplies the clamped band values and is required for
// Boundary::analytic_clamped.  Throws GridTooCoarse if the initial data is
// under-resolved, StiffnessError if the stepper collapses, and
// BoundaryLeakError if a zero boundary reflects visible amplitude.
FieldState evolve(const coeff::CoefficientSet& cs, const FieldSampler& initial,
                  const EvolutionConfig& cfg, const FieldSampler* reference = nullptr);

struct CrosscheckReport {
    double l2_rel = 0.0;
    double linf_rel = 0.0;
    int nx = 0;
    double t = 0.0;
};

// Evolves the lifted solution's own initial data through the PDE and
// compares against the analytic field at cfg.t1 (interior nodes).  When
// cs_override is given the PDE uses those coefficients instead of the
// solution's (negative controls: a corrupted h must blow the error up).
CrosscheckReport crosscheck(const transform::LiftedSolution& sol, const EvolutionConfig& cfg,
                            const coeff::CoefficientSet* cs_override = nullptr);

} // namespace vcnls::numsolver
