#include "vcnls/numsolver.hpp"

#include <algorithm>
#include <cmath>

#include "vcnls/errors.hpp"
#include "vcnls/ode.hpp"
#include "vcnls/parallel.hpp"

namespace vcnls::numsolver {

namespace {

constexpr int BAND = 2; // clamped nodes per edge, matches the stencil halo

struct Workspace {
    int nx = 0;
    std::vector<double> xs;
    std::vector<double> xs_band; // the four clamped abscissae
    // scratch rows for RHS evaluation
    std::vector<cplx> psi, phi, band_psi, band_phi;
};

// state layout: [Re psi | Im psi | Re phi | Im phi], interior nodes only
inline int interior(const EvolutionConfig& cfg) { return cfg.nx - 2 * BAND; }

void unpack(const double* y, int M, std::vector<cplx>& psi, std::vector<cplx>& phi) {
    for (int j = 0; j < M; ++j) {
        psi[BAND + j] = cplx(y[j], y[M + j]);
        phi[BAND + j] = cplx(y[2 * M + j], y[3 * M + j]);
    }
}

} // namespace

FieldState evolve(const coeff::CoefficientSet& cs, const FieldSampler& initial,
                  const EvolutionConfig& cfg, const FieldSampler* reference) {
    if (cfg.nx < 2 * BAND + 5) throw ValidationError("nx too small for the stencil");
    if (!(cfg.x_max > cfg.x_min) || !(cfg.t1 > cfg.t0))
        throw ValidationError("evolution window must have positive extent");
    if (cfg.boundary == Boundary::analytic_clamped && reference == nullptr)
        throw ValidationError("clamped boundary needs a reference sampler");

    const int nx = cfg.nx, M = interior(cfg);
    const double hx = (cfg.x_max - cfg.x_min) / (nx - 1);

    Workspace ws;
    ws.nx = nx;
    ws.xs.resize(nx);
    for (int j = 0; j < nx; ++j) ws.xs[j] = cfg.x_min + j * hx;
    ws.xs_band = {ws.xs[0], ws.xs[1], ws.xs[nx - 2], ws.xs[nx - 1]};
    ws.psi.resize(nx);
    ws.phi.resize(nx);
    ws.band_psi.resize(4);
    ws.band_phi.resize(4);

    // initial data on the full grid
    std::vector<cplx> psi0(nx), phi0(nx);
    initial(cfg.t0, ws.xs, psi0.data(), phi0.data());
    double f0 = 0.0;
    for (int j = 0; j < nx; ++j) f0 = std::max({f0, std::abs(psi0[j]), std::abs(phi0[j])});
    if (verify::detail::phase_underresolved(psi0.data(), 1, nx, f0) ||
        verify::detail::phase_underresolved(phi0.data(), 1, nx, f0))
        throw GridTooCoarse("initial data oscillates faster than the grid resolves");

    std::vector<double> y0(4 * M);
    for (int j = 0; j < M; ++j) {
        y0[j] = psi0[BAND + j].real();
        y0[M + j] = psi0[BAND + j].imag();
        y0[2 * M + j] = phi0[BAND + j].real();
        y0[3 * M + j] = phi0[BAND + j].imag();
    }

    const double s = cs.s;
    const double c1 = 1.0 / (12.0 * hx), c2 = 1.0 / (12.0 * hx * hx);

    auto fill_bands = [&](double t) {
        if (cfg.boundary == Boundary::analytic_clamped) {
            (*reference)(t, ws.xs_band, ws.band_psi.data(), ws.band_phi.data());
            ws.psi[0] = ws.band_psi[0];
            ws.psi[1] = ws.band_psi[1];
            ws.psi[nx - 2] = ws.band_psi[2];
            ws.psi[nx - 1] = ws.band_psi[3];
            ws.phi[0] = ws.band_phi[0];
            ws.phi[1] = ws.band_phi[1];
            ws.phi[nx - 2] = ws.band_phi[2];
            ws.phi[nx - 1] = ws.band_phi[3];
        } else {
            ws.psi[0] = ws.psi[1] = ws.psi[nx - 2] = ws.psi[nx - 1] = 0.0;
            ws.phi[0] = ws.phi[1] = ws.phi[nx - 2] = ws.phi[nx - 1] = 0.0;
        }
    };

    // psi_t = i a psi_xx - i (b x^2 - x f) psi - d psi + (g - c x) psi_x
    //         - i h (|phi|^{2s} + |psi|^{2s}) psi
    ode::Rhs rhs = [&](double t, const double* y, double* dy) {
        unpack(y, M, ws.psi, ws.phi);
        fill_bands(t);
        coeff::Values v = coeff::eval(cs, t);
        const cplx I(0.0, 1.0);
        for (int j = 0; j < M; ++j) {
            const int k = BAND + j;
            const double x = ws.xs[k];
            cplx pc = ws.psi[k], fc = ws.phi[k];
            cplx px = (-ws.psi[k + 2] + 8.0 * ws.psi[k + 1] - 8.0 * ws.psi[k - 1] +
                       ws.psi[k - 2]) *
                      c1;
            cplx fx = (-ws.phi[k + 2] + 8.0 * ws.phi[k + 1] - 8.0 * ws.phi[k - 1] +
                       ws.phi[k - 2]) *
                      c1;
            cplx pxx = (-ws.psi[k + 2] + 16.0 * ws.psi[k + 1] - 30.0 * pc + 16.0 * ws.psi[k - 1] -
                        ws.psi[k - 2]) *
                       c2;
            cplx fxx = (-ws.phi[k + 2] + 16.0 * ws.phi[k + 1] - 30.0 * fc + 16.0 * ws.phi[k - 1] -
                        ws.phi[k - 2]) *
                       c2;
            double real_pot = v.b * x * x - x * v.f;
            double drift = v.g - v.c * x;
            double nlp = std::norm(pc), nlf = std::norm(fc);
            if (s != 1.0) {
                nlp = std::pow(nlp, s);
                nlf = std::pow(nlf, s);
            }
            double nl = v.h * (nlp + nlf);
            cplx dpsi = I * v.a * pxx - I * real_pot * pc - v.d * pc + drift * px - I * nl * pc;
            cplx dphi = I * v.a * fxx - I * real_pot * fc - v.d * fc + drift * fx - I * nl * fc;
            dy[j] = dpsi.real();
            dy[M + j] = dpsi.imag();
            dy[2 * M + j] = dphi.real();
            dy[3 * M + j] = dphi.imag();
        }
    };

    // with zero boundaries, amplitude reaching the clamped band means the
    // window is too small: the band acts as a hard wall and reflects
    ode::StopFn stop;
    if (cfg.boundary == Boundary::zero) {
        const double leak_floor = 1e-4 * std::max(f0, 1e-300);
        stop = [=](double, const double* y) {
            for (int j : {0, 1, M - 2, M - 1}) {
                double p2 = y[j] * y[j] + y[M + j] * y[M + j];
                double f2 = y[2 * M + j] * y[2 * M + j] + y[3 * M + j] * y[3 * M + j];
                if (p2 > leak_floor * leak_floor || f2 > leak_floor * leak_floor) return true;
            }
            return false;
        };
    }

    ode::Options opt;
    opt.rtol = cfg.rel_tol;
    opt.atol = cfg.abs_tol;
    opt.dense = false;
    opt.min_step_rel = 1e-12;

    ode::DenseOutput out;
    try {
        out = ode::integrate(rhs, y0, cfg.t0, cfg.t1, opt, stop);
    } catch (const IntegrationError& err) {
        throw StiffnessError(std::string("method-of-lines stepper failed (grid too fine for an "
                                         "explicit integrator here?): ") +
                             err.what());
    }
    if (out.stopped())
        throw BoundaryLeakError("field amplitude reached the zero-clamped boundary band");

    std::vector<double> yT = out.y_end();
    FieldState st;
    st.t = cfg.t1;
    st.xs = ws.xs;
    st.psi.resize(nx);
    st.phi.resize(nx);
    unpack(yT.data(), M, st.psi, st.phi);
    // band values at the final time
    fill_bands(cfg.t1);
    st.psi[0] = ws.psi[0];
    st.psi[1] = ws.psi[1];
    st.psi[nx - 2] = ws.psi[nx - 2];
    st.psi[nx - 1] = ws.psi[nx - 1];
    st.phi[0] = ws.phi[0];
    st.phi[1] = ws.phi[1];
    st.phi[nx - 2] = ws.phi[nx - 2];
    st.phi[nx - 1] = ws.phi[nx - 1];
    return st;
}

CrosscheckReport crosscheck(const transform::LiftedSolution& sol, const EvolutionConfig& cfg,
                            const coeff::CoefficientSet* cs_override) {
    const coeff::CoefficientSet& cs = cs_override ? *cs_override : sol.cs();
    FieldSampler sampler = verify::sampler_from(sol);
    FieldState num = evolve(cs, sampler, cfg, &sampler);

    const int nx = cfg.nx, M = interior(cfg);
    std::vector<cplx> psi_ref(nx), phi_ref(nx);
    sol.sample_row(cfg.t1, num.xs, psi_ref.data(), phi_ref.data());

    std::vector<double> err2(2 * M), ref2(2 * M);
    double linf = 0.0, ref_inf = 0.0;
    for (int j = 0; j < M; ++j) {
        const int k = BAND + j;
        err2[j] = std::norm(num.psi[k] - psi_ref[k]);
        err2[M + j] = std::norm(num.phi[k] - phi_ref[k]);
        ref2[j] = std::norm(psi_ref[k]);
        ref2[M + j] = std::norm(phi_ref[k]);
        linf = std::max({linf, std::sqrt(err2[j]), std::sqrt(err2[M + j])});
        ref_inf = std::max({ref_inf, std::abs(psi_ref[k]), std::abs(phi_ref[k])});
    }
    double e2 = par::pairwise_sum(err2), r2 = par::pairwise_sum(ref2);
    if (r2 <= 0.0) throw ValidationError("reference field vanishes on the window");

    CrosscheckReport rep;
    rep.l2_rel = std::sqrt(e2 / r2);
    rep.linf_rel = linf / std::max(ref_inf, 1e-300);
    rep.nx = nx;
    rep.t = cfg.t1;
    return rep;
}

} // namespace vcnls::numsolver
