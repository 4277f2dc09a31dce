#include "vcnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "vcnls/errors.hpp"
#include "vcnls/parallel.hpp"

namespace vcnls::verify {

namespace {

constexpr int HALO = 2; // 4th-order central stencils

inline double abs2s(const cplx& z, double s) {
    double n = std::norm(z);
    return s == 1.0 ? n : std::pow(n, s);
}

// max |field| over a full (haloed) array; order-independent reduction.
double field_max(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    for (const auto& z : b) m = std::max(m, std::abs(z));
    return m;
}

struct RowResult {
    double max1 = 0.0, max2 = 0.0;
    double sum1 = 0.0, sum2 = 0.0; // pairwise-accumulated |R|^2 over the row
};

// Combine per-row results serially (row order fixed -> bit-stable).
void combine_rows(const std::vector<RowResult>& rows, double cell, ResidualReport& rep) {
    std::vector<double> s1(rows.size()), s2(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rep.max_eq1 = std::max(rep.max_eq1, rows[i].max1);
        rep.max_eq2 = std::max(rep.max_eq2, rows[i].max2);
        s1[i] = rows[i].sum1;
        s2[i] = rows[i].sum2;
    }
    rep.l2_eq1 = std::sqrt(par::pairwise_sum(s1) * cell);
    rep.l2_eq2 = std::sqrt(par::pairwise_sum(s2) * cell);
}

} // namespace

Grid Grid::refined() const {
    Grid r = *this;
    r.nx = 2 * nx - 1;
    r.nt = 2 * nt - 1;
    return r;
}

void Grid::validate() const {
    if (nx < 9 || nt < 9)
        throw ValidationError("grid must have at least 9 nodes per direction");
    if (!(x_max > x_min) || !(t_max > t_min))
        throw ValidationError("grid extents must be positive");
}

GridND GridND::refined() const {
    GridND r = *this;
    for (int d = 0; d < ndim; ++d) r.n[d] = 2 * n[d] - 1;
    r.nt = 2 * nt - 1;
    return r;
}

void GridND::validate() const {
    if (ndim != 2 && ndim != 3)
        throw ValidationError("ndim must be 2 or 3");
    for (int d = 0; d < ndim; ++d) {
        if (n[d] < 9) throw ValidationError("grid must have at least 9 nodes per direction");
        if (!(hi[d] > lo[d])) throw ValidationError("grid extents must be positive");
    }
    if (nt < 9) throw ValidationError("grid must have at least 9 nodes per direction");
    if (!(t_max > t_min)) throw ValidationError("grid extents must be positive");
}

RowSampler sampler_from(const transform::LiftedSolution& sol) {
    return [&sol](double t, std::span<const double> xs, cplx* psi, cplx* phi) {
        sol.sample_row(t, xs, psi, phi);
    };
}

RowSampler sampler_from(const manakov::SeedPair& seed) {
    return [&seed](double t, std::span<const double> xs, cplx* psi, cplx* phi) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            psi[j] = seed.chi(xs[j], t);
            phi[j] = seed.phi(xs[j], t);
        }
    };
}

namespace detail {

bool phase_underresolved(const cplx* field, int rows, int cols, double fmax) {
    if (fmax <= 0.0) return false;
    const double floor = 0.05 * fmax;
    const double max_jump = M_PI / 4.0;
    long eligible = 0, flagged = 0;
    auto cell = [&](const cplx& u, const cplx& v) {
        if (std::abs(u) < floor || std::abs(v) < floor) return;
        ++eligible;
        if (std::abs(std::arg(v * std::conj(u))) > max_jump) ++flagged;
    };
    for (int m = 0; m < rows; ++m)
        for (int j = 0; j + 1 < cols; ++j) cell(field[m * cols + j], field[m * cols + j + 1]);
    for (int m = 0; m + 1 < rows; ++m)
        for (int j = 0; j < cols; ++j) cell(field[m * cols + j], field[(m + 1) * cols + j]);
    return eligible > 0 && flagged > eligible / 20;
}

} // namespace detail

namespace {

// Shared 1-D machinery: fill the haloed space-time arrays, run the phase
// check, then sweep the stencil with a caller-supplied residual kernel.
// kernel(i, t, x, psi_c, phi_c, psi_t, phi_t, psi_x, phi_x, psi_xx, phi_xx, R1, R2)
template <class Kernel>
ResidualReport sweep_1d(const RowSampler& field, const Grid& g, Exec exec, const Kernel& kernel) {
    g.validate();
    const int NT = g.nt + 2 * HALO, NX = g.nx + 2 * HALO;
    const double hx = g.hx(), ht = g.ht();

    std::vector<double> xs(NX);
    for (int j = 0; j < NX; ++j) xs[j] = g.x_min + (j - HALO) * hx;
    std::vector<cplx> P((std::size_t)NT * NX), F((std::size_t)NT * NX);

    auto fill_row = [&](int m) {
        double t = g.t_min + (m - HALO) * ht;
        field(t, xs, &P[(std::size_t)m * NX], &F[(std::size_t)m * NX]);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(par::max_threads())
        for (int m = 0; m < NT; ++m) fill_row(m);
    } else {
        for (int m = 0; m < NT; ++m) fill_row(m);
    }

    ResidualReport rep;
    rep.field_scale = field_max(P, F);
    if (detail::phase_underresolved(P.data(), NT, NX, rep.field_scale) ||
        detail::phase_underresolved(F.data(), NT, NX, rep.field_scale))
        throw GridTooCoarse("sampled field oscillates faster than the grid resolves; "
                            "refine the grid or shrink the window");

    const double c1t = 1.0 / (12.0 * ht), c1x = 1.0 / (12.0 * hx), c2x = 1.0 / (12.0 * hx * hx);
    std::vector<RowResult> rows(g.nt);

    auto do_row = [&](int i) {
        const int m = i + HALO;
        const double t = g.t_min + i * ht;
        const std::size_t row = (std::size_t)m * NX, up = row + NX, up2 = row + 2 * NX,
                          dn = row - NX, dn2 = row - 2 * NX;
        std::vector<double> r1(g.nx), r2(g.nx);
        RowResult rr;
        for (int j = 0; j < g.nx; ++j) {
            const std::size_t k = row + j + HALO;
            const double x = g.x_min + j * hx;
            cplx pc = P[k], fc = F[k];
            cplx pt = (-P[up2 + j + HALO] + 8.0 * P[up + j + HALO] - 8.0 * P[dn + j + HALO] +
                       P[dn2 + j + HALO]) *
                      c1t;
            cplx ft = (-F[up2 + j + HALO] + 8.0 * F[up + j + HALO] - 8.0 * F[dn + j + HALO] +
                       F[dn2 + j + HALO]) *
                      c1t;
            cplx px = (-P[k + 2] + 8.0 * P[k + 1] - 8.0 * P[k - 1] + P[k - 2]) * c1x;
            cplx fx = (-F[k + 2] + 8.0 * F[k + 1] - 8.0 * F[k - 1] + F[k - 2]) * c1x;
            cplx pxx = (-P[k + 2] + 16.0 * P[k + 1] - 30.0 * pc + 16.0 * P[k - 1] - P[k - 2]) * c2x;
            cplx fxx = (-F[k + 2] + 16.0 * F[k + 1] - 30.0 * fc + 16.0 * F[k - 1] - F[k - 2]) * c2x;
            cplx R1, R2;
            kernel(t, x, pc, fc, pt, ft, px, fx, pxx, fxx, R1, R2);
            double a1 = std::norm(R1), a2 = std::norm(R2);
            rr.max1 = std::max(rr.max1, a1);
            rr.max2 = std::max(rr.max2, a2);
            r1[j] = a1;
            r2[j] = a2;
        }
        rr.max1 = std::sqrt(rr.max1);
        rr.max2 = std::sqrt(rr.max2);
        rr.sum1 = par::pairwise_sum(r1);
        rr.sum2 = par::pairwise_sum(r2);
        rows[i] = rr;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(par::max_threads())
        for (int i = 0; i < g.nt; ++i) do_row(i);
    } else {
        for (int i = 0; i < g.nt; ++i) do_row(i);
    }
    combine_rows(rows, hx * ht, rep);
    return rep;
}

} // namespace

ResidualReport residual_vcnls(const coeff::CoefficientSet& cs, const RowSampler& field,
                              const Grid& g, Exec exec) {
    const double s = cs.s;
    // coefficient lookups happen once per row, keyed by t
    auto kernel = [&](double t, double x, const cplx& pc, const cplx& fc, const cplx& pt,
                      const cplx& ft, const cplx& px, const cplx& fx, const cplx& pxx,
                      const cplx& fxx, cplx& R1, cplx& R2) {
        const cplx I(0.0, 1.0);
        coeff::Values v = coeff::eval(cs, t);
        cplx pot = v.b * x * x - I * v.d - x * v.f;
        cplx drift = I * (v.g - v.c * x);
        double nl = v.h * (abs2s(fc, s) + abs2s(pc, s));
        R1 = I * pt + v.a * pxx - pot * pc - drift * px - nl * pc;
        R2 = I * ft + v.a * fxx - pot * fc - drift * fx - nl * fc;
    };
    return sweep_1d(field, g, exec, kernel);
}

ResidualReport residual_vcnls(const coeff::CoefficientSet& cs, const transform::LiftedSolution& sol,
                              const Grid& g, Exec exec) {
    return residual_vcnls(cs, sampler_from(sol), g, exec);
}

ResidualReport residual_manakov(const manakov::SeedPair& seed, const Grid& g, int l0, double lambda,
                                double s, Exec exec) {
    auto kernel = [&](double, double, const cplx& pc, const cplx& fc, const cplx& pt,
                      const cplx& ft, const cplx&, const cplx&, const cplx& pxx, const cplx& fxx,
                      cplx& R1, cplx& R2) {
        const cplx I(0.0, 1.0);
        double nl = lambda * (abs2s(fc, s) + abs2s(pc, s));
        R1 = I * pt - (double)l0 * pxx + (double)l0 * nl * pc;
        R2 = I * ft - (double)l0 * fxx + (double)l0 * nl * fc;
    };
    return sweep_1d(sampler_from(seed), g, exec, kernel);
}

ResidualReport residual_nd(const transform::NDLiftedSolution& sol, const GridND& g, Exec exec) {
    g.validate();
    const coeff::CoefficientSet& cs = sol.cs();
    if (g.ndim != cs.n) throw ValidationError("grid dimension does not match the case");

    const int nd = g.ndim;
    std::array<int, 3> N{};
    for (int d = 0; d < 3; ++d) N[d] = d < nd ? g.n[d] + 2 * HALO : 1;
    const std::size_t slab = (std::size_t)N[0] * N[1] * N[2];
    const std::array<std::size_t, 3> stride{(std::size_t)N[1] * N[2], (std::size_t)N[2], 1};
    const double ht = g.ht();
    std::array<double, 3> hx{};
    for (int d = 0; d < nd; ++d) hx[d] = g.h(d);

    // ring of 5 time slabs per field
    std::array<std::vector<cplx>, 5> Pring, Fring;
    for (auto& v : Pring) v.resize(slab);
    for (auto& v : Fring) v.resize(slab);

    auto fill_slab = [&](int level) { // level = full time index
        double t = g.t_min + (level - HALO) * ht;
        riccati::NDRiccatiState st = sol.state(t);
        cplx* P = Pring[level % 5].data();
        cplx* F = Fring[level % 5].data();
        auto body = [&](int i0) {
            std::array<double, 3> x{};
            x[0] = g.lo[0] + (i0 - HALO) * hx[0];
            for (int i1 = 0; i1 < N[1]; ++i1) {
                if (nd > 1) x[1] = g.lo[1] + (i1 - HALO) * hx[1];
                for (int i2 = 0; i2 < N[2]; ++i2) {
                    if (nd > 2) x[2] = g.lo[2] + (i2 - HALO) * hx[2];
                    auto [ps, ph] = sol.eval(std::span<const double>(x.data(), nd), st);
                    std::size_t k = i0 * stride[0] + i1 * stride[1] + i2;
                    P[k] = ps;
                    F[k] = ph;
                }
            }
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(par::max_threads())
            for (int i0 = 0; i0 < N[0]; ++i0) body(i0);
        } else {
            for (int i0 = 0; i0 < N[0]; ++i0) body(i0);
        }
    };

    for (int level = 0; level < 4; ++level) fill_slab(level);

    ResidualReport rep;
    const double c1t = 1.0 / (12.0 * ht);
    std::array<double, 3> c2{};
    for (int d = 0; d < nd; ++d) c2[d] = 1.0 / (12.0 * hx[d] * hx[d]);
    double cell = ht;
    for (int d = 0; d < nd; ++d) cell *= hx[d];

    std::vector<double> slice_sum1(g.nt), slice_sum2(g.nt);
    for (int it = 0; it < g.nt; ++it) {
        fill_slab(it + 4);
        const double t = g.t_min + it * ht;
        coeff::Values v = coeff::eval(cs, t);
        const cplx* Pm2 = Pring[it % 5].data();
        const cplx* Pm1 = Pring[(it + 1) % 5].data();
        const cplx* Pc = Pring[(it + 2) % 5].data();
        const cplx* Pp1 = Pring[(it + 3) % 5].data();
        const cplx* Pp2 = Pring[(it + 4) % 5].data();
        const cplx* Fm2 = Fring[it % 5].data();
        const cplx* Fm1 = Fring[(it + 1) % 5].data();
        const cplx* Fc = Fring[(it + 2) % 5].data();
        const cplx* Fp1 = Fring[(it + 3) % 5].data();
        const cplx* Fp2 = Fring[(it + 4) % 5].data();

        std::vector<RowResult> rows(g.n[0]);
        auto body = [&](int i0r) {
            const int i0 = i0r + HALO;
            std::array<double, 3> x{};
            x[0] = g.lo[0] + i0r * hx[0];
            std::vector<double> r1, r2;
            r1.reserve((std::size_t)g.n[1] * (nd > 2 ? g.n[2] : 1));
            r2.reserve(r1.capacity());
            RowResult rr;
            const int n1 = g.n[1], n2 = nd > 2 ? g.n[2] : 1;
            for (int i1r = 0; i1r < n1; ++i1r) {
                x[1] = g.lo[1] + i1r * hx[1];
                for (int i2r = 0; i2r < n2; ++i2r) {
                    if (nd > 2) x[2] = g.lo[2] + i2r * hx[2];
                    std::size_t k =
                        i0 * stride[0] + (i1r + HALO) * stride[1] + (nd > 2 ? i2r + HALO : 0);
                    cplx pc = Pc[k], fc = Fc[k];
                    cplx pt = (-Pp2[k] + 8.0 * Pp1[k] - 8.0 * Pm1[k] + Pm2[k]) * c1t;
                    cplx ft = (-Fp2[k] + 8.0 * Fp1[k] - 8.0 * Fm1[k] + Fm2[k]) * c1t;
                    cplx plap = 0.0, flap = 0.0;
                    for (int d = 0; d < nd; ++d) {
                        std::size_t sd = stride[d];
                        plap += (-Pc[k + 2 * sd] + 16.0 * Pc[k + sd] - 30.0 * pc +
                                 16.0 * Pc[k - sd] - Pc[k - 2 * sd]) *
                                c2[d];
                        flap += (-Fc[k + 2 * sd] + 16.0 * Fc[k + sd] - 30.0 * fc +
                                 16.0 * Fc[k - sd] - Fc[k - 2 * sd]) *
                                c2[d];
                    }
                    double x2 = 0.0;
                    for (int d = 0; d < nd; ++d) x2 += x[d] * x[d];
                    const cplx I(0.0, 1.0);
                    double nl = v.h * (std::norm(fc) + std::norm(pc));
                    cplx R1 = I * pt + v.a * plap - v.b * x2 * pc - nl * pc;
                    cplx R2 = I * ft + v.a * flap - v.b * x2 * fc - nl * fc;
                    double a1 = std::norm(R1), a2 = std::norm(R2);
                    rr.max1 = std::max(rr.max1, a1);
                    rr.max2 = std::max(rr.max2, a2);
                    r1.push_back(a1);
                    r2.push_back(a2);
                }
            }
            rr.max1 = std::sqrt(rr.max1);
            rr.max2 = std::sqrt(rr.max2);
            rr.sum1 = par::pairwise_sum(r1);
            rr.sum2 = par::pairwise_sum(r2);
            rows[i0r] = rr;
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(par::max_threads())
            for (int i0r = 0; i0r < g.n[0]; ++i0r) body(i0r);
        } else {
            for (int i0r = 0; i0r < g.n[0]; ++i0r) body(i0r);
        }
        std::vector<double> s1(rows.size()), s2(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rep.max_eq1 = std::max(rep.max_eq1, rows[i].max1);
            rep.max_eq2 = std::max(rep.max_eq2, rows[i].max2);
            s1[i] = rows[i].sum1;
            s2[i] = rows[i].sum2;
        }
        slice_sum1[it] = par::pairwise_sum(s1);
        slice_sum2[it] = par::pairwise_sum(s2);
    }
    rep.l2_eq1 = std::sqrt(par::pairwise_sum(slice_sum1) * cell);
    rep.l2_eq2 = std::sqrt(par::pairwise_sum(slice_sum2) * cell);
    return rep;
}

ConvergenceReport convergence_study(const std::function<ResidualReport(const Grid&)>& op,
                                    std::span<const Grid> grids) {
    std::vector<double> hs, rs;
    for (const Grid& g : grids) {
        ResidualReport rep = op(g);
        hs.push_back(std::sqrt(g.hx() * g.ht()));
        rs.push_back(rep.max_residual());
    }
    return fit_convergence(hs, rs);
}

ConvergenceReport fit_convergence(std::span<const double> hs, std::span<const double> residuals) {
    if (hs.size() != residuals.size() || hs.size() < 2)
        throw ValidationError("convergence fit needs at least two levels");
    ConvergenceReport rep;
    rep.h.assign(hs.begin(), hs.end());
    rep.residual.assign(residuals.begin(), residuals.end());

    const std::size_t n = hs.size();
    double mh = 0, mr = 0;
    std::vector<double> lh(n), lr(n);
    for (std::size_t i = 0; i < n; ++i) {
        lh[i] = std::log(hs[i]);
        lr[i] = std::log(std::max(residuals[i], 1e-300));
        mh += lh[i];
        mr += lr[i];
    }
    mh /= n;
    mr /= n;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lh[i] - mh) * (lr[i] - mr);
        den += (lh[i] - mh) * (lh[i] - mh);
    }
    rep.observed_order = den > 0 ? num / den : 0.0;

    double rmin = *std::min_element(rep.residual.begin(), rep.residual.end());
    rep.saturated = rmin < 1e-10;
    return rep;
}

std::vector<BlowupScanRow> blowup_scan(const transform::BlowupSolution& sol,
                                       std::span<const double> times, double x_min, double x_max,
                                       int nx) {
    if (nx < 2) throw ValidationError("blowup_scan needs at least 2 sample points");
    std::vector<BlowupScanRow> out;
    out.reserve(times.size());
    for (double t : times) {
        riccati::RiccatiState st = sol.state(t);
        double sup = 0.0;
        for (int j = 0; j < nx; ++j) {
            double x = x_min + (x_max - x_min) * j / (nx - 1);
            sup = std::max(sup, std::abs(sol(x, t).first));
        }
        out.push_back({t, sup, st.mu});
    }
    return out;
}

std::string report_json(const ResidualReport& rep, const Grid& g, const std::string& label) {
    nlohmann::json j{{"label", label},
                     {"grid", {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                               {"t_min", g.t_min}, {"t_max", g.t_max}, {"nt", g.nt}}},
                     {"max_eq1", rep.max_eq1},
                     {"max_eq2", rep.max_eq2},
                     {"l2_eq1", rep.l2_eq1},
                     {"l2_eq2", rep.l2_eq2},
                     {"field_scale", rep.field_scale},
                     {"stencil_order", rep.stencil_order}};
    return j.dump(2);
}

std::string report_json(const ConvergenceReport& rep, const std::string& label) {
    nlohmann::json j{{"label", label},
                     {"h", rep.h},
                     {"residual", rep.residual},
                     {"observed_order", rep.observed_order},
                     {"saturated", rep.saturated}};
    return j.dump(2);
}

} // namespace vcnls::verify
