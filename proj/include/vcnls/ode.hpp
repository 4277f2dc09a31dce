#pragma once

#include "vcnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vcnls::ode {

// rhs(t, y, dy) writes y'(t) into dy.
using Rhs = std::function<void(double, const double*, double*)>;

// Called after every accepted step with the new (t, y); returning true stops
// the integration there (the trajectory is kept up to that point).
using StopFn = std::function<bool(double, const double*)>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    double h_init = 0.0;       // 0 = choose automatically
    double h_max = 0.0;        // 0 = whole interval
    long max_steps = 2000000;
    double min_step_rel = 1e-14; // step underflow threshold relative to the span
    bool dense = true;         // keep interpolation coefficients for every step
};

namespace detail {
// Pairwise reduction (midpoint splits), so the result is invariant under
// swapping the two halves of the input — the state layout [psi | phi] then
// yields bit-identical error norms for component-swapped states.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return v[0];
    if (n == 2) return v[0] + v[1];
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

// Dormand--Prince DOPRI5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights (Hairer & Wanner CONTD5)
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;
} // namespace detail

// Trajectory with per-step quartic interpolation:
//   y(t0+th) = c1 + th*(c2 + (1-th)*(c3 + th*(c4 + (1-th)*c5)))
class DenseOutput {
  public:
    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }
    std::size_t dim() const { return dim_; }
    bool stopped() const { return stopped_; }
    std::size_t steps() const { return t_right_.size(); }

    void eval(double t, double* y) const {
        if (segs_c1_.empty())
            throw DomainError("DenseOutput: no dense coefficients stored");
        const double pad = 1e-12 * (1.0 + std::abs(t_end_));
        if (t < t_begin_ - pad || t > t_end_ + pad)
            throw DomainError("DenseOutput: t=" + std::to_string(t) + " outside [" +
                              std::to_string(t_begin_) + ", " + std::to_string(t_end_) + "]");
        t = std::clamp(t, t_begin_, t_end_);
        auto it = std::lower_bound(t_right_.begin(), t_right_.end(), t);
        std::size_t i = std::min<std::size_t>(it - t_right_.begin(), t_right_.size() - 1);
        double t0 = seg_t0_[i], h = seg_h_[i];
        double th = (t - t0) / h;
        const double* c1 = &segs_c1_[i * dim_];
        const double* c2 = &segs_c2_[i * dim_];
        const double* c3 = &segs_c3_[i * dim_];
        const double* c4 = &segs_c4_[i * dim_];
        const double* c5 = &segs_c5_[i * dim_];
        for (std::size_t k = 0; k < dim_; ++k)
            y[k] = c1[k] + th * (c2[k] + (1.0 - th) * (c3[k] + th * (c4[k] + (1.0 - th) * c5[k])));
    }

    std::vector<double> eval(double t) const {
        std::vector<double> y(dim_);
        eval(t, y.data());
        return y;
    }

    const std::vector<double>& y_end() const { return y_end_; }

  private:
    friend DenseOutput integrate(const Rhs&, std::span<const double>, double, double,
                                 const Options&, const StopFn&);
    double t_begin_ = 0, t_end_ = 0;
    std::size_t dim_ = 0;
    bool stopped_ = false;
    std::vector<double> t_right_;              // right endpoint of each step, ascending
    std::vector<double> seg_t0_, seg_h_;
    std::vector<double> segs_c1_, segs_c2_, segs_c3_, segs_c4_, segs_c5_;
    std::vector<double> y_end_;
};

// Adaptive DOPRI5 from t0 to t1 (forward only).
inline DenseOutput integrate(const Rhs& rhs, std::span<const double> y0, double t0, double t1,
                             const Options& opt = {}, const StopFn& stop = {}) {
    using namespace detail;
    if (!(t1 > t0)) throw ValidationError("ode::integrate: need t1 > t0");
    if (y0.empty()) throw ValidationError("ode::integrate: empty state");
    const std::size_t n = y0.size();
    const double span = t1 - t0;
    const double hmax = opt.h_max > 0 ? opt.h_max : span;
    const double hmin = opt.min_step_rel * span;

    DenseOutput out;
    out.dim_ = n;
    out.t_begin_ = t0;

    std::vector<double> y(y0.begin(), y0.end()), y1(n), ytmp(n), err(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    std::vector<double> sqterms(n);
    auto scaled_norm = [&](const std::vector<double>& e, const std::vector<double>& ya,
                           const std::vector<double>& yb) {
        for (std::size_t i = 0; i < n; ++i) {
            double sk = opt.atol + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            double q = e[i] / sk;
            sqterms[i] = q * q;
        }
        return std::sqrt(pairwise_sum(sqterms.data(), n) / n);
    };

    rhs(t0, y.data(), k1.data());

    double h = opt.h_init;
    if (h <= 0) {
        // crude version of Hairer's starting-step heuristic
        std::vector<double> q0(n), q1(n);
        for (std::size_t i = 0; i < n; ++i) {
            double sk = opt.atol + opt.rtol * std::abs(y[i]);
            q0[i] = (y[i] / sk) * (y[i] / sk);
            q1[i] = (k1[i] / sk) * (k1[i] / sk);
        }
        double d0 = std::sqrt(pairwise_sum(q0.data(), n) / n);
        double d1n = std::sqrt(pairwise_sum(q1.data(), n) / n);
        h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1n;
        h = std::min(h, 0.1 * span);
    }
    h = std::min(h, hmax);

    double t = t0;
    long nstep = 0;
    bool done = false;
    while (!done) {
        if (++nstep > opt.max_steps)
            throw IntegrationError("ode::integrate: exceeded " + std::to_string(opt.max_steps) +
                                   " steps at t=" + std::to_string(t));
        if (h < hmin)
            throw IntegrationError("ode::integrate: step underflow at t=" + std::to_string(t));
        if (t + h >= t1) {
            h = t1 - t;
            done = true;
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp.data(), k2.data());
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp.data(), k3.data());
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp.data(), k4.data());
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp.data(), k5.data());
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp.data(), k6.data());
        for (std::size_t i = 0; i < n; ++i)
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(t + h, y1.data(), k7.data()); // FSAL

        for (std::size_t i = 0; i < n; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double errn = scaled_norm(err, y, y1);
        bool finite = std::isfinite(errn);
        for (std::size_t i = 0; finite && i < n; ++i)
            if (!std::isfinite(y1[i])) finite = false;

        if (finite && errn <= 1.0) {
            // accept
            if (opt.dense) {
                out.seg_t0_.push_back(t);
                out.seg_h_.push_back(h);
                std::size_t base = out.segs_c1_.size();
                out.segs_c1_.resize(base + n);
                out.segs_c2_.resize(base + n);
                out.segs_c3_.resize(base + n);
                out.segs_c4_.resize(base + n);
                out.segs_c5_.resize(base + n);
                for (std::size_t i = 0; i < n; ++i) {
                    double dy = y1[i] - y[i];
                    double bspl = h * k1[i] - dy;
                    out.segs_c1_[base + i] = y[i];
                    out.segs_c2_[base + i] = dy;
                    out.segs_c3_[base + i] = bspl;
                    out.segs_c4_[base + i] = dy - h * k7[i] - bspl;
                    out.segs_c5_[base + i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                                  d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                }
                out.t_right_.push_back(t + h);
            }
            t += h;
            std::swap(y, y1);
            std::swap(k1, k7);
            if (stop && stop(t, y.data())) {
                out.stopped_ = true;
                done = true;
            }
            double fac = finite ? std::pow(std::max(errn, 1e-16), 0.2) / 0.9 : 5.0;
            h = h / std::clamp(fac, 0.2, 5.0);
            h = std::min(h, hmax);
        } else {
            // reject
            double fac = finite ? std::pow(errn, 0.2) / 0.9 : 5.0;
            h = h / std::clamp(fac, 1.0, 5.0);
            done = false;
        }
    }

    out.t_end_ = t;
    out.y_end_ = y;
    if (!opt.dense) { // still allow eval at the endpoint via a degenerate segment
        out.seg_t0_.push_back(t);
        out.seg_h_.push_back(1.0);
        out.t_right_.push_back(t);
        out.segs_c1_.assign(y.begin(), y.end());
        out.segs_c2_.assign(n, 0.0);
        out.segs_c3_.assign(n, 0.0);
        out.segs_c4_.assign(n, 0.0);
        out.segs_c5_.assign(n, 0.0);
        out.t_begin_ = t;
    }
    return out;
}

// Endpoint-only convenience wrapper.
inline std::vector<double> solve_to(const Rhs& rhs, std::span<const double> y0, double t0,
                                    double t1, Options opt = {}) {
    opt.dense = false;
    return integrate(rhs, y0, t0, t1, opt).y_end();
}

} // namespace vcnls::ode
