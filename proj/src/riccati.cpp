#include "vcnls/riccati.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

namespace vcnls::riccati {

namespace {

constexpr double T_MIN = 1e-8; // closer to t_lo than this, evaluators return the initial data

double quad(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-10);
}

void check_init(const RiccatiInit& init) {
    if (init.beta0 == 0.0) throw ValidationError("riccati: beta(0) must be nonzero");
    if (init.mu0 == 0.0) throw ValidationError("riccati: mu(0) must be nonzero");
}

// Trajectory of [mu0, mu0', mu1, mu1', w] for the characteristic equation.
std::shared_ptr<const ode::DenseOutput> characteristic_path(const coeff::CoefficientSet& cs,
                                                            double t_hi, double tol) {
    if (!(t_hi > cs.t_lo)) throw ValidationError("riccati: t_hi must exceed t_lo");
    if (t_hi > cs.t_hi + 1e-9)
        throw DomainError("riccati: t_hi=" + std::to_string(t_hi) + " beyond coefficient domain");
    ode::Rhs rhs = [&cs](double t, const double* y, double* dy) {
        auto es = coeff::eta_sigma(cs, t);
        auto v = coeff::eval(cs, t);
        dy[0] = y[1];
        dy[1] = es.eta * y[1] - 4.0 * es.sigma * y[0];
        dy[2] = y[3];
        dy[3] = es.eta * y[3] - 4.0 * es.sigma * y[2];
        dy[4] = -(v.c - 2.0 * v.d) * y[4];
    };
    std::array<double, 5> y0 = {0.0, 2.0 * cs.a(cs.t_lo), 1.0, 0.0, 1.0};
    ode::Options opt;
    opt.rtol = opt.atol = tol;
    return std::make_shared<ode::DenseOutput>(ode::integrate(rhs, y0, cs.t_lo, t_hi, opt));
}

bool any_nonzero(const coeff::TimeFn& fn, double lo, double hi) {
    for (int i = 0; i <= 256; ++i) {
        double t = lo + (hi - lo) * i / 256.0;
        if (std::abs(fn(t)) > 1e-14) return true;
    }
    return false;
}

// Finite-difference residual checks on a freshly integrated trajectory; these
// catch an RHS/interpolant mismatch early instead of letting it poison
// everything downstream.
void check_characteristic(const coeff::CoefficientSet& cs, const ode::DenseOutput& path) {
    const double fd = 5e-3;
    double lo = path.t_begin() + 2 * fd, hi = path.t_end() - 2 * fd;
    if (hi <= lo) return;
    std::array<double, 5> y;
    for (int i = 0; i <= 32; ++i) {
        double t = lo + (hi - lo) * i / 32.0;
        double m[5], mp[5];
        for (int k = -2; k <= 2; ++k) {
            path.eval(t + k * fd, y.data());
            m[k + 2] = y[0];
            mp[k + 2] = y[2];
        }
        auto es = coeff::eta_sigma(cs, t);
        for (const double* v : {m, mp}) {
            double d1 = (-v[4] + 8 * v[3] - 8 * v[1] + v[0]) / (12 * fd);
            double d2 = (-v[4] + 16 * v[3] - 30 * v[2] + 16 * v[1] - v[0]) / (12 * fd * fd);
            double res = d2 - es.eta * d1 + 4 * es.sigma * v[2];
            double scale = std::abs(d2) + std::abs(es.eta * d1) + std::abs(4 * es.sigma * v[2]) + 1.0;
            if (!(std::abs(res) <= 1e-5 * scale))
                throw IntegrationError("characteristic trajectory failed self-check at t=" +
                                       std::to_string(t));
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// RiccatiPath

RiccatiPath::RiccatiPath(coeff::CoefficientSet cs, RiccatiInit init, double t_hi, Variant variant,
                         double tol)
    : cs_(std::move(cs)), init_(init), variant_(variant), t_hi_requested_(t_hi) {
    check_init(init);
    if (!(t_hi > cs_.t_lo)) throw ValidationError("riccati: t_hi must exceed t_lo");
    if (t_hi > cs_.t_hi + 1e-9)
        throw DomainError("riccati: t_hi beyond coefficient domain of " +
                          (cs_.case_id.empty() ? std::string("ad-hoc set") : cs_.case_id));

    const bool mod = variant == Variant::modified;
    const double l0g = mod ? 1.0 : static_cast<double>(cs_.l0);
    ode::Rhs rhs = [this, mod, l0g](double t, const double* y, double* dy) {
        auto v = coeff::eval(cs_, t);
        double al = y[0], be = y[1], de = y[3], mu = y[6];
        double drift = v.c + 4.0 * v.a * al;
        dy[0] = -(v.b + 2.0 * v.c * al + 4.0 * v.a * al * al);
        dy[1] = -drift * be;
        dy[2] = -v.a * be * be * l0g;
        dy[3] = -drift * de + v.f + 2.0 * al * v.g;
        dy[4] = (v.g - 2.0 * v.a * de) * be;
        dy[5] = v.g * de - v.a * de * de;
        if (mod) dy[5] -= 2.0 * v.h / std::pow(mu, cs_.s);
        dy[6] = (4.0 * v.a * al + 2.0 * v.d) * mu;
    };
    // Stop while the integrator can still take steps: by |alpha| ~ 1e9 the
    // caustic is ~1e-9 away and the adaptive step is about to underflow.
    const double mu_floor = 1e-10 * std::abs(init.mu0);
    ode::StopFn stop = [mu_floor](double, const double* y) {
        return std::abs(y[0]) > 1e9 || std::abs(y[6]) < mu_floor;
    };
    std::array<double, 7> y0 = {init.alpha0, init.beta0, init.gamma0, init.delta0,
                                init.epsilon0, init.kappa0, init.mu0};
    ode::Options opt;
    opt.rtol = opt.atol = tol;
    path_ = std::make_shared<ode::DenseOutput>(
        ode::integrate(rhs, y0, cs_.t_lo, t_hi, opt, stop));
}

double RiccatiPath::t_begin() const { return path_->t_begin(); }
double RiccatiPath::t_end() const { return path_->t_end(); }
bool RiccatiPath::stopped_early() const { return path_->stopped(); }

RiccatiState RiccatiPath::eval(double t) const {
    const double pad = 1e-12 * (1.0 + std::abs(t));
    if (t > path_->t_end() + pad && path_->stopped())
        throw BlowupEncountered("riccati: trajectory stopped (caustic) at t=" +
                                std::to_string(path_->t_end()) + ", asked for t=" +
                                std::to_string(t));
    std::array<double, 7> y;
    path_->eval(t, y.data()); // DomainError otherwise
    return {t, y[0], y[1], y[2], y[3], y[4], y[5], y[6]};
}

// ---------------------------------------------------------------------------
// fundamental solutions and the closed form

FundamentalPair fundamental_solutions(const coeff::CoefficientSet& cs, double t_hi, double tol) {
    auto path = characteristic_path(cs, t_hi, tol);
    check_characteristic(cs, *path);
    FundamentalPair fp;
    fp.mu0_fn = [path](double t) {
        std::array<double, 5> y;
        path->eval(t, y.data());
        return std::pair<double, double>(y[0], y[1]);
    };
    fp.mu1_fn = [path](double t) {
        std::array<double, 5> y;
        path->eval(t, y.data());
        return std::pair<double, double>(y[2], y[3]);
    };
    fp.wronskian0 = -2.0 * cs.a(cs.t_lo);
    return fp;
}

ClosedFormContext::ClosedFormContext(coeff::CoefficientSet cs, double t_hi, double tol)
    : cs_(std::move(cs)) {
    path_ = characteristic_path(cs_, t_hi, tol);
    check_characteristic(cs_, *path_);
    has_fg_ = any_nonzero(cs_.f, cs_.t_lo, t_hi) || any_nonzero(cs_.g, cs_.t_lo, t_hi);
    a_at_0_ = cs_.a(cs_.t_lo);
    d_at_0_ = cs_.d(cs_.t_lo);
    g_at_0_ = cs_.g(cs_.t_lo);
    if (a_at_0_ == 0.0)
        throw SingularCoefficientError("closed form: a vanishes at the initial time");
}

ClosedFormContext make_context(const coeff::CoefficientSet& cs, double t_hi, double tol) {
    return ClosedFormContext(cs, t_hi, tol);
}

std::array<double, 5> ClosedFormContext::raw(double t) const {
    std::array<double, 5> y;
    path_->eval(t, y.data());
    return y;
}

double ClosedFormContext::t_end() const { return path_->t_end(); }
double ClosedFormContext::mu0(double t) const { return raw(t)[0]; }
double ClosedFormContext::mu0_prime(double t) const { return raw(t)[1]; }
double ClosedFormContext::mu1(double t) const { return raw(t)[2]; }
double ClosedFormContext::mu1_prime(double t) const { return raw(t)[3]; }
double ClosedFormContext::w(double t) const { return raw(t)[4]; }

double ClosedFormContext::alpha0_kernel(double t) const {
    auto r = raw(t);
    double a = cs_.a(t);
    if (a == 0.0) throw SingularCoefficientError("alpha0 kernel: a(t) = 0");
    if (r[0] == 0.0) throw SingularPointError("alpha0 kernel: mu0(t) = 0");
    return r[1] / (4.0 * a * r[0]) - cs_.d(t) / (2.0 * a);
}

double ClosedFormContext::beta0_kernel(double t) const {
    auto r = raw(t);
    if (r[0] == 0.0) throw SingularPointError("beta0 kernel: mu0(t) = 0");
    return -r[4] / r[0];
}

double ClosedFormContext::gamma0_kernel(double t) const {
    auto r = raw(t);
    if (r[0] == 0.0) throw SingularPointError("gamma0 kernel: mu0(t) = 0");
    return r[2] / (2.0 * r[0]) + d_at_0_ / (2.0 * a_at_0_);
}

double ClosedFormContext::delta0_kernel(double t) const {
    if (!has_fg_) return 0.0;
    if (t - cs_.t_lo < T_MIN) return g_at_0_ / (2.0 * a_at_0_);
    auto r = raw(t);
    if (r[0] == 0.0) throw SingularPointError("delta0 kernel: mu0(t) = 0");
    auto integrand = [this](double s) {
        auto rs = raw(s);
        double a = cs_.a(s);
        return ((cs_.f(s) - cs_.d(s) / a * cs_.g(s)) * rs[0] + cs_.g(s) / (2.0 * a) * rs[1]) /
               rs[4];
    };
    return r[4] / r[0] * quad(integrand, cs_.t_lo, t);
}

double ClosedFormContext::epsilon0_kernel(double t) const {
    if (!has_fg_) return 0.0;
    if (t - cs_.t_lo < T_MIN) return -g_at_0_ / (2.0 * a_at_0_);
    auto r = raw(t);
    double a_t = cs_.a(t);
    if (r[1] == 0.0) throw SingularPointError("epsilon0 kernel: mu0'(t) = 0");
    auto i1 = [this](double s) {
        auto rs = raw(s);
        if (rs[1] == 0.0) throw SingularPointError("epsilon0 kernel: mu0'(s) = 0");
        auto es = coeff::eta_sigma(cs_, s);
        return cs_.a(s) * es.sigma * rs[4] / (rs[1] * rs[1]) * rs[0] * delta0_kernel(s);
    };
    auto i2 = [this](double s) {
        auto rs = raw(s);
        if (rs[1] == 0.0) throw SingularPointError("epsilon0 kernel: mu0'(s) = 0");
        double a = cs_.a(s);
        return a * rs[4] / rs[1] * (cs_.f(s) - cs_.d(s) / a * cs_.g(s));
    };
    return -2.0 * a_t * r[4] / r[1] * delta0_kernel(t) + 8.0 * quad(i1, cs_.t_lo, t) +
           2.0 * quad(i2, cs_.t_lo, t);
}

double ClosedFormContext::kappa0_kernel(double t) const {
    if (!has_fg_) return 0.0;
    if (t - cs_.t_lo < T_MIN) return 0.0;
    auto r = raw(t);
    double a_t = cs_.a(t);
    if (r[1] == 0.0) throw SingularPointError("kappa0 kernel: mu0'(t) = 0");
    double d0t = delta0_kernel(t);
    auto i1 = [this](double s) {
        auto rs = raw(s);
        if (rs[1] == 0.0) throw SingularPointError("kappa0 kernel: mu0'(s) = 0");
        auto es = coeff::eta_sigma(cs_, s);
        double md = rs[0] * delta0_kernel(s);
        return cs_.a(s) * es.sigma / (rs[1] * rs[1]) * md * md;
    };
    auto i2 = [this](double s) {
        auto rs = raw(s);
        if (rs[1] == 0.0) throw SingularPointError("kappa0 kernel: mu0'(s) = 0");
        double a = cs_.a(s);
        return a / rs[1] * rs[0] * delta0_kernel(s) * (cs_.f(s) - cs_.d(s) / a * cs_.g(s));
    };
    return a_t * r[0] / r[1] * d0t * d0t - 4.0 * quad(i1, cs_.t_lo, t) -
           2.0 * quad(i2, cs_.t_lo, t);
}

RiccatiState ClosedFormContext::eval(const RiccatiInit& init, double t) const {
    check_init(init);
    if (t - cs_.t_lo < T_MIN) {
        if (t < cs_.t_lo - 1e-12) throw DomainError("closed form: t before the initial time");
        return {t,          init.alpha0,   init.beta0,  init.gamma0,
                init.delta0, init.epsilon0, init.kappa0, init.mu0};
    }
    auto r = raw(t); // throws DomainError past t_end
    double mu0v = r[0], mu0p = r[1], mu1v = r[2], wv = r[4];
    double a_t = cs_.a(t), d_t = cs_.d(t);
    if (a_t == 0.0) throw SingularCoefficientError("closed form: a(t) = 0");
    if (mu0v == 0.0) throw SingularPointError("closed form: mu0(t) = 0");

    double al0 = mu0p / (4.0 * a_t * mu0v) - d_t / (2.0 * a_t);
    double be0 = -wv / mu0v;
    double ga0 = mu1v / (2.0 * mu0v) + d_at_0_ / (2.0 * a_at_0_);
    double de0 = delta0_kernel(t);
    double ep0 = epsilon0_kernel(t);
    double ka0 = kappa0_kernel(t);

    double den = init.alpha0 + ga0;
    if (std::abs(den) < 1e-13)
        throw BlowupEncountered("closed form: caustic (alpha(0) + gamma_0 = 0) at t=" +
                                std::to_string(t));
    double mu_lin = 2.0 * init.mu0 * mu0v * den;
    double dpe = init.delta0 + ep0;
    RiccatiState st;
    st.t = t;
    st.alpha = al0 - be0 * be0 / (4.0 * den);
    st.beta = -init.beta0 * be0 / (2.0 * den);
    st.gamma = init.gamma0 - cs_.l0 * init.beta0 * init.beta0 / (4.0 * den);
    st.delta = de0 - be0 * dpe / (2.0 * den);
    st.epsilon = init.epsilon0 - init.beta0 * dpe / (2.0 * den);
    st.kappa = init.kappa0 + ka0 - dpe * dpe / (4.0 * den);
    st.mu = cs_.n == 1 ? mu_lin : init.mu0 * std::pow(mu_lin / init.mu0, cs_.n);
    return st;
}

RiccatiState closed_form(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t) {
    if (t - cs.t_lo < T_MIN)
        return ClosedFormContext(cs, cs.t_lo + std::max(1e-6, T_MIN), 1e-12).eval(init, t);
    return ClosedFormContext(cs, t, 1e-12).eval(init, t);
}

// ---------------------------------------------------------------------------
// direct integration oracles

namespace {

RiccatiState path_state(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t,
                        Variant variant, double tol) {
    check_init(init);
    if (t - cs.t_lo < T_MIN) {
        if (t < cs.t_lo - 1e-12) throw DomainError("riccati: t before the initial time");
        return {t,          init.alpha0,   init.beta0,  init.gamma0,
                init.delta0, init.epsilon0, init.kappa0, init.mu0};
    }
    RiccatiPath path(cs, init, t, variant, tol);
    return path.eval(t);
}

} // namespace

RiccatiState ode_oracle(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t,
                        double tol) {
    return path_state(cs, init, t, Variant::plain, tol);
}

RiccatiState modified_ode(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t,
                          double tol) {
    return path_state(cs, init, t, Variant::modified, tol);
}

// ---------------------------------------------------------------------------
// multidimensional system

NDRiccatiPath::NDRiccatiPath(coeff::CoefficientSet cs, NDRiccatiInit init, double t_hi,
                             double tol)
    : cs_(std::move(cs)), init_(std::move(init)) {
    const int n = cs_.n;
    if (n < 1) throw ValidationError("nd path: need n >= 1");
    if (init_.beta0 == 0.0 || init_.mu0 == 0.0)
        throw ValidationError("nd path: beta(0) and mu(0) must be nonzero");
    if (!(t_hi > cs_.t_lo)) throw ValidationError("nd path: t_hi must exceed t_lo");
    if (t_hi > cs_.t_hi + 1e-9) throw DomainError("nd path: t_hi beyond coefficient domain");
    for (const auto* fn : {&cs_.c, &cs_.d, &cs_.f, &cs_.g})
        if (any_nonzero(*fn, cs_.t_lo, t_hi))
            throw ValidationError("nd path: requires c = d = f = g = 0");
    auto sized = [n](std::vector<double>& v, const char* name) {
        if (v.empty()) v.assign(n, 0.0);
        if (static_cast<int>(v.size()) != n)
            throw ValidationError(std::string("nd path: ") + name + " must have length n");
    };
    sized(init_.delta0, "delta0");
    sized(init_.epsilon0, "epsilon0");
    sized(init_.kappa0, "kappa0");

    std::vector<double> y0(4 + 3 * n);
    y0[0] = init_.alpha0;
    y0[1] = init_.beta0;
    y0[2] = init_.gamma0;
    y0[3] = init_.mu0;
    for (int i = 0; i < n; ++i) {
        y0[4 + i] = init_.delta0[i];
        y0[4 + n + i] = init_.epsilon0[i];
        y0[4 + 2 * n + i] = init_.kappa0[i];
    }
    ode::Rhs rhs = [this, n](double tt, const double* y, double* dy) {
        double a = cs_.a(tt), b = cs_.b(tt);
        double al = y[0], be = y[1], mu = y[3];
        dy[0] = -b - 4.0 * a * al * al;
        dy[1] = -4.0 * a * al * be;
        dy[2] = -a * be * be;
        dy[3] = 4.0 * n * a * al * mu;
        for (int i = 0; i < n; ++i) {
            double de = y[4 + i];
            dy[4 + i] = -4.0 * a * al * de;
            dy[4 + n + i] = -2.0 * a * be * de;
            dy[4 + 2 * n + i] = -a * de * de;
        }
    };
    const double mu_floor = 1e-13 * std::abs(init_.mu0);
    ode::StopFn stop = [mu_floor](double, const double* y) {
        return std::abs(y[0]) > 1e12 || std::abs(y[3]) < mu_floor;
    };
    ode::Options opt;
    opt.rtol = opt.atol = tol;
    path_ = std::make_shared<ode::DenseOutput>(ode::integrate(rhs, y0, cs_.t_lo, t_hi, opt, stop));
}

double NDRiccatiPath::t_begin() const { return path_->t_begin(); }
double NDRiccatiPath::t_end() const { return path_->t_end(); }
bool NDRiccatiPath::stopped_early() const { return path_->stopped(); }

NDRiccatiState NDRiccatiPath::eval(double t) const {
    const double pad = 1e-12 * (1.0 + std::abs(t));
    if (t > path_->t_end() + pad && path_->stopped())
        throw BlowupEncountered("nd path: trajectory stopped (caustic) at t=" +
                                std::to_string(path_->t_end()));
    const int n = cs_.n;
    std::vector<double> y = path_->eval(t);
    NDRiccatiState st;
    st.t = t;
    st.alpha = y[0];
    st.beta = y[1];
    st.gamma = y[2];
    st.mu = y[3];
    st.delta.assign(y.begin() + 4, y.begin() + 4 + n);
    st.epsilon.assign(y.begin() + 4 + n, y.begin() + 4 + 2 * n);
    st.kappa.assign(y.begin() + 4 + 2 * n, y.begin() + 4 + 3 * n);
    return st;
}

NDRiccatiState nd_ode(const coeff::CoefficientSet& cs, const NDRiccatiInit& init, double t,
                      double tol) {
    if (t - cs.t_lo < T_MIN) {
        if (t < cs.t_lo - 1e-12) throw DomainError("nd_ode: t before the initial time");
        NDRiccatiPath warm(cs, init, cs.t_lo + 1e-6, tol); // validates the inputs
        return warm.eval(cs.t_lo);
    }
    NDRiccatiPath path(cs, init, t, std::min(tol, 1e-12));

    // consistency: mu from the trajectory must satisfy the nonlinear
    // characteristic equation mu'' - (a'/a) mu' + 4nab mu + ((1-n)/n) mu'^2/mu = 0
    const int n = cs.n;
    const double fd = 3e-3;
    double c = std::clamp(t, path.t_begin() + 2 * fd, path.t_end() - 2 * fd);
    if (c - 2 * fd >= path.t_begin() && c + 2 * fd <= path.t_end()) {
        double m[5];
        for (int k = -2; k <= 2; ++k) m[k + 2] = path.eval(c + k * fd).mu;
        double d1 = (-m[4] + 8 * m[3] - 8 * m[1] + m[0]) / (12 * fd);
        double d2 = (-m[4] + 16 * m[3] - 30 * m[2] + 16 * m[1] - m[0]) / (12 * fd * fd);
        double a = cs.a(c), b = cs.b(c), ap = cs.a_prime(c);
        if (a != 0.0 && m[2] != 0.0) {
            double res = d2 - ap / a * d1 + 4.0 * n * a * b * m[2] +
                         (1.0 - n) / double(n) * d1 * d1 / m[2];
            double scale = std::abs(d2) + std::abs(ap / a * d1) +
                           std::abs(4.0 * n * a * b * m[2]) +
                           std::abs((1.0 - n) / double(n) * d1 * d1 / m[2]) + 1.0;
            if (!(std::abs(res) <= 1e-4 * scale))
                throw NumericalError("nd_ode: mu failed the characteristic self-check");
        }
    }
    return path.eval(t);
}

// ---------------------------------------------------------------------------
// blow-up detection

BlowupReport blowup_time(const coeff::CoefficientSet& cs, const RiccatiInit& init,
                         std::pair<double, double> search) {
    check_init(init);
    double lo = std::max(search.first, cs.t_lo), hi = std::min(search.second, cs.t_hi);
    if (!(hi > lo)) throw ValidationError("blowup_time: empty search interval");

    // mu evolves linearly (characteristic equation), so it crosses zero smoothly.
    ode::Rhs rhs = [&cs](double t, const double* y, double* dy) {
        auto es = coeff::eta_sigma(cs, t);
        dy[0] = y[1];
        dy[1] = es.eta * y[1] - 4.0 * es.sigma * y[0];
    };
    double mu_p0 = (4.0 * cs.a(cs.t_lo) * init.alpha0 + 2.0 * cs.d(cs.t_lo)) * init.mu0;
    std::array<double, 2> y0 = {init.mu0, mu_p0};
    ode::Options opt;
    opt.rtol = opt.atol = 1e-12;
    auto path = ode::integrate(rhs, y0, cs.t_lo, hi, opt);

    auto mu_at = [&path](double t) {
        std::array<double, 2> y;
        path.eval(t, y.data());
        return y[0];
    };

    const int N = 4096;
    BlowupReport rep;
    rep.bracket = {lo, hi};
    rep.mu_at_bracket = {mu_at(lo), mu_at(hi)};
    double prev_t = lo, prev_mu = mu_at(lo);
    for (int i = 1; i <= N; ++i) {
        double t = lo + (hi - lo) * i / N;
        double m = mu_at(t);
        if (prev_mu == 0.0) { // grid point is the root itself
            rep.t_blowup = prev_t;
            rep.bracket = {prev_t, prev_t};
            rep.mu_at_bracket = {0.0, 0.0};
            return rep;
        }
        if (prev_mu * m < 0.0) {
            double a = prev_t, b = t, fa = prev_mu;
            for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(b)); ++it) {
                double mid = 0.5 * (a + b);
                double fm = mu_at(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            rep.t_blowup = 0.5 * (a + b);
            rep.bracket = {a, b};
            rep.mu_at_bracket = {mu_at(a), mu_at(b)};
            return rep;
        }
        prev_t = t;
        prev_mu = m;
    }
    return rep; // no zero in the window
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, std::span<const RiccatiState> states,
               std::span<const std::string> src_labels) {
    bool with_src = !src_labels.empty();
    if (with_src && src_labels.size() != states.size())
        throw ValidationError("write_csv: label count mismatch");
    os << "t,alpha,beta,gamma,delta,epsilon,kappa,mu";
    if (with_src) os << ",src";
    os << "\n";
    os.precision(17);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        os << s.t << ',' << s.alpha << ',' << s.beta << ',' << s.gamma << ',' << s.delta << ','
           << s.epsilon << ',' << s.kappa << ',' << s.mu;
        if (with_src) os << ',' << src_labels[i];
        os << "\n";
    }
}

} // namespace vcnls::riccati
