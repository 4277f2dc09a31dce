#include "vcnls/transform.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

namespace vcnls::transform {

namespace {

constexpr cplx I{0.0, 1.0};

// h must equal lambda a beta^2 mu^s along the trajectory, and mu must stay
// positive for the amplitude mu^{-1/2} to make sense.
template <class StateAt>
void check_lift(const coeff::CoefficientSet& cs, double t_lo, double t_hi, StateAt&& state_at) {
    for (int i = 0; i <= 128; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / 128.0;
        auto [beta, mu] = state_at(t);
        if (!(mu > 0.0))
            throw BlowupEncountered("lift: mu(t) <= 0 at t=" + std::to_string(t));
        double want = cs.lambda * cs.a(t) * beta * beta * std::pow(mu, cs.s);
        double have = cs.h(t);
        if (!(std::abs(have - want) <= 1e-9 * (1.0 + std::abs(have))))
            throw IntegrabilityViolation(
                "lift: h(t) != lambda a beta^2 mu^s at t=" + std::to_string(t) + " (h=" +
                std::to_string(have) + ", required=" + std::to_string(want) + ")");
    }
}

double resolve_t_hi(const coeff::CoefficientSet& cs, double t_hi) {
    if (t_hi == 0.0) return cs.t_hi;
    if (!(t_hi > cs.t_lo) || t_hi > cs.t_hi + 1e-9)
        throw ValidationError("lift: t_hi outside the coefficient domain");
    return t_hi;
}

} // namespace

// ---------------------------------------------------------------------------
// LiftedSolution

LiftedSolution::LiftedSolution(manakov::SeedPair seed, coeff::CoefficientSet cs,
                               riccati::RiccatiInit init, double t_hi)
    : seed_(std::move(seed)), cs_(std::move(cs)) {
    if (cs_.s != 1.0)
        throw ValidationError("lift: seed solutions exist for the cubic coupling (s = 1)");
    path_ = std::make_shared<riccati::RiccatiPath>(cs_, init, t_hi, riccati::Variant::plain,
                                                   1e-12);
    check_lift(cs_, path_->t_begin(), path_->t_end(), [this](double t) {
        auto st = path_->eval(t);
        return std::pair<double, double>(st.beta, st.mu);
    });
}

riccati::RiccatiState LiftedSolution::state(double t) const { return path_->eval(t); }
double LiftedSolution::t_begin() const { return path_->t_begin(); }
double LiftedSolution::t_end() const { return path_->t_end(); }

FieldPair LiftedSolution::operator()(double x, double t) const {
    auto st = path_->eval(t);
    double xi = st.beta * x + st.epsilon;
    cplx pre = std::exp(I * ((st.alpha * x + st.delta) * x + st.kappa)) / std::sqrt(st.mu);
    return {pre * seed_.chi(xi, st.gamma), pre * seed_.phi(xi, st.gamma)};
}

void LiftedSolution::sample_row(double t, std::span<const double> xs, cplx* psi,
                                cplx* phi) const {
    auto st = path_->eval(t);
    double rs = 1.0 / std::sqrt(st.mu);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        double x = xs[j];
        double xi = st.beta * x + st.epsilon;
        cplx pre = rs * std::exp(I * ((st.alpha * x + st.delta) * x + st.kappa));
        psi[j] = pre * seed_.chi(xi, st.gamma);
        phi[j] = pre * seed_.phi(xi, st.gamma);
    }
}

LiftedSolution lift(const manakov::SeedPair& seed, const coeff::CoefficientSet& cs,
                    const riccati::RiccatiInit& init, double t_hi) {
    return LiftedSolution(seed, cs, init, resolve_t_hi(cs, t_hi));
}

// ---------------------------------------------------------------------------
// BlowupSolution

BlowupSolution::BlowupSolution(coeff::CoefficientSet cs, riccati::RiccatiInit init,
                               BlowupParams bp, double t_hi)
    : cs_(std::move(cs)), bp_(bp) {
    if (!(init.mu0 > 0.0))
        throw ValidationError("blowup_solution: mu(0) must be positive");
    path_ = std::make_shared<riccati::RiccatiPath>(cs_, init, t_hi, riccati::Variant::modified,
                                                   1e-12);
}

riccati::RiccatiState BlowupSolution::state(double t) const { return path_->eval(t); }
double BlowupSolution::t_begin() const { return path_->t_begin(); }
double BlowupSolution::t_end() const { return path_->t_end(); }
bool BlowupSolution::hit_caustic() const { return path_->stopped_early(); }

FieldPair BlowupSolution::operator()(double x, double t) const {
    auto st = path_->eval(t);
    double rs = 1.0 / std::sqrt(st.mu);
    double common = (st.alpha * x + st.delta) * x + st.kappa;
    cplx psi = rs * std::exp(I * (common + st.beta * x * bp_.y + st.gamma * bp_.y * bp_.y +
                                  st.epsilon * bp_.y));
    cplx phi = rs * std::exp(I * (common + st.beta * x * bp_.z + st.gamma * bp_.z * bp_.z +
                                  st.epsilon * bp_.z));
    return {psi, phi};
}

BlowupSolution blowup_solution(const coeff::CoefficientSet& cs, const riccati::RiccatiInit& init,
                               BlowupParams bp, double t_hi) {
    return BlowupSolution(cs, init, bp, resolve_t_hi(cs, t_hi));
}

// ---------------------------------------------------------------------------
// NDLiftedSolution

NDLiftedSolution::NDLiftedSolution(manakov::SeedPair seed, coeff::CoefficientSet cs,
                                   riccati::NDRiccatiInit init, double t_hi)
    : seed_(std::move(seed)), cs_(std::move(cs)) {
    if (cs_.s != 1.0)
        throw ValidationError("lift_nd: seed solutions exist for the cubic coupling (s = 1)");
    if (std::abs(cs_.lambda + 2.0 * cs_.n) > 1e-12)
        throw ValidationError("lift_nd: the planar seed reduction needs lambda = -2n");
    path_ = std::make_shared<riccati::NDRiccatiPath>(cs_, std::move(init), t_hi, 1e-12);
    check_lift(cs_, path_->t_begin(), path_->t_end(), [this](double t) {
        auto st = path_->eval(t);
        return std::pair<double, double>(st.beta, st.mu);
    });
}

riccati::NDRiccatiState NDLiftedSolution::state(double t) const { return path_->eval(t); }
double NDLiftedSolution::t_begin() const { return path_->t_begin(); }
double NDLiftedSolution::t_end() const { return path_->t_end(); }

FieldPair NDLiftedSolution::eval(std::span<const double> x, double t) const {
    return eval(x, path_->eval(t));
}

FieldPair NDLiftedSolution::eval(std::span<const double> x,
                                 const riccati::NDRiccatiState& st) const {
    const int n = cs_.n;
    if (static_cast<int>(x.size()) != n)
        throw ValidationError("lift_nd: point has wrong dimension");
    double phase = 0.0, s_xi = 0.0;
    for (int i = 0; i < n; ++i) {
        phase += st.alpha * x[i] * x[i] + st.delta[i] * x[i] + st.kappa[i];
        s_xi += st.beta * x[i] + st.epsilon[i];
    }
    cplx pre = std::exp(I * phase) / std::sqrt(st.mu);
    double tau = -double(n) * st.gamma;
    return {pre * seed_.chi(s_xi, tau), pre * seed_.phi(s_xi, tau)};
}

NDLiftedSolution lift_nd(const manakov::SeedPair& seed, const coeff::CoefficientSet& cs,
                         const riccati::NDRiccatiInit& init, double t_hi) {
    return NDLiftedSolution(seed, cs, init, resolve_t_hi(cs, t_hi));
}

// ---------------------------------------------------------------------------
// writers

void write_state_csv(std::ostream& os, const LiftedSolution& sol, std::span<const double> xs,
                     std::span<const double> ts, const nlohmann::json& header) {
    os << "# " << header.dump() << "\n";
    os << "x,t,re_psi,im_psi,re_phi,im_phi\n";
    os.precision(17);
    std::vector<cplx> psi(xs.size()), phi(xs.size());
    for (double t : ts) {
        sol.sample_row(t, xs, psi.data(), phi.data());
        for (std::size_t j = 0; j < xs.size(); ++j)
            os << xs[j] << ',' << t << ',' << psi[j].real() << ',' << psi[j].imag() << ','
               << phi[j].real() << ',' << phi[j].imag() << "\n";
    }
}

void write_intensity_csv(std::ostream& os, const LiftedSolution& sol, std::span<const double> xs,
                         std::span<const double> ts) {
    os << "x,t,abs2_psi,abs2_phi,abs_diff\n";
    os.precision(17);
    std::vector<cplx> psi(xs.size()), phi(xs.size());
    for (double t : ts) {
        sol.sample_row(t, xs, psi.data(), phi.data());
        for (std::size_t j = 0; j < xs.size(); ++j)
            os << xs[j] << ',' << t << ',' << std::norm(psi[j]) << ',' << std::norm(phi[j]) << ','
               << std::abs(psi[j] - phi[j]) << "\n";
    }
}

} // namespace vcnls::transform
