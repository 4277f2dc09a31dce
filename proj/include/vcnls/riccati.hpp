#pragma once

#include "vcnls/coefficients.hpp"
#include "vcnls/errors.hpp"
#include "vcnls/ode.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace vcnls::riccati {

// Initial data at t = t_lo for (alpha, beta, gamma, delta, epsilon, kappa, mu).
// Defaults are the standard choice used throughout the worked cases.
struct RiccatiInit {
    double alpha0 = 0.0;
    double beta0 = 1.0;
    double gamma0 = 0.0;
    double delta0 = 1.0;
    double epsilon0 = 0.0;
    double kappa0 = 0.0;
    double mu0 = 1.0;
};

struct RiccatiState {
    double t;
    double alpha, beta, gamma, delta, epsilon, kappa, mu;
};

enum class Variant {
    plain,   // gamma' = -l0 a beta^2,          kappa' = g delta - a delta^2
    modified // gamma' = -a beta^2 (l0 = 1),    kappa' = g delta - a delta^2 - 2h/mu^s
};

// Dense trajectory of the system by direct adaptive integration.
class RiccatiPath {
  public:
    RiccatiPath(coeff::CoefficientSet cs, RiccatiInit init, double t_hi,
                Variant variant = Variant::plain, double tol = 1e-12);
    RiccatiState eval(double t) const; // DomainError outside, BlowupEncountered past a stop
    double t_begin() const;
    double t_end() const;          // < requested t_hi if the trajectory hit a caustic
    bool stopped_early() const;
    const coeff::CoefficientSet& cs() const { return cs_; }
    const RiccatiInit& init() const { return init_; }
    Variant variant() const { return variant_; }

  private:
    coeff::CoefficientSet cs_;
    RiccatiInit init_;
    Variant variant_;
    double t_hi_requested_;
    std::shared_ptr<const ode::DenseOutput> path_;
};

// Two solutions of the characteristic equation mu'' - eta mu' + 4 sigma mu = 0
// with mu0(0) = 0, mu0'(0) = 2a(0) and mu1(0) = 1, mu1'(0) = 0.  The handles
// return (value, derivative).
struct FundamentalPair {
    std::function<std::pair<double, double>(double)> mu0_fn, mu1_fn;
    double wronskian0; // mu0 mu1' - mu0' mu1 at t = t_lo, equals -2 a(t_lo)
};

FundamentalPair fundamental_solutions(const coeff::CoefficientSet& cs, double t_hi,
                                      double tol = 1e-12);

// Everything needed to evaluate the closed-form solution built from the
// fundamental pair: the kernels alpha_0, beta_0, gamma_0 and (when f or g is
// present) the quadrature kernels delta_0, epsilon_0, kappa_0.
class ClosedFormContext {
  public:
    ClosedFormContext(coeff::CoefficientSet cs, double t_hi, double tol = 1e-12);

    RiccatiState eval(const RiccatiInit& init, double t) const;

    double mu0(double t) const;
    double mu0_prime(double t) const;
    double mu1(double t) const;
    double mu1_prime(double t) const;
    double w(double t) const; // exp(-int_0^t (c - 2d))
    double alpha0_kernel(double t) const;
    double beta0_kernel(double t) const;
    double gamma0_kernel(double t) const;
    double delta0_kernel(double t) const;
    double epsilon0_kernel(double t) const;
    double kappa0_kernel(double t) const;
    bool has_fg() const { return has_fg_; }
    double t_end() const;
    const coeff::CoefficientSet& cs() const { return cs_; }

  private:
    std::array<double, 5> raw(double t) const; // [mu0, mu0', mu1, mu1', w]
    coeff::CoefficientSet cs_;
    std::shared_ptr<const ode::DenseOutput> path_;
    bool has_fg_ = false;
    double a_at_0_, d_at_0_, g_at_0_;
};

ClosedFormContext make_context(const coeff::CoefficientSet& cs, double t_hi, double tol = 1e-12);

// Closed-form state at time t (builds a throwaway context; prefer make_context
// + ClosedFormContext::eval when sampling many times).
RiccatiState closed_form(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t);

// Independent route: direct adaptive integration of the system.
RiccatiState ode_oracle(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t,
                        double tol = 1e-10);

// Same, for the modified system (gamma with l0 = 1, kappa with the -2h/mu^s term).
RiccatiState modified_ode(const coeff::CoefficientSet& cs, const RiccatiInit& init, double t,
                          double tol = 1e-10);

// Multidimensional radial system (requires c = d = f = g = 0):
//   alpha' = -b - 4 a alpha^2,  beta' = -4 a alpha beta,  gamma' = -a beta^2,
//   delta_i' = -4 a alpha delta_i,  epsilon_i' = -2 a beta delta_i,
//   kappa_i' = -a delta_i^2,  mu' = 4 n a alpha mu.
struct NDRiccatiInit {
    double alpha0 = 0.0, beta0 = 1.0, gamma0 = 0.0, mu0 = 1.0;
    std::vector<double> delta0, epsilon0, kappa0; // size n (missing = zeros)
};

struct NDRiccatiState {
    double t;
    double alpha, beta, gamma, mu;
    std::vector<double> delta, epsilon, kappa;
};

// Dense trajectory of the multidimensional system.
class NDRiccatiPath {
  public:
    NDRiccatiPath(coeff::CoefficientSet cs, NDRiccatiInit init, double t_hi, double tol = 1e-12);
    NDRiccatiState eval(double t) const;
    double t_begin() const;
    double t_end() const;
    bool stopped_early() const;
    const coeff::CoefficientSet& cs() const { return cs_; }
    const NDRiccatiInit& init() const { return init_; }

  private:
    coeff::CoefficientSet cs_;
    NDRiccatiInit init_;
    std::shared_ptr<const ode::DenseOutput> path_;
};

NDRiccatiState nd_ode(const coeff::CoefficientSet& cs, const NDRiccatiInit& init, double t,
                      double tol = 1e-10);

// Earliest zero of mu(t) inside `search`, located on the characteristic
// equation (linear, so the trajectory passes smoothly through the zero) and
// refined by bisection on the dense output.
struct BlowupReport {
    std::optional<double> t_blowup;
    std::pair<double, double> bracket;
    std::pair<double, double> mu_at_bracket;
};

BlowupReport blowup_time(const coeff::CoefficientSet& cs, const RiccatiInit& init,
                         std::pair<double, double> search);

// CSV rows "t,alpha,beta,gamma,delta,epsilon,kappa,mu[,src]".
void write_csv(std::ostream& os, std::span<const RiccatiState> states,
               std::span<const std::string> src_labels = {});

} // namespace vcnls::riccati
