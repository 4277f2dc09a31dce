#pragma once

#include "vcnls/errors.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace vcnls::coeff {

using TimeFn = std::function<double(double)>;

struct Values {
    double a, b, c, d, f, g, h;
};

// One variable-coefficient system
//   i psi_t = -a psi_xx + (b x^2 - i d - x f) psi + i (g - c x) psi_x
//             + h (|phi|^{2s} + |psi|^{2s}) psi
// together with the bookkeeping needed to map it onto the constant-coefficient
// pair: coupling exponent s, strength lambda, sign l0, dimension n.
struct CoefficientSet {
    TimeFn a, b, c, d, f, g, h;
    TimeFn a_prime, d_prime; // analytic time derivatives of a and d
    double s = 1.0;
    double lambda = -2.0;
    int l0 = -1;
    int n = 1;
    bool integrable_h = true; // h = lambda a beta^2 mu^s for the standard init
    std::string case_id;      // empty for ad-hoc sets
    double t_lo = 0.0, t_hi = 3.0;
    std::map<std::string, std::string> formulas; // human-readable definitions

    bool in_domain(double t) const {
        return t >= t_lo - 1e-9 && t <= t_hi + 1e-9;
    }
};

Values eval(const CoefficientSet& cs, double t); // DomainError outside [t_lo, t_hi]

struct CharacteristicCoefficients {
    double eta, sigma;
};

// eta = a'/a - 2c + 4d,  sigma = ab - cd + d^2 + d a'/(2a) - d'/2.
// SingularCoefficientError where a(t) = 0.
CharacteristicCoefficients eta_sigma(const CoefficientSet& cs, double t);

// mu'' - eta mu' + 4 sigma mu evaluated with 4th-order finite differences on
// the supplied mu handle.
double characteristic_residual(const std::function<double(double)>& mu,
                               const CoefficientSet& cs, double t);

// The coupling the transform requires: h(t) = lambda a(t) beta(t)^2 mu(t)^s.
TimeFn synthesize_h(const CoefficientSet& cs, TimeFn beta, TimeFn mu);

CoefficientSet builtin_case(const std::string& id); // UnknownCaseError
const std::vector<std::string>& case_ids();
nlohmann::json catalog_json();

} // namespace vcnls::coeff
