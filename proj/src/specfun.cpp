#include "vcnls/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vcnls::specfun {

double hyp0f1(double a, double z, const SeriesTolerance& tol) {
    if (!(tol.rel_tol > 0.0) || tol.max_terms < 1)
        throw ValidationError("hyp0f1: bad SeriesTolerance");
    if (a <= 0.0 && a == std::floor(a))
        throw PoleError("hyp0f1: lower parameter is a nonpositive integer, a=" + std::to_string(a));
    if (z < -50.0)
        throw ConvergenceError("hyp0f1: z < -50 would cancel catastrophically, z=" + std::to_string(z));

    // term_{k+1} = term_k * z / ((a+k)(k+1)); Kahan-compensated accumulation.
    double sum = 1.0, comp = 0.0, term = 1.0;
    int quiet = 0; // consecutive terms below tolerance (alternating series needs two)
    for (int k = 0; k < tol.max_terms; ++k) {
        term *= z / ((a + k) * (k + 1));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= tol.rel_tol * std::abs(sum)) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("hyp0f1: series did not converge in " + std::to_string(tol.max_terms) + " terms");
}

double gudermannian(double t) {
    return 2.0 * std::atan(std::tanh(0.5 * t));
}

namespace {

// erfc(x) for x >= 3 via the Laplace continued fraction,
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))))
// evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    const double tiny = 1e-300;
    double f = x, C = x, D = 0.0;
    for (int n = 1; n <= 200; ++n) {
        double an = 0.5 * n;
        D = x + an * D;
        if (D == 0.0) D = tiny;
        C = x + an / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17)
            return std::exp(-x * x) / (std::sqrt(M_PI) * f);
    }
    throw ConvergenceError("erf: continued fraction stalled at x=" + std::to_string(x));
}

} // namespace

double erf(double t) {
    double x = std::abs(t);
    if (x <= 3.0) {
        // erf(x) = (2/sqrt(pi)) sum_k (-1)^k x^{2k+1} / (k! (2k+1))
        double sum = x, comp = 0.0, term = x;
        for (int k = 1; k <= 80; ++k) {
            term *= -x * x / k;
            double contrib = term / (2 * k + 1);
            double y = contrib - comp;
            double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            if (std::abs(contrib) < 1e-17 * std::abs(sum) + 1e-300) break;
        }
        double v = 2.0 / std::sqrt(M_PI) * sum;
        return t < 0 ? -v : v;
    }
    double v = 1.0 - erfc_cf(x);
    return t < 0 ? -v : v;
}

} // namespace vcnls::specfun
