#pragma once

#include "vcnls/errors.hpp"

namespace vcnls::specfun {

struct SeriesTolerance {
    double rel_tol = 1e-14;
    int max_terms = 500;
};

// Confluent hypergeometric limit function 0F1(;a;z), series with compensated
// summation.  Throws PoleError when a is a nonpositive integer, ConvergenceError
// for z < -50 (alternating series loses all digits long before that) or when
// max_terms is exhausted.
double hyp0f1(double a, double z, const SeriesTolerance& tol = {});

// Gudermannian function, gd(t) = 2 atan(tanh(t/2)).
double gudermannian(double t);

// Error function: Maclaurin series for |t| <= 3, Lentz continued fraction for
// the complement beyond.  (std::erf exists; this one is kept independent so it
// can be cross-checked against it.)
double erf(double t);

} // namespace vcnls::specfun
