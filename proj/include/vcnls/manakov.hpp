#pragma once

#include "vcnls/errors.hpp"

#include <complex>
#include <functional>
#include <string>

namespace vcnls::manakov {

// Solutions of  i chi_tau + chi_xixi + 2(|phi|^2 + |chi|^2) chi = 0  (and the
// same equation for phi).

struct DBParams {
    double C = 1.0;  // dark amplitude, nonzero
    double e = -1.0; // carrier wavenumber
    double a3 = 1.0; // bright polarization, (a3, b3) != (0, 0)
    double b3 = 1.0;
    double E() const { return 0.5 * std::log((a3 * a3 + b3 * b3) / (2.0 * C * C)); }
};

struct RWParams {
    double d2 = 1.0;
    double q = 0.0;
    int sign_c1 = 1, sign_c2 = 1; // c_i = +-2A enter the phases only through c_i^2
    double A() const { return d2 + 3.0 * q; }
    double d1() const { return d2 - 2.0 * A(); }
    double c1() const { return sign_c1 * 2.0 * A(); }
    double c2() const { return sign_c2 * 2.0 * A(); }
};

struct RW2Intermediates {
    double D, G1, G2, H1, H2;
};

struct SeedPair {
    std::function<std::complex<double>(double, double)> chi, phi; // (xi, tau)
    double carrier = 0.0; // dominant wavenumber scale, for grid heuristics
    std::string id;       // "db", "rw1", "rw2"
};

SeedPair db_soliton(const DBParams& p);
SeedPair rogue_wave_I(const RWParams& p);
SeedPair rogue_wave_II(const RWParams& p);

// The rational building blocks of the type-II wave, exposed for inspection.
RW2Intermediates rw2_intermediates(const RWParams& p, double xi, double tau);

} // namespace vcnls::manakov
