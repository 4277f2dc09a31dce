#include "vcnls/manakov.hpp"

#include <cmath>

namespace vcnls::manakov {

namespace {

constexpr double SQRT3 = 1.7320508075688772;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

void check_rw(const RWParams& p) {
    if (p.A() == 0.0) throw ValidationError("rogue wave: A = d2 + 3q must be nonzero");
    if (std::abs(p.sign_c1) != 1 || std::abs(p.sign_c2) != 1)
        throw ValidationError("rogue wave: sign_c1/sign_c2 must be +-1");
}

} // namespace

SeedPair db_soliton(const DBParams& p) {
    if (p.C == 0.0) throw ValidationError("db_soliton: C must be nonzero");
    if (p.a3 == 0.0 && p.b3 == 0.0) throw ValidationError("db_soliton: (a3, b3) must be nonzero");
    const double C = p.C, e = p.e, E = p.E();
    // |amp| = sqrt(2) |C| makes the pair satisfy the coupled system exactly
    const cplx amp = -std::sqrt(2.0) * C * cplx(p.a3, p.b3) / std::hypot(p.a3, p.b3);

    SeedPair s;
    s.id = "db";
    s.carrier = std::abs(e) + std::abs(C);
    s.chi = [C, e, E](double xi, double tau) {
        double u = C * (xi - 2.0 * e * tau) + E;
        return C * std::tanh(u) * std::exp(I * (e * xi + (2.0 * C * C - e * e) * tau));
    };
    s.phi = [C, e, E, amp](double xi, double tau) {
        double u = C * (xi - 2.0 * e * tau) + E;
        return amp / std::cosh(u) * std::exp(I * (e * xi + (3.0 * C * C - e * e) * tau));
    };
    return s;
}

SeedPair rogue_wave_I(const RWParams& p) {
    check_rw(p);
    const double A = p.A(), d1 = p.d1(), d2 = p.d2;
    const double w0 = 2.0 * p.c1() * p.c1() + 2.0 * p.c2() * p.c2(); // = 16 A^2
    const double q = p.q;

    SeedPair s;
    s.id = "rw1";
    s.carrier = std::max(std::abs(d1), std::abs(d2));
    auto make = [=](double dk, double sgn) {
        return [=](double xi, double tau) {
            double B = xi + 6.0 * q * tau;
            double pp = A * B, r = A * A * tau;
            double den = (12.0 * pp + 8.0 * SQRT3) * pp + 5.0 + 144.0 * r * r;
            cplx num(-6.0 * SQRT3 * pp - sgn * 36.0 * SQRT3 * r - 3.0,
                     36.0 * r + sgn * (6.0 * pp + 5.0 * SQRT3));
            cplx base(-1.0, -sgn * SQRT3);
            double theta = dk * xi + (w0 - dk * dk) * tau;
            return A * std::exp(I * theta) * (base + num / den);
        };
    };
    s.chi = make(d1, +1.0);
    s.phi = make(d2, -1.0);
    return s;
}

RW2Intermediates rw2_intermediates(const RWParams& par, double xi, double tau) {
    check_rw(par);
    const double A = par.A(), q = par.q;
    double B = xi + 6.0 * q * tau;
    double p = A * B, r = A * A * tau;
    double p_poly_D = (((12.0 * p + 16.0 * SQRT3) * p + 24.0) * p + 4.0 * SQRT3) * p + 1.0;
    double D = p_poly_D + 48.0 * r * r * ((6.0 * p + 8.0 * SQRT3) * p + 9.0) +
               1728.0 * r * r * r * r;
    // G1 = -3(g_even + g_odd),  G2 = 3(-g_even + g_odd)  with
    // g_even = -1 + 6p^2 + 4 sqrt3 p^3 + 24 r^2 (3 + 2 sqrt3 p)
    // g_odd  = 4r (sqrt3 + 12p + 6 sqrt3 p^2) + 288 sqrt3 r^3
    double g_even = (4.0 * SQRT3 * p + 6.0) * p * p - 1.0 +
                    24.0 * r * r * (2.0 * SQRT3 * p + 3.0);
    double g_odd = 4.0 * r * ((6.0 * SQRT3 * p + 12.0) * p + SQRT3) +
                   288.0 * SQRT3 * r * r * r;
    double G1 = -3.0 * (g_even + g_odd);
    double G2 = 3.0 * (-g_even + g_odd);
    // H1 = h_even + h_odd,  H2 = -h_even + h_odd  with
    // h_even = sqrt3 + 12p + 18 sqrt3 p^2 + 12 p^3 + 24 r^2 (13 sqrt3 + 6p)
    // h_odd  = 12r (9 + 8 sqrt3 p + 6 p^2) + 864 r^3
    double h_even = ((12.0 * p + 18.0 * SQRT3) * p + 12.0) * p + SQRT3 +
                    24.0 * r * r * (13.0 * SQRT3 + 6.0 * p);
    double h_odd = 12.0 * r * ((6.0 * p + 8.0 * SQRT3) * p + 9.0) + 864.0 * r * r * r;
    double H1 = h_even + h_odd;
    double H2 = -h_even + h_odd;
    return {D, G1, G2, H1, H2};
}

SeedPair rogue_wave_II(const RWParams& p) {
    check_rw(p);
    const double A = p.A(), d1 = p.d1(), d2 = p.d2;
    const double w0 = 2.0 * p.c1() * p.c1() + 2.0 * p.c2() * p.c2();

    SeedPair s;
    s.id = "rw2";
    s.carrier = std::max(std::abs(d1), std::abs(d2));
    s.chi = [p, A, d1, w0](double xi, double tau) {
        auto m = rw2_intermediates(p, xi, tau);
        if (std::abs(m.D) < 1e-12)
            throw SingularPointError("rogue_wave_II: denominator vanished");
        double theta = d1 * xi + (w0 - d1 * d1) * tau;
        return A * std::exp(I * theta) * (cplx(-1.0, -SQRT3) + cplx(m.G1, m.H1) / m.D);
    };
    s.phi = [p, A, d2, w0](double xi, double tau) {
        auto m = rw2_intermediates(p, xi, tau);
        if (std::abs(m.D) < 1e-12)
            throw SingularPointError("rogue_wave_II: denominator vanished");
        double theta = d2 * xi + (w0 - d2 * d2) * tau;
        return A * std::exp(I * theta) * (cplx(-1.0, SQRT3) + cplx(m.G2, m.H2) / m.D);
    };
    return s;
}

} // namespace vcnls::manakov
