#pragma once

#include "vcnls/coefficients.hpp"
#include "vcnls/errors.hpp"
#include "vcnls/manakov.hpp"
#include "vcnls/riccati.hpp"

#include <complex>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>

namespace vcnls::transform {

using cplx = std::complex<double>;
using FieldPair = std::pair<cplx, cplx>; // (psi, phi)

// Solution pair of the variable-coefficient system obtained by dressing a
// constant-coefficient seed:
//   psi(x,t) = mu^{-1/2} exp[i(alpha x^2 + delta x + kappa)] chi(beta x + epsilon, gamma)
class LiftedSolution {
  public:
    LiftedSolution(manakov::SeedPair seed, coeff::CoefficientSet cs, riccati::RiccatiInit init,
                   double t_hi);

    FieldPair operator()(double x, double t) const;
    // One Riccati lookup for the whole row.
    void sample_row(double t, std::span<const double> xs, cplx* psi, cplx* phi) const;
    riccati::RiccatiState state(double t) const;
    const coeff::CoefficientSet& cs() const { return cs_; }
    const manakov::SeedPair& seed() const { return seed_; }
    double t_begin() const;
    double t_end() const;

  private:
    manakov::SeedPair seed_;
    coeff::CoefficientSet cs_;
    std::shared_ptr<const riccati::RiccatiPath> path_;
};

// Checks h(t) = lambda a beta^2 mu^s along the trajectory (IntegrabilityViolation
// otherwise), requires s = 1 and mu > 0.  t_hi = 0 means the case's full domain.
LiftedSolution lift(const manakov::SeedPair& seed, const coeff::CoefficientSet& cs,
                    const riccati::RiccatiInit& init = {}, double t_hi = 0.0);

// Gaussian-free singular family psi = mu^{-1/2} exp[i(alpha x^2 + beta x y +
// gamma y^2 + delta x + epsilon y + kappa)] (phi with z) on the modified system.
struct BlowupParams {
    double y = 0.0, z = 0.0;
};

class BlowupSolution {
  public:
    BlowupSolution(coeff::CoefficientSet cs, riccati::RiccatiInit init, BlowupParams bp,
                   double t_hi);
    FieldPair operator()(double x, double t) const; // BlowupEncountered past t_end
    riccati::RiccatiState state(double t) const;
    const coeff::CoefficientSet& cs() const { return cs_; }
    double t_begin() const;
    double t_end() const;
    bool hit_caustic() const;

  private:
    coeff::CoefficientSet cs_;
    BlowupParams bp_;
    std::shared_ptr<const riccati::RiccatiPath> path_;
};

BlowupSolution blowup_solution(const coeff::CoefficientSet& cs, const riccati::RiccatiInit& init,
                               BlowupParams bp = {}, double t_hi = 0.0);

// n-dimensional dressing of a 1-D seed:
//   psi(x,t) = mu^{-1/2} exp[i(alpha |x|^2 + sum delta_i x_i + sum kappa_i)]
//              chi(sum_i (beta x_i + epsilon_i), -n gamma)
// Valid when lambda = -2n (and s = 1).
class NDLiftedSolution {
  public:
    NDLiftedSolution(manakov::SeedPair seed, coeff::CoefficientSet cs,
                     riccati::NDRiccatiInit init, double t_hi);

    int n() const { return cs_.n; }
    riccati::NDRiccatiState state(double t) const;
    FieldPair eval(std::span<const double> x, double t) const;
    // Fast path when the caller holds the state for a time slice.
    FieldPair eval(std::span<const double> x, const riccati::NDRiccatiState& st) const;
    const coeff::CoefficientSet& cs() const { return cs_; }
    const manakov::SeedPair& seed() const { return seed_; }
    double t_begin() const;
    double t_end() const;

  private:
    manakov::SeedPair seed_;
    coeff::CoefficientSet cs_;
    std::shared_ptr<const riccati::NDRiccatiPath> path_;
};

NDLiftedSolution lift_nd(const manakov::SeedPair& seed, const coeff::CoefficientSet& cs,
                         const riccati::NDRiccatiInit& init = {}, double t_hi = 0.0);

// CSV "x,t,re_psi,im_psi,re_phi,im_phi" preceded by a '#'-prefixed JSON header.
void write_state_csv(std::ostream& os, const LiftedSolution& sol, std::span<const double> xs,
                     std::span<const double> ts, const nlohmann::json& header);

// CSV "x,t,abs2_psi,abs2_phi,abs_diff".
void write_intensity_csv(std::ostream& os, const LiftedSolution& sol, std::span<const double> xs,
                         std::span<const double> ts);

} // namespace vcnls::transform
