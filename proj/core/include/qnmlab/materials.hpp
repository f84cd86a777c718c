#pragma once

#include "qnmlab/constants.hpp"

namespace qnmlab {

// Material models evaluated at complex frequency.
//
// NonDispersive: constant relative eps_r, mu_r.
// Drude:   eps(w) = eps_inf - eps_inf wp^2 / (w^2 + i w gamma)
// Lorentz: eps(w) = eps_inf - eps_inf wp^2 / (w^2 - w0^2 + i w gamma)
// Drude is exactly Lorentz with w0 = 0. All models are non-magnetic apart
// from the mu_r field of NonDispersive.
class Material {
public:
    static Material nondispersive(cplx eps_r, cplx mu_r = 1.0);
    static Material dielectric(double n) { return nondispersive(n * n); }
    static Material vacuum() { return nondispersive(1.0); }
    static Material drude(double eps_inf, double omega_p, double gamma) {
        return Material(eps_inf, omega_p, 0.0, gamma);
    }
    static Material lorentz(double eps_inf, double omega_p, double omega_0,
                            double gamma) {
        return Material(eps_inf, omega_p, omega_0, gamma);
    }

    // Relative permittivity at complex frequency w. Throws
    // EvaluationAtMaterialPole when the Lorentz denominator vanishes.
    cplx permittivity(cplx w) const;

    // d(w*eps)/dw, relative units. This is the dispersion-corrected weight
    // that replaces eps in energy-type mode integrals.
    cplx d_omega_eps(cplx w) const;

    // Relative permeability (constant for every supported model).
    cplx permeability(cplx) const { return mu_r_; }

    // d(w*mu)/dw in absolute units.
    cplx d_omega_mu(cplx) const { return mu0 * mu_r_; }

    bool dispersive() const { return omega_p_ != 0.0; }
    double eps_inf() const { return eps_inf_; }
    double omega_p() const { return omega_p_; }
    double omega_0() const { return omega_0_; }
    double gamma() const { return gamma_; }

private:
    Material(double eps_inf, double omega_p, double omega_0, double gamma)
        : eps_r_(eps_inf), mu_r_(1.0), eps_inf_(eps_inf), omega_p_(omega_p),
          omega_0_(omega_0), gamma_(gamma) {}

    cplx denominator(cplx w) const;

    cplx eps_r_; // NonDispersive value; equals eps_inf for dispersive models
    cplx mu_r_;
    double eps_inf_;
    double omega_p_;
    double omega_0_;
    double gamma_;
};

} // namespace qnmlab
