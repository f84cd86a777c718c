#pragma once

#include <vector>

#include "qnmlab/constants.hpp"
#include "qnmlab/materials.hpp"

namespace qnmlab {

struct SphereGeometry {
    double a;          // radius, m
    Material interior;
    Material exterior; // must be non-dispersive
};

enum class MiePol { TM, TE };

struct MieMode {
    int l;
    MiePol pol;
    cplx omega_t;
    cplx k_in, k_out; // interior/exterior wavenumbers at omega_t
    cplx A_in, A_out; // matching amplitudes, A_in = 1 by convention
    cplx norm;        // filled by the norm engines
};

// Denominator of the Mie scattering coefficient; zeros are the QNM
// frequencies. TM: eps_in psi_l(z_in) xi_l'(z_out)
//                 - eps_out (k_in/k_out) xi_l(z_out) psi_l'(z_in),
// with z = k a. TE replaces the eps factors by mu (= 1 for all models).
cplx mie_dispersion(const SphereGeometry& geom, int l, MiePol pol,
                    cplx omega);

// Newton refinement of a root of mie_dispersion from a nearby guess,
// with the matched amplitudes filled in. Derivative by central difference
// with step 1e-7 |omega|; converged when |dw|/|w| < 1e-13.
MieMode find_mie_qnm(const SphereGeometry& geom, int l, MiePol pol,
                     cplx guess);

// Coarse |D| scan over Re(w) in [0.3, 1.2] * 2 pi c / lambda_target,
// Im(w) in [-0.5, 0] * Re(w) on a 60x40 grid; returns the local minima as
// Newton seeds, best first.
std::vector<cplx> mie_scan_minima(const SphereGeometry& geom, int l,
                                  MiePol pol, double lambda_target);

// Radial factors of the l = 1, m = 0 fields at (possibly complex) radius,
// such that for TM: H_phi = Hphi sin(theta), E_r = Er cos(theta),
// E_theta = Eth sin(theta). TE is the dual arrangement with
// E_phi = Hphi-slot, H_r = Er-slot, H_theta = Eth-slot.
struct MieRadial {
    cplx g;      // H_phi factor (TM) or E_phi factor (TE)
    cplx er;     // E_r factor (TM) or H_r factor (TE)
    cplx eth;    // E_theta factor (TM) or H_theta factor (TE)
    cplx dg_dr;  // exact radial derivatives of the above
    cplx der_dr;
    cplx deth_dr;
};
MieRadial mie_radial(const MieMode& mode, const SphereGeometry& geom, cplx r);

struct SphVec {
    cplx r, theta, phi;
};

// Full vector fields at (r, theta, phi); phi enters only through the m = 0
// axisymmetry (no dependence), kept for interface completeness.
void mie_field(const MieMode& mode, const SphereGeometry& geom, double r,
               double theta, double phi, SphVec& E, SphVec& H);

// Exact one-sided radial derivatives of the field components (r != a).
void mie_radial_derivative(const MieMode& mode, const SphereGeometry& geom,
                           double r, double theta, double phi, SphVec& dE,
                           SphVec& dH);

} // namespace qnmlab
