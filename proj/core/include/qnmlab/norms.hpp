#pragma once

#include <map>
#include <string>
#include <vector>

#include "qnmlab/constants.hpp"
#include "qnmlab/mie.hpp"

namespace qnmlab {

// The four normalization engines for spherical (l = 1) QNMs, plus the
// surface-term identities used to cross-check them.

enum class NormMethod { LK, M_exact, M_fd, PML, PoleResponse };

const char* norm_method_name(NormMethod m);

struct NormResult {
    NormMethod method;
    double R;   // integration radius, m
    cplx value; // the (unnormalized) squared-norm integral
    std::map<std::string, std::string> meta; // every tunable used
};

// Complex radial stretch r(s) = R + alpha (s - R) applied for
// R < s < R + T. Angle condition: Im(alpha)/Re(alpha) > 1/(2Q).
struct PmlMap {
    double R;
    cplx alpha = cplx(1.0, 0.5);
    double T = 4e-6;
};

enum class DerivScheme { Exact, FiniteDifference };

// Volume integral of E.(eps + d(w eps)/dw).E over the ball of radius R
// plus the surface term (i eps0 n c / w) \oint E.E dS. Evaluated at the
// given finite R; the R -> infinity limit of this quantity does not exist
// and no limit is attempted.
NormResult lk_norm(const MieMode& mode, const SphereGeometry& geom,
                   double R);

// Volume integral of (E.d(w eps)/dw.E - H.d(w mu)/dw.H) over the ball of
// radius R plus the first-order-derivative surface term
// (i/w) \oint [E x (r.grad)H - ((r.grad)E) x H] . dS.
// Radial derivatives on the surface are either exact or centered finite
// differences with step h (default 1e-4 a).
NormResult m_norm(const MieMode& mode, const SphereGeometry& geom, double R,
                  DerivScheme scheme, double h = 0.0);

// Same volume integrand as the M norm inside the ball of radius map.R,
// continued along the complex radial path of the map outside it. The tail
// beyond T must contribute < 1e-12 of the total; T is doubled
// automatically (up to 6 times) when it does not.
NormResult pml_norm(const MieMode& mode, const SphereGeometry& geom,
                    PmlMap map);

// Extracts the norm from the residue of the driven response: a shell
// current J = delta(r - r_src) sin(theta) theta_hat is solved at complex
// frequencies straddling the eigenfrequency and the pole strength gives
// N = -i (8 pi / 3) r_src^2 E_theta(r_src)^2 / Res[E_theta]. TM only.
NormResult pole_response_norm_sphere(const MieMode& mode,
                                     const SphereGeometry& geom,
                                     double r_src);

// Surface term of the LK norm, (i eps0 n c / w) \oint E.E dS on the
// sphere of radius R. Also one side of the far-field identity below.
cplx lk_surface_term(const MieMode& mode, const SphereGeometry& geom,
                     double R);

// Far-field surface identity: returns
// I_surf_LK + \int (E.eps.E + H.mu.H) dV over the ball of radius R.
// Small relative to either term once R is a wavelength or more.
cplx lk_identity_check(const MieMode& mode, const SphereGeometry& geom,
                       double R);

// Exact Poynting identity (divergence theorem, no approximation):
// relative residual of \oint (E x H).dS against
// i w \int (E.eps.E + H.mu.H) dV. Should sit at quadrature noise for any
// R > a.
double poynting_identity_residual(const MieMode& mode,
                                  const SphereGeometry& geom, double R);

struct SurfaceEquiv {
    cplx i_pml;    // complex-path continuation of the volume integrand
    cplx i_surf_m; // first-order-derivative surface term at R
    double rel_diff;
};

// Computes both sides of the PML / M surface-term equivalence
// independently. Requires a homogeneous non-dispersive exterior.
SurfaceEquiv m_pml_surface_equiv(const MieMode& mode,
                                 const SphereGeometry& geom, double R,
                                 PmlMap map);

// One NormResult per (R, method), row-major in R then method, evaluated
// independently. Per-point failures are recorded in meta["error"] with a
// NaN value instead of aborting the sweep.
std::vector<NormResult> norm_sweep(const MieMode& mode,
                                   const SphereGeometry& geom,
                                   const std::vector<double>& R_list,
                                   const std::vector<NormMethod>& methods);

} // namespace qnmlab
