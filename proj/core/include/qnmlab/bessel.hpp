#pragma once

#include "qnmlab/constants.hpp"

namespace qnmlab {

// Spherical Bessel functions of complex argument, orders 0..lmax.
// sph_jn uses the series for small |z|, upward recurrence when it is
// stable (l < |z|), and normalized downward recurrence otherwise.
// sph_yn always recurs upward (stable for y).
void sph_jn(int lmax, cplx z, cplx* j);
void sph_yn(int lmax, cplx z, cplx* y);

cplx sph_j(int l, cplx z);
cplx sph_y(int l, cplx z);
cplx sph_h1(int l, cplx z); // j + i y, outgoing convention exp(+iz)/z

// Derivatives with respect to the argument via
// f_l' = f_{l-1} - (l+1) f_l / z.
cplx sph_j_d(int l, cplx z);
cplx sph_h1_d(int l, cplx z);

// Riccati-Bessel psi_l(z) = z j_l(z), xi_l(z) = z h1_l(z) and their
// derivatives with respect to the argument.
cplx riccati_psi(int l, cplx z);
cplx riccati_psi_d(int l, cplx z);
cplx riccati_xi(int l, cplx z);
cplx riccati_xi_d(int l, cplx z);

} // namespace qnmlab
