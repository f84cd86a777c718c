#pragma once

#include <vector>

#include "qnmlab/constants.hpp"

namespace qnmlab {

// Symmetric non-dispersive slab of index n and thickness L centered at
// x = 0, vacuum outside.
struct SlabGeometry {
    double n; // refractive index, > 1
    double L; // thickness, m
};

enum class Parity { Even, Odd };

// One slab resonance. Fields are stored with unit interior amplitude:
// E = cos(k1 x) (even) or sin(k1 x) (odd) inside, A exp(ik0(|x|-L/2))
// outside with the sign set by parity.
struct SlabMode {
    int m;            // >= 1
    cplx omega_t;     // complex eigenfrequency, Im < 0
    Parity parity;
    cplx interior_amp;
    cplx exterior_amp;
    cplx norm;        // filled by slab_norm_exact callers
};

struct FieldEH {
    cplx E;
    cplx H;
};

// Closed-form resonances w_m = (c/(nL)) (m pi - i ln((n+1)/(n-1))),
// m = 1..m_max. Even m gives even parity.
std::vector<SlabMode> slab_qnm_frequencies(const SlabGeometry& geom,
                                           int m_max);

// The m = 0 root of the same round-trip condition: purely imaginary
// frequency (overdamped, Q = 0), even parity, its own Hermitian twin. It
// carries a residue like any other pole and belongs in the Green-function
// expansion.
SlabMode slab_overdamped_mode(const SlabGeometry& geom);

// |D(w)| of the outgoing-wave transfer-matrix determinant, vanishing at
// resonances; used to validate the closed form.
cplx slab_dispersion(const SlabGeometry& geom, cplx omega);

// Mode field at real position x. H = E' / (i w mu0).
FieldEH slab_qnm_field(const SlabMode& mode, const SlabGeometry& geom,
                       double x);

// Analytic continuation of the mode field to complex position (used on
// complex integration paths; the region is chosen by Re(x)).
FieldEH slab_qnm_field_c(const SlabMode& mode, const SlabGeometry& geom,
                         cplx x);

// Exact norm: interior integral of (eps E^2 - mu H^2) in closed form plus
// the exterior tails integrated analytically along the complex path
// x(s) = L/2 + (1 + i*slope)(s - L/2). The tails vanish identically for an
// outgoing wave in vacuum, so the result is eps0 n^2 L for unit interior
// amplitude. Throws RegularizationAngleTooSmall if slope <= 1/(2Q).
cplx slab_norm_exact(const SlabMode& mode, const SlabGeometry& geom,
                     double slope = 1.0);

// 1D analogue of the surface-regularized norm evaluated at radius R:
// 2 int_{-R}^{R} eps E^2 dx + (i eps0 c / w)(E(R)^2 + E(-R)^2).
// R-independent and equal to slab_norm_exact.
cplx slab_lk_norm(const SlabMode& mode, const SlabGeometry& geom, double R);

// The same volume integral truncated at +-R with NO surface term: keeps an
// oscillating remainder whose envelope grows like exp(2|Im w| R / c).
cplx slab_lk_truncated(const SlabMode& mode, const SlabGeometry& geom,
                       double R);

// Driven field at x from a unit point current sheet at x_src, by direct
// transfer-matrix solve of E'' + (w/c)^2 eps_r E = -i w mu0 delta(x-x_src).
cplx slab_driven_field(const SlabGeometry& geom, double x, double x_src,
                       cplx omega);

// Pole expansion of the driven field: sum over the first M resonance pairs
// (each mode plus its Hermitian twin) of gamma_k E_k(x) / (w - w_k).
// Sets *outside (when given) if |x| >= L/2, where the expansion is not
// expected to converge.
cplx slab_green_expansion(const SlabGeometry& geom, double x, double x_src,
                          double omega, int M, bool* outside = nullptr);

// Norm recovered from the residue of the driven response at complex
// frequencies w_m + delta; agrees with slab_norm_exact.
cplx slab_pole_response_norm(const SlabGeometry& geom, const SlabMode& mode,
                             double x_src);

} // namespace qnmlab
