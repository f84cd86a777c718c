#pragma once

#include <vector>

#include "qnmlab/constants.hpp"
#include "qnmlab/linalg.hpp"
#include "qnmlab/materials.hpp"
#include "qnmlab/slab.hpp"

namespace qnmlab {

// Staggered-grid 1D frequency-domain Maxwell eigenproblem with a
// finite-thickness constant-stretch PML and hard walls (E = 0) at the
// outer boundaries. Nondimensional unknowns: E and Z0*H, so the
// generalized problem A x = w B x has a complex-symmetric A and a
// diagonal B, and the eigenvector pairing x^T B x dx equals the
// regularized integral of (eps E^2 - mu H^2) / eps0.

struct Grid1D {
    double x_min, x_max;
    int N; // primal cells; E lives on the N-1 interior primal nodes
    double dx() const { return (x_max - x_min) / N; }
    double e_node(int i) const { return x_min + dx() * (i + 1); } // 0..N-2
    double h_node(int i) const { return x_min + dx() * (i + 0.5); } // 0..N-1
};

struct PmlProfile1D {
    double thickness; // per side, m
    cplx stretch;     // layer-averaged complex factor f, Im(f) > 0
    // Grading exponent p: 0 keeps f constant across the layer; p >= 1
    // ramps it as f(d) = 1 + (p+1)(f-1)d^p with d the depth fraction, so
    // the layer average (and with it the total attenuation and the
    // revelation angle) is still `stretch` but the profile turns on
    // smoothly and the interface stops reflecting at O(dx^2).
    int grade = 0;
};

// Slab of a dispersive (Lorentz) material in vacuum, centered at x = 0.
// The resonance frequency must be nonzero; the polarization and current
// auxiliary fields P, J are attached to the slab nodes only.
struct LorentzSlab {
    double L;
    Material mat;
};

enum class ModeClass { Unclassified, QNM, Numerical, Unphysical };

struct DiscreteEigenMode {
    cplx omega_t;
    std::vector<cplx> right_vec; // (E, H [, P, J]) blocks
    std::vector<cplx> left_vec;  // row of X^{-1} B^{-1} / dx
    ModeClass classification = ModeClass::Unclassified;
    cplx excitation = 0.0; // alpha_m, filled per source
};

// Assembled generalized eigenproblem plus the grid bookkeeping needed to
// interpret eigenvectors.
struct Assembled {
    Matrix a;
    std::vector<cplx> b_diag;
    Grid1D grid;
    int n_e, n_h, n_aux;         // block sizes; dim = n_e + n_h + 2 n_aux
    std::vector<int> disp_nodes; // E-node indices carrying P, J fields
    cplx stretch;                // layer-averaged PML factor used
    double pml_thickness;
    int grade;                   // grading exponent used
    int dim() const { return n_e + n_h + 2 * n_aux; }
    bool in_pml(double x) const {
        return x < grid.x_min + pml_thickness ||
               x > grid.x_max - pml_thickness;
    }
    cplx stretch_at(double x) const; // local coordinate-stretch factor
};

// 1 inside [lo, hi], 0 outside, 1/2 on a node that lands on an interface
// to grid tolerance; used for material and stretch cell averages.
double inside_weight(double x, double lo, double hi, double dx);

Assembled assemble(const SlabGeometry& geom, const Grid1D& grid,
                   const PmlProfile1D& pml);
Assembled assemble(const LorentzSlab& slab, const Grid1D& grid,
                   const PmlProfile1D& pml);

enum class EigenContent { ValuesOnly, Full };

// Dense eigendecomposition of B^{-1} A; left vectors are the rows of
// X^{-1} B^{-1} / dx, so that left . B . right * dx = delta_nm exactly
// and the modal expansion of (A - w B)^{-1} s is an identity.
// ValuesOnly skips both eigenvector sets (about 4x faster) and leaves the
// vectors in the returned modes empty.
std::vector<DiscreteEigenMode> eigensolve(
    const Assembled& sys, EigenContent content = EigenContent::Full);


// Marks modes of `spectrum` by comparing against a second spectrum from
// the same grid with a different stretch: eigenvalues that persist within
// relative `tol` are QNMs, the rest numerical; anything with
// Im(w) > 0 is flagged unphysical. Greedy nearest matching.
void classify_modes(std::vector<DiscreteEigenMode>& spectrum,
                    const std::vector<DiscreteEigenMode>& other,
                    double tol = 1e-6);

// Rescales right vectors so the grid pairing dx * v^T B v equals 1 and
// left vectors to keep left . B . right * dx = delta. Near-defective
// pairs (|pairing| below 1e-8 of the vector scale) raise DefectiveMatrix.
void biorthonormalize(std::vector<DiscreteEigenMode>& modes,
                      const Assembled& sys);

struct Reconstruction {
    std::vector<cplx> alphas; // per mode, aligned with `modes`
    std::vector<cplx> field;  // E block only, on the interior nodes
    double error_vs_direct;   // max pointwise error outside the PML,
                              // relative to the direct-solve peak
};

// Expands the response to a current density J (values at the interior E
// nodes, A/m^2) at frequency w over all modes: alpha_m = dx v_m^T s /
// (w_m - w) after biorthonormalization. The error is measured against
// direct_solve on the unmapped region.
Reconstruction excitation_and_reconstruct(
    std::vector<DiscreteEigenMode>& modes, const Assembled& sys,
    const std::vector<cplx>& current, cplx omega);

// Reference solution of (A - w B) x = s by dense factorization; returns
// the E block.
std::vector<cplx> direct_solve(const Assembled& sys,
                               const std::vector<cplx>& current, cplx omega);

struct RevelationRow {
    double theta;                 // stretch angle, tan(theta) = Im f/Re f
    std::vector<int> revealed;    // analytic mode orders m found stable
    std::vector<cplx> eigenvalues; // matched discrete frequencies
};

// For each angle, eigensolves with mean stretch s (1 + i tan(theta)),
// where the magnitude scale s = |pml.stretch| and the grading comes from
// pml.grade, then repeats at magnitude 1.2 s for stability
// classification. Reports which analytic slab modes of order 1..m_max
// appear among the stable eigenvalues within `match_tol` relative.
std::vector<RevelationRow> revelation_study(const SlabGeometry& geom,
                                            const Grid1D& grid,
                                            const PmlProfile1D& pml,
                                            const std::vector<double>& thetas,
                                            int m_max,
                                            double match_tol = 2e-2);

// Discrete Eq. (B3) excitation coefficient of one normalized mode:
// gamma = -i dx sum_i J_i E_i with the mode's pairing normalized to 1.
cplx residue_gamma(const DiscreteEigenMode& mode, const Assembled& sys,
                   const std::vector<cplx>& current);

} // namespace qnmlab
