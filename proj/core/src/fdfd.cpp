#include "qnmlab/fdfd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {

void check_grid(const Grid1D& grid, double slab_L, const PmlProfile1D& pml) {
    if (grid.N < 50) throw GridTooCoarse("need at least 50 cells");
    if (grid.x_max <= grid.x_min) throw GridTooCoarse("empty domain");
    if (slab_L > 0.0 && grid.dx() > slab_L / 20.0 * (1.0 + 1e-12))
        throw GridTooCoarse("need at least 20 cells per slab thickness");
    if (pml.stretch != cplx(1.0, 0.0) && pml.stretch.imag() <= 0.0)
        throw RegularizationAngleTooSmall(
            "PML stretch needs a positive imaginary part");
    if (2.0 * pml.thickness >= grid.x_max - grid.x_min)
        throw GridTooCoarse("PML layers overlap");
}

} // namespace

double inside_weight(double x, double lo, double hi, double dx) {
    const double tol = 1e-9 * dx;
    if (std::abs(x - lo) < tol || std::abs(x - hi) < tol) return 0.5;
    return (x > lo && x < hi) ? 1.0 : 0.0;
}

cplx Assembled::stretch_at(double x) const {
    const double lo = grid.x_min + pml_thickness;
    const double hi = grid.x_max - pml_thickness;
    if (grade <= 0) {
        // Constant layer; average on a node that sits exactly on the PML
        // boundary to keep the scheme O(dx^2) across the interface.
        const double w = 1.0 - inside_weight(x, lo, hi, grid.dx());
        return 1.0 + (stretch - 1.0) * w;
    }
    double d = 0.0;
    if (x < lo) d = (lo - x) / pml_thickness;
    else if (x > hi) d = (x - hi) / pml_thickness;
    if (d <= 0.0) return 1.0;
    return 1.0 + (grade + 1.0) * (stretch - 1.0) *
                     std::pow(d, static_cast<double>(grade));
}

namespace {

// Shared assembly of the two-field curl blocks:
//   row E:  -ic D_h H = w eps f_e E   (+ dispersive terms)
//   row H:   ic D_e E = -w f_h H
// with D_e the forward and D_h the backward difference, so A is complex
// symmetric and B = diag(eps f_e, -f_h) is diagonal.
Assembled assemble_common(const Grid1D& grid, const PmlProfile1D& pml,
                          const std::vector<cplx>& eps_static,
                          const std::vector<double>& w_disp,
                          const Material* disp_mat) {
    Assembled sys;
    sys.grid = grid;
    sys.stretch = pml.stretch;
    sys.pml_thickness = pml.thickness;
    sys.grade = pml.grade;
    sys.n_e = grid.N - 1;
    sys.n_h = grid.N;
    for (int i = 0; i < sys.n_e; ++i)
        if (w_disp[i] > 0.0) sys.disp_nodes.push_back(i);
    sys.n_aux = static_cast<int>(sys.disp_nodes.size());
    const int dim = sys.dim();
    if (dim > 4000)
        throw ConfigError("matrix dimension exceeds the dense cap of 4000");
    sys.a = Matrix(dim, dim);
    sys.b_diag.assign(dim, 0.0);

    const double dx = grid.dx();
    const cplx icd = I * c0 / dx;
    const int eoff = 0, hoff = sys.n_e;
    for (int i = 0; i < sys.n_e; ++i) {
        // -ic D_h: E node i sits between dual nodes i and i+1.
        sys.a(eoff + i, hoff + i + 1) += -icd;
        sys.a(eoff + i, hoff + i) += icd;
    }
    for (int j = 0; j < sys.n_h; ++j) {
        // ic D_e with hard walls E = 0 at the outer primal nodes.
        if (j <= sys.n_e - 1) sys.a(hoff + j, eoff + j) += icd;
        if (j >= 1) sys.a(hoff + j, eoff + j - 1) += -icd;
    }
    for (int i = 0; i < sys.n_e; ++i)
        sys.b_diag[eoff + i] =
            eps_static[i] * sys.stretch_at(grid.e_node(i));
    for (int j = 0; j < sys.n_h; ++j)
        sys.b_diag[hoff + j] = -sys.stretch_at(grid.h_node(j));
    if (sys.n_aux > 0) {
        // Auxiliary polarization/current fields, scaled to keep A
        // symmetric; the pairing then carries exactly the
        // d(w eps)/dw weight of the dispersive inner product.
        const double einf = disp_mat->eps_inf();
        const double wp = disp_mat->omega_p();
        const double w0 = disp_mat->omega_0();
        const double gam = disp_mat->gamma();
        const int poff = sys.n_e + sys.n_h, joff = poff + sys.n_aux;
        for (int k = 0; k < sys.n_aux; ++k) {
            const int i = sys.disp_nodes[k];
            const double wd = w_disp[i];
            sys.a(eoff + i, joff + k) = -I * wd * wp;
            sys.a(joff + k, eoff + i) = -I * wd * wp;
            sys.a(poff + k, joff + k) = I * wd * w0 * w0 / (einf * wp);
            sys.a(joff + k, poff + k) = I * wd * w0 * w0 / (einf * wp);
            sys.a(joff + k, joff + k) = I * gam * wd / einf;
            sys.b_diag[poff + k] = wd * w0 * w0 / (einf * wp * wp);
            sys.b_diag[joff + k] = -wd / einf;
        }
    }
    return sys;
}

std::vector<cplx> rhs_vector(const Assembled& sys,
                             const std::vector<cplx>& current) {
    if (static_cast<int>(current.size()) != sys.n_e)
        throw GridMismatch("current vector must live on the interior nodes");
    std::vector<cplx> s(sys.dim(), 0.0);
    for (int i = 0; i < sys.n_e; ++i)
        s[i] = I * c0 * z0 * sys.stretch_at(sys.grid.e_node(i)) * current[i];
    return s;
}

} // namespace

Assembled assemble(const SlabGeometry& geom, const Grid1D& grid,
                   const PmlProfile1D& pml) {
    check_grid(grid, geom.L, pml);
    std::vector<cplx> eps(grid.N - 1);
    std::vector<double> wd(grid.N - 1, 0.0);
    const double n2 = geom.n * geom.n;
    for (int i = 0; i < grid.N - 1; ++i) {
        const double w =
            inside_weight(grid.e_node(i), -geom.L / 2, geom.L / 2, grid.dx());
        eps[i] = 1.0 + (n2 - 1.0) * w;
    }
    return assemble_common(grid, pml, eps, wd, nullptr);
}

Assembled assemble(const LorentzSlab& slab, const Grid1D& grid,
                   const PmlProfile1D& pml) {
    check_grid(grid, slab.L, pml);
    if (!slab.mat.dispersive() || slab.mat.omega_0() <= 0.0)
        throw ConfigError(
            "auxiliary-field assembly needs a Lorentz material with a "
            "nonzero resonance frequency");
    std::vector<cplx> eps(grid.N - 1);
    std::vector<double> wd(grid.N - 1);
    for (int i = 0; i < grid.N - 1; ++i) {
        wd[i] =
            inside_weight(grid.e_node(i), -slab.L / 2, slab.L / 2, grid.dx());
        eps[i] = 1.0 + (slab.mat.eps_inf() - 1.0) * wd[i];
    }
    return assemble_common(grid, pml, eps, wd, &slab.mat);
}

std::vector<DiscreteEigenMode> eigensolve(const Assembled& sys,
                                          EigenContent content) {
    const int dim = sys.dim();
    Matrix c(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            c(i, j) = sys.a(i, j) / sys.b_diag[i];
    std::vector<DiscreteEigenMode> modes(dim);
    if (content == EigenContent::ValuesOnly) {
        const std::vector<cplx> values = eig_values(c);
        for (int m = 0; m < dim; ++m) modes[m].omega_t = values[m];
        return modes;
    }
    const EigenDecomposition ed = eigs(c);
    const Matrix xinv = inverse(ed.right);
    const double dx = sys.grid.dx();
    for (int m = 0; m < dim; ++m) {
        modes[m].omega_t = ed.values[m];
        modes[m].right_vec.resize(dim);
        modes[m].left_vec.resize(dim);
        for (int i = 0; i < dim; ++i) {
            modes[m].right_vec[i] = ed.right(i, m);
            modes[m].left_vec[i] = xinv(m, i) / sys.b_diag[i] / dx;
        }
    }
    return modes;
}

void classify_modes(std::vector<DiscreteEigenMode>& spectrum,
                    const std::vector<DiscreteEigenMode>& other,
                    double tol) {
    if (spectrum.size() != other.size())
        throw GridMismatch("spectra from different discretizations");
    for (DiscreteEigenMode& m : spectrum) {
        double best = std::numeric_limits<double>::infinity();
        for (const DiscreteEigenMode& o : other)
            best = std::min(best, std::abs(m.omega_t - o.omega_t));
        const double rel = best / std::max(std::abs(m.omega_t), 1e-300);
        m.classification = rel < tol ? ModeClass::QNM : ModeClass::Numerical;
        if (m.omega_t.imag() > 1e-12 * std::abs(m.omega_t))
            m.classification = ModeClass::Unphysical;
    }
}

void biorthonormalize(std::vector<DiscreteEigenMode>& modes,
                      const Assembled& sys) {
    const double dx = sys.grid.dx();
    const int dim = sys.dim();
    for (DiscreteEigenMode& m : modes) {
        cplx p = 0.0;
        double scale = 0.0;
        for (int i = 0; i < dim; ++i) {
            p += m.right_vec[i] * sys.b_diag[i] * m.right_vec[i];
            scale += std::norm(m.right_vec[i]) * std::abs(sys.b_diag[i]);
        }
        p *= dx;
        scale *= dx;
        if (std::abs(p) < 1e-8 * scale)
            throw DefectiveMatrix(
                "self-orthogonal eigenvector: defective or near-defective "
                "eigenvalue cluster");
        const cplx s = std::sqrt(p);
        for (int i = 0; i < dim; ++i) {
            m.right_vec[i] /= s;
            m.left_vec[i] *= s;
        }
    }
}

std::vector<cplx> direct_solve(const Assembled& sys,
                               const std::vector<cplx>& current,
                               cplx omega) {
    const int dim = sys.dim();
    Matrix m(dim, dim), rhs(dim, 1);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) m(i, j) = sys.a(i, j);
        m(j, j) -= omega * sys.b_diag[j];
    }
    const std::vector<cplx> s = rhs_vector(sys, current);
    for (int i = 0; i < dim; ++i) rhs(i, 0) = s[i];
    const Matrix x = solve(std::move(m), std::move(rhs));
    std::vector<cplx> e(sys.n_e);
    for (int i = 0; i < sys.n_e; ++i) e[i] = x(i, 0);
    return e;
}

Reconstruction excitation_and_reconstruct(
    std::vector<DiscreteEigenMode>& modes, const Assembled& sys,
    const std::vector<cplx>& current, cplx omega) {
    const int dim = sys.dim();
    const double dx = sys.grid.dx();
    const std::vector<cplx> s = rhs_vector(sys, current);
    Reconstruction rec;
    rec.alphas.resize(modes.size());
    rec.field.assign(sys.n_e, 0.0);
    for (size_t m = 0; m < modes.size(); ++m) {
        cplx proj = 0.0;
        for (int i = 0; i < dim; ++i) proj += modes[m].left_vec[i] * s[i];
        const cplx alpha = dx * proj / (modes[m].omega_t - omega);
        rec.alphas[m] = alpha;
        modes[m].excitation = alpha;
        for (int i = 0; i < sys.n_e; ++i)
            rec.field[i] += alpha * modes[m].right_vec[i];
    }
    const std::vector<cplx> ref = direct_solve(sys, current, omega);
    double peak = 0.0, err = 0.0;
    for (int i = 0; i < sys.n_e; ++i)
        if (!sys.in_pml(sys.grid.e_node(i)))
            peak = std::max(peak, std::abs(ref[i]));
    for (int i = 0; i < sys.n_e; ++i)
        if (!sys.in_pml(sys.grid.e_node(i)))
            err = std::max(err, std::abs(rec.field[i] - ref[i]));
    rec.error_vs_direct = peak > 0.0 ? err / peak : err;
    return rec;
}

std::vector<RevelationRow> revelation_study(const SlabGeometry& geom,
                                            const Grid1D& grid,
                                            const PmlProfile1D& pml,
                                            const std::vector<double>& thetas,
                                            int m_max,
                                            double match_tol) {
    const std::vector<SlabMode> analytic =
        slab_qnm_frequencies(geom, m_max);
    std::vector<RevelationRow> table;
    const double scale = std::abs(pml.stretch);
    for (double theta : thetas) {
        const cplx dir(1.0, std::tan(theta));
        PmlProfile1D p1 = pml, p2 = pml;
        p1.stretch = scale * dir;
        p2.stretch = 1.2 * p1.stretch; // same angle, stronger attenuation
        Assembled s1 = assemble(geom, grid, p1);
        Assembled s2 = assemble(geom, grid, p2);
        std::vector<DiscreteEigenMode> m1 =
            eigensolve(s1, EigenContent::ValuesOnly);
        const std::vector<DiscreteEigenMode> m2 =
            eigensolve(s2, EigenContent::ValuesOnly);
        classify_modes(m1, m2, match_tol * 0.5);
        RevelationRow row;
        row.theta = theta;
        for (const SlabMode& am : analytic) {
            double best = std::numeric_limits<double>::infinity();
            cplx found = 0.0;
            for (const DiscreteEigenMode& dm : m1) {
                if (dm.classification != ModeClass::QNM) continue;
                const double d = std::abs(dm.omega_t - am.omega_t);
                if (d < best) {
                    best = d;
                    found = dm.omega_t;
                }
            }
            if (best < match_tol * std::abs(am.omega_t)) {
                row.revealed.push_back(am.m);
                row.eigenvalues.push_back(found);
            }
        }
        table.push_back(std::move(row));
    }
    return table;
}

cplx residue_gamma(const DiscreteEigenMode& mode, const Assembled& sys,
                   const std::vector<cplx>& current) {
    if (static_cast<int>(current.size()) != sys.n_e)
        throw GridMismatch("current vector must live on the interior nodes");
    // the grid dx cancels between the overlap and the pairing
    cplx overlap = 0.0;
    double scale = 0.0;
    double efield_peak = 0.0;
    for (int i = 0; i < sys.n_e; ++i)
        efield_peak = std::max(efield_peak, std::abs(mode.right_vec[i]));
    for (int i = 0; i < sys.n_e; ++i) {
        overlap += current[i] * mode.right_vec[i];
        scale += std::abs(current[i]) * efield_peak;
    }
    if (std::abs(overlap) < 1e-10 * scale)
        throw SourceOnNodalPoint("source overlaps a node of the mode");
    cplx pairing = 0.0;
    for (int i = 0; i < sys.dim(); ++i)
        pairing += mode.right_vec[i] * sys.b_diag[i] * mode.right_vec[i];
    return -I * overlap / pairing;
}

} // namespace qnmlab
