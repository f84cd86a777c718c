#include "qnmlab/mie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qnmlab/bessel.hpp"
#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {

void check_geom(const SphereGeometry& geom) {
    if (geom.a <= 0.0) throw InvalidBackground("sphere radius must be > 0");
    if (geom.exterior.dispersive())
        throw InvalidBackground("exterior medium must be non-dispersive");
}

cplx wavenumber(const Material& mat, cplx omega) {
    // k = n w / c with the refractive-index branch Re(n) > 0, so the
    // outgoing convention survives continuation to Re(w) < 0 and the
    // Hermitian twin -conj(w) is a root whenever w is.
    cplx n = std::sqrt(mat.permittivity(omega) * mat.permeability(omega));
    if (n.real() < 0.0 || (n.real() == 0.0 && n.imag() < 0.0)) n = -n;
    return omega / c0 * n;
}

} // namespace

cplx mie_dispersion(const SphereGeometry& geom, int l, MiePol pol,
                    cplx omega) {
    check_geom(geom);
    const cplx k_in = wavenumber(geom.interior, omega);
    const cplx k_out = wavenumber(geom.exterior, omega);
    const cplx z_in = k_in * geom.a;
    const cplx z_out = k_out * geom.a;
    cplx c_in = 1.0, c_out = 1.0;
    if (pol == MiePol::TM) {
        c_in = geom.interior.permittivity(omega);
        c_out = geom.exterior.permittivity(omega);
    } else {
        c_in = geom.interior.permeability(omega);
        c_out = geom.exterior.permeability(omega);
    }
    return c_in * riccati_psi(l, z_in) * riccati_xi_d(l, z_out) -
           c_out * (k_in / k_out) * riccati_xi(l, z_out) *
               riccati_psi_d(l, z_in);
}

MieMode find_mie_qnm(const SphereGeometry& geom, int l, MiePol pol,
                     cplx guess) {
    check_geom(geom);
    cplx w = guess;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
        const cplx h = 1e-7 * std::abs(w);
        const cplx d0 = mie_dispersion(geom, l, pol, w);
        const cplx dp = mie_dispersion(geom, l, pol, w + h);
        const cplx dm = mie_dispersion(geom, l, pol, w - h);
        const cplx deriv = (dp - dm) / (2.0 * h);
        const cplx dw = -d0 / deriv;
        w += dw;
        if (std::abs(dw) < 1e-13 * std::abs(w)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("Newton iteration on the Mie dispersion stalled");
    // A converged root sitting on a permittivity pole is an accumulation
    // point artifact, not a resonance.
    try {
        const cplx eps = geom.interior.permittivity(w);
        if (std::abs(eps) > 1e12)
            throw RootAtMaterialPole("root collided with a material pole");
    } catch (const EvaluationAtMaterialPole&) {
        throw RootAtMaterialPole("root collided with a material pole");
    }
    MieMode mode;
    mode.l = l;
    mode.pol = pol;
    mode.omega_t = w;
    mode.k_in = wavenumber(geom.interior, w);
    mode.k_out = wavenumber(geom.exterior, w);
    mode.A_in = 1.0;
    mode.A_out = sph_j(l, mode.k_in * geom.a) / sph_h1(l, mode.k_out * geom.a);
    mode.norm = 0.0;
    return mode;
}

std::vector<cplx> mie_scan_minima(const SphereGeometry& geom, int l,
                                  MiePol pol, double lambda_target) {
    check_geom(geom);
    const double w0 = 2.0 * pi * c0 / lambda_target;
    const int nre = 60, nim = 40;
    std::vector<std::vector<double>> mag(nre, std::vector<double>(nim));
    std::vector<std::vector<cplx>> pts(nre, std::vector<cplx>(nim));
    for (int i = 0; i < nre; ++i) {
        const double re = (0.3 + 0.9 * i / (nre - 1.0)) * w0;
        for (int j = 0; j < nim; ++j) {
            const double im = -0.5 * re * (j + 1.0) / nim;
            pts[i][j] = cplx(re, im);
            double v;
            try {
                v = std::abs(mie_dispersion(geom, l, pol, pts[i][j]));
            } catch (const EvaluationAtMaterialPole&) {
                v = std::numeric_limits<double>::infinity();
            }
            mag[i][j] = v;
        }
    }
    std::vector<std::pair<double, cplx>> minima;
    for (int i = 1; i + 1 < nre; ++i)
        for (int j = 1; j + 1 < nim; ++j) {
            const double v = mag[i][j];
            if (v <= mag[i - 1][j] && v <= mag[i + 1][j] &&
                v <= mag[i][j - 1] && v <= mag[i][j + 1] &&
                std::isfinite(v))
                minima.emplace_back(v, pts[i][j]);
        }
    std::sort(minima.begin(), minima.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<cplx> seeds;
    seeds.reserve(minima.size());
    for (const auto& [v, z] : minima) seeds.push_back(z);
    return seeds;
}

MieRadial mie_radial(const MieMode& mode, const SphereGeometry& geom,
                     cplx r) {
    if (mode.l != 1)
        throw InvalidBackground("radial factors implemented for l = 1 only");
    const bool inside = r.real() < geom.a;
    const Material& mat = inside ? geom.interior : geom.exterior;
    const cplx k = inside ? mode.k_in : mode.k_out;
    const cplx amp = inside ? mode.A_in : mode.A_out;
    const cplx w = mode.omega_t;
    const cplx z = k * r;
    const int l = mode.l;
    cplx zl, zl_d, psi, psi_d;
    if (inside) {
        zl = sph_j(l, z);
        zl_d = sph_j_d(l, z);
        psi = riccati_psi(l, z);
        psi_d = riccati_psi_d(l, z);
    } else {
        zl = sph_h1(l, z);
        zl_d = sph_h1_d(l, z);
        psi = riccati_xi(l, z);
        psi_d = riccati_xi_d(l, z);
    }
    // Transverse-coefficient: absolute permittivity for TM, mu0 for TE.
    const cplx coeff = (mode.pol == MiePol::TM)
                           ? eps0 * mat.permittivity(w)
                           : cplx(mu0, 0.0);
    const double sgn = (mode.pol == MiePol::TM) ? 1.0 : -1.0;
    // psi'' from the Riccati-Bessel equation.
    const cplx psi_dd = (static_cast<double>(l * (l + 1)) / (z * z) - 1.0) *
                        psi;
    MieRadial f;
    f.g = amp * zl;
    f.dg_dr = amp * k * zl_d;
    f.er = sgn * 2.0 * I * amp * zl / (w * coeff * r);
    f.der_dr = sgn * 2.0 * I * amp * (k * zl_d * r - zl) / (w * coeff * r * r);
    f.eth = -sgn * I * amp * psi_d / (w * coeff * r);
    f.deth_dr =
        -sgn * I * amp * (k * psi_dd * r - psi_d) / (w * coeff * r * r);
    return f;
}

void mie_field(const MieMode& mode, const SphereGeometry& geom, double r,
               double theta, double, SphVec& E, SphVec& H) {
    if (r <= 0.0) throw InvalidBackground("field evaluation requires r > 0");
    const MieRadial f = mie_radial(mode, geom, cplx(r, 0.0));
    const double st = std::sin(theta), ct = std::cos(theta);
    if (mode.pol == MiePol::TM) {
        E = {f.er * ct, f.eth * st, 0.0};
        H = {0.0, 0.0, f.g * st};
    } else {
        E = {0.0, 0.0, f.g * st};
        H = {f.er * ct, f.eth * st, 0.0};
    }
}

void mie_radial_derivative(const MieMode& mode, const SphereGeometry& geom,
                           double r, double theta, double, SphVec& dE,
                           SphVec& dH) {
    const MieRadial f = mie_radial(mode, geom, cplx(r, 0.0));
    const double st = std::sin(theta), ct = std::cos(theta);
    if (mode.pol == MiePol::TM) {
        dE = {f.der_dr * ct, f.deth_dr * st, 0.0};
        dH = {0.0, 0.0, f.dg_dr * st};
    } else {
        dE = {0.0, 0.0, f.dg_dr * st};
        dH = {f.der_dr * ct, f.deth_dr * st, 0.0};
    }
}

} // namespace qnmlab
