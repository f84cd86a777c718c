#include "qnmlab/norms.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qnmlab/bessel.hpp"
#include "qnmlab/errors.hpp"
#include "qnmlab/linalg.hpp"
#include "qnmlab/quadrature.hpp"

namespace qnmlab {

namespace {

constexpr double kAngCos = 4.0 * pi / 3.0; // \int cos^2 dOmega
constexpr double kAngSin = 8.0 * pi / 3.0; // \int sin^2 dOmega

std::string fmt(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", z.real(), z.imag());
    return buf;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// r^2-weighted angular-integrated field squares at (possibly complex)
// radius: ee = r^2 \int E.E dOmega, hh likewise for H.
struct RadialDensity {
    cplx ee, hh;
};

RadialDensity density(const MieMode& mode, const SphereGeometry& geom,
                      cplx r) {
    const MieRadial f = mie_radial(mode, geom, r);
    const cplx r2 = r * r;
    const cplx trans = kAngCos * f.er * f.er + kAngSin * f.eth * f.eth;
    const cplx azim = kAngSin * f.g * f.g;
    if (mode.pol == MiePol::TM) return {r2 * trans, r2 * azim};
    return {r2 * azim, r2 * trans};
}

const Material& medium(const SphereGeometry& geom, cplx r) {
    return r.real() < geom.a ? geom.interior : geom.exterior;
}

// Radial integral of `f` over [0, R], split at the interface, with panel
// density tied to the local wavelength.
cplx ball_integral(const SphereGeometry& geom, const MieMode& mode,
                   double R, const std::function<cplx(cplx)>& f,
                   int* panels_used = nullptr) {
    int p_in = panels_for(std::min(R, geom.a), std::abs(mode.k_in));
    cplx total = integrate_panels(f, 0.0, std::min(R, geom.a), p_in);
    int p_out = 0;
    if (R > geom.a) {
        p_out = panels_for(R - geom.a, std::abs(mode.k_out));
        total += integrate_panels(f, geom.a, R, p_out);
    }
    if (panels_used) *panels_used = p_in + p_out;
    return total;
}

// M-norm volume integrand (dispersion-corrected energy-like density).
cplx m_integrand(const MieMode& mode, const SphereGeometry& geom, cplx r) {
    const RadialDensity d = density(mode, geom, r);
    const Material& mat = medium(geom, r);
    return eps0 * mat.d_omega_eps(mode.omega_t) * d.ee -
           mat.d_omega_mu(mode.omega_t) * d.hh;
}

// Surface bracket of the first-order-derivative M surface term,
// \oint [E x (r.grad)H - ((r.grad)E) x H] . r_hat dS; both polarizations
// reduce to the same combination of radial factors.
cplx m_surface_bracket(const MieMode& mode, const SphereGeometry& geom,
                       double R, DerivScheme scheme, double h) {
    const MieRadial f = mie_radial(mode, geom, cplx(R, 0.0));
    cplx dg = f.dg_dr, deth = f.deth_dr;
    if (scheme == DerivScheme::FiniteDifference) {
        const MieRadial fp = mie_radial(mode, geom, cplx(R + h, 0.0));
        const MieRadial fm = mie_radial(mode, geom, cplx(R - h, 0.0));
        dg = (fp.g - fm.g) / (2.0 * h);
        deth = (fp.eth - fm.eth) / (2.0 * h);
    }
    return kAngSin * R * R * R * (f.eth * dg - deth * f.g);
}

cplx i_surf_m(const MieMode& mode, const SphereGeometry& geom, double R,
              DerivScheme scheme, double h) {
    return I / mode.omega_t * m_surface_bracket(mode, geom, R, scheme, h);
}

// Complex-path continuation of the M integrand from R outward along
// r(s) = R + alpha (s - R). Returns the integral over a path of length T.
cplx pml_tail_segment(const MieMode& mode, const SphereGeometry& geom,
                      const PmlMap& map, double s0, double s1,
                      int* panels_used = nullptr) {
    const auto f = [&](cplx s) {
        const cplx r = map.R + map.alpha * (s - map.R);
        return m_integrand(mode, geom, r) * map.alpha;
    };
    const int p =
        panels_for((s1 - s0) * std::abs(map.alpha), std::abs(mode.k_out));
    if (panels_used) *panels_used = p;
    return integrate_panels(f, s0, s1, p);
}

void check_pml_map(const MieMode& mode, const SphereGeometry& geom,
                   const PmlMap& map) {
    if (map.R < geom.a)
        throw InvalidBackground("PML inner boundary inside the resonator");
    if (map.alpha.imag() <= 0.0)
        throw RegularizationAngleTooSmall("Im(alpha) must be positive");
    const double q = quality_factor(mode.omega_t);
    const double slope = map.alpha.imag() / map.alpha.real();
    if (!(slope > 1.0 / (2.0 * q)))
        throw RegularizationAngleTooSmall(
            "stretch angle below the revelation threshold for this mode");
}

cplx exterior_wavenumber(const SphereGeometry& geom, cplx omega) {
    cplx n = std::sqrt(geom.exterior.permittivity(omega) *
                       geom.exterior.permeability(omega));
    if (n.real() < 0.0 || (n.real() == 0.0 && n.imag() < 0.0)) n = -n;
    return omega / c0 * n;
}

cplx interior_wavenumber(const SphereGeometry& geom, cplx omega) {
    cplx n = std::sqrt(geom.interior.permittivity(omega) *
                       geom.interior.permeability(omega));
    if (n.real() < 0.0 || (n.real() == 0.0 && n.imag() < 0.0)) n = -n;
    return omega / c0 * n;
}

// Driven l = 1 TM response to a shell current J = delta(r - r_src)
// sin(theta) theta_hat at complex frequency w; returns the E_theta radial
// factor at the shell. Three radial regions, four matching conditions.
cplx driven_etheta(const SphereGeometry& geom, double r_src, cplx w) {
    const cplx ki = interior_wavenumber(geom, w);
    const cplx ko = exterior_wavenumber(geom, w);
    const cplx ei = geom.interior.permittivity(w);
    const cplx eo = geom.exterior.permittivity(w);
    const cplx za = ki * geom.a, zb = ko * geom.a, zs = ko * r_src;
    Matrix A(4, 4), b(4, 1);
    // unknowns: B1 j(ki r) | B2 j(ko r) + B3 h(ko r) | B4 h(ko r)
    // H_phi continuous at a
    A(0, 0) = sph_j(1, za);
    A(0, 1) = -sph_j(1, zb);
    A(0, 2) = -sph_h1(1, zb);
    // (r g)' / eps continuous at a (E_theta); note (r g)' = B psi'(k r)
    // with no extra k factor since r j_l(k r) = psi_l(k r) / k.
    A(1, 0) = riccati_psi_d(1, za) / ei;
    A(1, 1) = -riccati_psi_d(1, zb) / eo;
    A(1, 2) = -riccati_xi_d(1, zb) / eo;
    // E_theta continuous at r_src
    A(2, 1) = riccati_psi_d(1, zs);
    A(2, 2) = riccati_xi_d(1, zs);
    A(2, 3) = -riccati_xi_d(1, zs);
    // H_phi jump: g(r_src+) - g(r_src-) = -1
    A(3, 1) = -sph_j(1, zs);
    A(3, 2) = -sph_h1(1, zs);
    A(3, 3) = sph_h1(1, zs);
    b(3, 0) = -1.0;
    const Matrix x = solve(A, b);
    const cplx drg = x(1, 0) * riccati_psi_d(1, zs) +
                     x(2, 0) * riccati_xi_d(1, zs);
    return -I * drg / (w * eps0 * eo * r_src);
}

} // namespace

const char* norm_method_name(NormMethod m) {
    switch (m) {
        case NormMethod::LK: return "LK";
        case NormMethod::M_exact: return "M_exact";
        case NormMethod::M_fd: return "M_fd";
        case NormMethod::PML: return "PML";
        case NormMethod::PoleResponse: return "PoleResponse";
    }
    return "?";
}

NormResult lk_norm(const MieMode& mode, const SphereGeometry& geom,
                   double R) {
    if (R <= geom.a)
        throw InvalidBackground("integration radius must exceed the sphere");
    const cplx w = mode.omega_t;
    int panels = 0;
    const cplx vol = ball_integral(
        geom, mode, R,
        [&](cplx r) {
            const RadialDensity d = density(mode, geom, r);
            const Material& mat = medium(geom, r);
            return eps0 *
                   (mat.permittivity(w) + mat.d_omega_eps(w)) * d.ee;
        },
        &panels);
    const cplx surf = lk_surface_term(mode, geom, R);
    NormResult res{NormMethod::LK, R, vol + surf, {}};
    res.meta["panels"] = std::to_string(panels);
    res.meta["surface_term"] = fmt(surf);
    return res;
}

NormResult m_norm(const MieMode& mode, const SphereGeometry& geom, double R,
                  DerivScheme scheme, double h) {
    if (R <= geom.a)
        throw InvalidBackground("integration radius must exceed the sphere");
    if (geom.exterior.dispersive())
        throw InvalidBackground("M norm needs a non-dispersive exterior");
    if (h <= 0.0) h = 1e-4 * geom.a;
    int panels = 0;
    const cplx vol = ball_integral(
        geom, mode, R, [&](cplx r) { return m_integrand(mode, geom, r); },
        &panels);
    const cplx surf = i_surf_m(mode, geom, R, scheme, h);
    NormResult res{scheme == DerivScheme::Exact ? NormMethod::M_exact
                                                : NormMethod::M_fd,
                   R, vol + surf, {}};
    res.meta["panels"] = std::to_string(panels);
    res.meta["surface_term"] = fmt(surf);
    if (scheme == DerivScheme::FiniteDifference) res.meta["fd_step"] = fmt(h);
    return res;
}

NormResult pml_norm(const MieMode& mode, const SphereGeometry& geom,
                    PmlMap map) {
    check_pml_map(mode, geom, map);
    int panels = 0;
    const cplx vol = ball_integral(
        geom, mode, map.R,
        [&](cplx r) { return m_integrand(mode, geom, r); }, &panels);
    double T = map.T;
    cplx path = 0.0;
    bool converged = false;
    int path_panels = 0;
    for (int attempt = 0; attempt < 7; ++attempt) {
        path = pml_tail_segment(mode, geom, map, map.R, map.R + T,
                                &path_panels);
        const cplx tail =
            pml_tail_segment(mode, geom, map, map.R + T, map.R + 2.0 * T);
        if (std::abs(tail) < 1e-12 * std::abs(vol + path)) {
            converged = true;
            break;
        }
        T *= 2.0;
    }
    if (!converged)
        throw TailNotConverged("PML path truncation tail above 1e-12");
    NormResult res{NormMethod::PML, map.R, vol + path, {}};
    res.meta["alpha"] = fmt(map.alpha);
    res.meta["thickness"] = fmt(T);
    res.meta["panels"] = std::to_string(panels);
    res.meta["path_panels"] = std::to_string(path_panels);
    return res;
}

NormResult pole_response_norm_sphere(const MieMode& mode,
                                     const SphereGeometry& geom,
                                     double r_src) {
    if (mode.pol != MiePol::TM || mode.l != 1)
        throw InvalidBackground(
            "pole-response driving implemented for l = 1 TM");
    if (r_src <= geom.a)
        throw InvalidBackground("source shell must sit outside the sphere");
    // Nodal-point guard: compare against the field scale near the shell.
    double peak = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double r = geom.a + (r_src - geom.a) * (i + 1.0) / 51.0;
        peak = std::max(peak,
                        std::abs(mie_radial(mode, geom, cplx(r, 0.0)).eth));
    }
    const cplx eth_src = mie_radial(mode, geom, cplx(r_src, 0.0)).eth;
    if (std::abs(eth_src) < 1e-8 * peak)
        throw SourceOnNodalPoint("mode field vanishes at the source shell");
    const cplx w = mode.omega_t;
    const double d = 1e-6 * std::abs(w);
    // Symmetric residue extraction cancels the regular part to O(d^2).
    const cplx up = cplx(d, 0.0) * driven_etheta(geom, r_src, w + d);
    const cplx um = cplx(-d, 0.0) * driven_etheta(geom, r_src, w - d);
    const cplx u = 0.5 * (up + um);
    const cplx overlap = kAngSin * r_src * r_src * eth_src;
    const cplx norm = -I * overlap * eth_src / u;
    NormResult res{NormMethod::PoleResponse, r_src, norm, {}};
    res.meta["delta"] = fmt(d);
    res.meta["gamma"] = fmt(-I * overlap / norm);
    return res;
}

cplx lk_surface_term(const MieMode& mode, const SphereGeometry& geom,
                     double R) {
    const cplx w = mode.omega_t;
    const RadialDensity ds = density(mode, geom, cplx(R, 0.0));
    const double n_bg = std::sqrt(geom.exterior.permittivity(w)).real();
    return I * eps0 * n_bg * c0 / w * ds.ee; // ds.ee = R^2 \oint E.E dOmega
}

cplx lk_identity_check(const MieMode& mode, const SphereGeometry& geom,
                       double R) {
    const cplx w = mode.omega_t;
    const cplx vol = ball_integral(geom, mode, R, [&](cplx r) {
        const RadialDensity d = density(mode, geom, r);
        const Material& mat = medium(geom, r);
        return eps0 * mat.permittivity(w) * d.ee +
               mu0 * mat.permeability(w) * d.hh;
    });
    return lk_surface_term(mode, geom, R) + vol;
}

double poynting_identity_residual(const MieMode& mode,
                                  const SphereGeometry& geom, double R) {
    const cplx w = mode.omega_t;
    const MieRadial f = mie_radial(mode, geom, cplx(R, 0.0));
    const double sgn = (mode.pol == MiePol::TM) ? 1.0 : -1.0;
    const cplx flux = sgn * kAngSin * R * R * f.eth * f.g;
    const cplx vol = ball_integral(geom, mode, R, [&](cplx r) {
        const RadialDensity d = density(mode, geom, r);
        const Material& mat = medium(geom, r);
        return eps0 * mat.permittivity(w) * d.ee +
               mu0 * mat.permeability(w) * d.hh;
    });
    return std::abs(flux - I * w * vol) /
           std::max(std::abs(flux), std::abs(I * w * vol));
}

SurfaceEquiv m_pml_surface_equiv(const MieMode& mode,
                                 const SphereGeometry& geom, double R,
                                 PmlMap map) {
    if (geom.exterior.dispersive())
        throw InvalidBackground("equivalence requires homogeneous exterior");
    map.R = R;
    check_pml_map(mode, geom, map);
    double T = map.T;
    cplx path = 0.0;
    for (int attempt = 0; attempt < 7; ++attempt) {
        path = pml_tail_segment(mode, geom, map, R, R + T);
        const cplx tail =
            pml_tail_segment(mode, geom, map, R + T, R + 2.0 * T);
        if (std::abs(tail) < 1e-12 * std::abs(path)) break;
        T *= 2.0;
    }
    const cplx surf =
        i_surf_m(mode, geom, R, DerivScheme::Exact, 0.0);
    SurfaceEquiv eq;
    eq.i_pml = path;
    eq.i_surf_m = surf;
    eq.rel_diff = std::abs(path - surf) /
                  std::max(std::abs(path), std::abs(surf));
    return eq;
}

std::vector<NormResult> norm_sweep(const MieMode& mode,
                                   const SphereGeometry& geom,
                                   const std::vector<double>& R_list,
                                   const std::vector<NormMethod>& methods) {
    std::vector<NormResult> out;
    out.reserve(R_list.size() * methods.size());
    for (double R : R_list)
        for (NormMethod m : methods) {
            try {
                switch (m) {
                    case NormMethod::LK:
                        out.push_back(lk_norm(mode, geom, R));
                        break;
                    case NormMethod::M_exact:
                        out.push_back(
                            m_norm(mode, geom, R, DerivScheme::Exact));
                        break;
                    case NormMethod::M_fd:
                        out.push_back(m_norm(
                            mode, geom, R, DerivScheme::FiniteDifference));
                        break;
                    case NormMethod::PML: {
                        PmlMap map;
                        map.R = R;
                        out.push_back(pml_norm(mode, geom, map));
                        break;
                    }
                    case NormMethod::PoleResponse:
                        out.push_back(
                            pole_response_norm_sphere(mode, geom, R));
                        break;
                }
            } catch (const QnmError& e) {
                const double nan =
                    std::numeric_limits<double>::quiet_NaN();
                NormResult bad{m, R, cplx(nan, nan), {}};
                bad.meta["error"] = e.what();
                out.push_back(std::move(bad));
            }
        }
    return out;
}

} // namespace qnmlab
