// Acceptance suite: one pass/fail line per criterion. Frozen setups; the
// tolerances are the contract, not tuning knobs.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qnmlab/fdfd.hpp"
#include "qnmlab/materials.hpp"
#include "qnmlab/mie.hpp"
#include "qnmlab/norms.hpp"
#include "qnmlab/slab.hpp"

using namespace qnmlab;

namespace {

int failures = 0;

void report(int idx, const char* label, bool ok, const std::string& detail) {
    std::printf("criterion %2d  %-38s %s  %s\n", idx, label,
                ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Frozen reference resonators (see the Mie unit tests for the oracles
// behind the seed frequencies).
SphereGeometry dielectric_sphere() {
    return {500e-9, Material::dielectric(2.0), Material::vacuum()};
}
MieMode dielectric_mode(const SphereGeometry& g) {
    return find_mie_qnm(g, 1, MiePol::TM, cplx(1.337930111e15, -2.113620391e14));
}
SphereGeometry silver_sphere() {
    return {40e-9,
            Material::drude(2.0, 7.7926718465e15, 1.0766630174e14),
            Material::vacuum()};
}
MieMode silver_mode(const SphereGeometry& g) {
    return find_mie_qnm(g, 1, MiePol::TM, cplx(4.7975765474e15, -3.9364730646e14));
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// ---------------------------------------------------------------- 1
void criterion_1() {
    const SphereGeometry g = dielectric_sphere();
    const MieMode m = dielectric_mode(g);
    std::vector<cplx> values;
    for (int i = 0; i < 12; ++i) {
        const double R = 750e-9 * std::pow(4e-6 / 750e-9, i / 11.0);
        for (cplx alpha : {cplx(1.0, 0.5), cplx(1.0, 1.0)}) {
            PmlMap map;
            map.R = R;
            map.alpha = alpha;
            values.push_back(pml_norm(m, g, map).value);
        }
    }
    cplx mean = 0.0;
    for (cplx v : values) mean += v;
    mean /= double(values.size());
    double spread = 0.0;
    for (cplx v : values) spread = std::max(spread, rel(v, mean));
    report(1, "PML-norm invariance", spread < 1e-10,
           fmt("rel spread %.2e over 12 radii x 2 slopes (< 1e-10)", spread));
}

// ---------------------------------------------------------------- 2
void criterion_2() {
    double worst = 0.0;
    for (int which = 0; which < 2; ++which) {
        const SphereGeometry g =
            which == 0 ? dielectric_sphere() : silver_sphere();
        const MieMode m = which == 0 ? dielectric_mode(g) : silver_mode(g);
        PmlMap map;
        map.R = 1.2 * g.a;
        const cplx ref = pml_norm(m, g, map).value;
        // sweep from just outside the sphere to 4 um (the criterion-1
        // range); far beyond that the exterior volume integral overflows
        for (int i = 0; i < 6; ++i) {
            const double R =
                1.5 * g.a * std::pow(4e-6 / (1.5 * g.a), i / 5.0);
            const cplx me = m_norm(m, g, R, DerivScheme::Exact).value;
            worst = std::max(worst, rel(me, ref));
        }
    }
    report(2, "M(exact) == PML, both spheres", worst < 1e-6,
           fmt("worst rel deviation %.2e (< 1e-6)", worst));
}

// ---------------------------------------------------------------- 3
void criterion_3() {
    const SphereGeometry g = silver_sphere();
    const MieMode m = silver_mode(g);
    PmlMap map;
    map.R = 60e-9;
    const cplx ref = pml_norm(m, g, map).value;
    const double lam = 2.0 * pi * c0 / std::abs(m.omega_t);
    auto err = [&](double R) { return rel(lk_norm(m, g, R).value, ref); };

    // small-R failure
    double min_small = 1e300;
    for (double R : {50e-9, 60e-9, 70e-9}) // all < lam/5 = 78 nm
        min_small = std::min(min_small, err(R));
    double min_half = 1e300;
    for (double R = 1.05 * g.a; R < lam / 2; R += lam / 40)
        min_half = std::min(min_half, err(R));

    // global minimum over [lam/2, 3.5 lam]
    double best = 1e300, best_R = 0.0;
    for (int i = 0; i <= 120; ++i) {
        const double R = lam / 2 + (3.5 * lam - lam / 2) * i / 120.0;
        const double e = err(R);
        if (e < best) { best = e; best_R = R; }
    }

    // envelope exponent of the large-R divergence: window maxima of
    // ln(err), one half-wavelength window per station. Curvature from the
    // 1/(kR) prefactors dies out by ~8 lam, so fit the asymptotic range.
    std::vector<double> Rw, Ew;
    for (double rl : {8.0, 10.0, 12.0, 15.0, 20.0}) {
        const double R0 = rl * lam;
        double emax = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double R = R0 + 0.5 * lam * i / 12.0;
            emax = std::max(emax, err(R));
        }
        Rw.push_back(R0 + 0.25 * lam);
        Ew.push_back(std::log(emax));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < Rw.size(); ++i) {
        sx += Rw[i]; sy += Ew[i]; sxx += Rw[i] * Rw[i]; sxy += Rw[i] * Ew[i];
    }
    const double n = double(Rw.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double expected = m.omega_t.real() / (quality_factor(m.omega_t) * c0);

    const bool ok = min_small > 0.10 && min_half > 0.01 && best <= 0.01 &&
                    best_R >= 1.5 * lam && best_R <= 3.0 * lam &&
                    std::abs(slope - expected) < 0.2 * expected;
    report(3, "LK-norm failure pattern", ok,
           fmt("err>%.0f%% at R<lam/5, >%.1f%% at R<lam/2, min %.2e%% at "
               "R=%.2f lam, envelope slope %.2e vs %.2e",
               100 * min_small, 100 * min_half, 100 * best, best_R / lam,
               slope, expected));
}

// ---------------------------------------------------------------- 4
void criterion_4() {
    const SphereGeometry g = dielectric_sphere();
    const MieMode m = dielectric_mode(g);
    PmlMap map;
    map.R = 600e-9;
    const cplx ref = pml_norm(m, g, map).value;
    const double lam = 2.0 * pi * c0 / std::abs(m.omega_t);

    // log-spaced sweep out to 6.5 lam: the fd surface error dips, then
    // oscillates with an exponentially growing envelope
    std::vector<double> fd_err;
    double worst_exact = 0.0;
    for (int i = 0; i <= 14; ++i) {
        const double R = 0.6e-6 * std::pow(6.5 * lam / 0.6e-6, i / 14.0);
        fd_err.push_back(
            rel(m_norm(m, g, R, DerivScheme::FiniteDifference).value, ref));
        worst_exact = std::max(
            worst_exact, rel(m_norm(m, g, R, DerivScheme::Exact).value, ref));
    }
    const double head =
        *std::max_element(fd_err.begin(), fd_err.begin() + 5);
    const double tail = *std::max_element(fd_err.end() - 5, fd_err.end());

    const double R2 = 2.0 * lam;
    const double fd2 =
        rel(m_norm(m, g, R2, DerivScheme::FiniteDifference).value, ref);
    const double ex2 = rel(m_norm(m, g, R2, DerivScheme::Exact).value, ref);

    const bool ok = tail > 10.0 * head && worst_exact < 1e-6 &&
                    fd2 >= 100.0 * ex2;
    report(4, "M(fd) diverges, M(exact) does not", ok,
           fmt("fd envelope %.2e -> %.2e, exact worst %.2e, at 2 lam "
               "fd/exact = %.1e (>= 100)",
               head, tail, worst_exact, ex2 > 0 ? fd2 / ex2 : 1e300));
}

// ---------------------------------------------------------------- 5
void criterion_5() {
    const SphereGeometry g = dielectric_sphere();
    const MieMode m = dielectric_mode(g);
    const double lam = 2.0 * pi * c0 / std::abs(m.omega_t);
    double worst = 0.0;
    for (double R : {0.6e-6, 1e-6, 2e-6, 3e-6, 5e-6})
        worst = std::max(worst, poynting_identity_residual(m, g, R));
    std::vector<double> ff;
    for (double R : {2 * lam, 4 * lam, 8 * lam})
        ff.push_back(std::abs(lk_identity_check(m, g, R)) /
                     std::abs(lk_surface_term(m, g, R)));
    const bool ok =
        worst < 1e-10 && ff[0] < 0.05 && ff[1] < ff[0] && ff[2] < ff[1];
    report(5, "Poynting and far-field identities", ok,
           fmt("poynting worst %.2e (< 1e-10), far-field %.2e -> %.2e -> "
               "%.2e",
               worst, ff[0], ff[1], ff[2]));
}

// ---------------------------------------------------------------- 6
void criterion_6() {
    const SlabGeometry g{2.0, 600e-9};
    const double x_src = 0.2 * g.L;
    const double omega =
        0.95 * std::abs(slab_qnm_frequencies(g, 3)[2].omega_t);
    auto worst_interior = [&](int M) {
        double w = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double x = (-0.45 + 0.1 * k) * g.L;
            const cplx exact = slab_driven_field(g, x, x_src, omega);
            w = std::max(w, std::abs(slab_green_expansion(g, x, x_src, omega,
                                                          M) -
                                     exact) /
                                std::abs(exact));
        }
        return w;
    };
    const std::vector<int> Ms = {8, 15, 30, 60};
    std::vector<double> errs;
    bool monotone = true;
    for (size_t i = 0; i < Ms.size(); ++i) {
        errs.push_back(worst_interior(Ms[i]));
        if (i && errs[i] > errs[i - 1]) monotone = false;
    }
    // exterior point: expansion must not converge
    const double x_out = 2.0 * g.L;
    const cplx exact_out = slab_driven_field(g, x_out, x_src, omega);
    const double out30 =
        std::abs(slab_green_expansion(g, x_out, x_src, omega, 30) - exact_out) /
        std::abs(exact_out);
    const double out120 =
        std::abs(slab_green_expansion(g, x_out, x_src, omega, 120) -
                 exact_out) /
        std::abs(exact_out);
    const bool ok = errs.back() < 1e-3 && monotone && out120 > out30 &&
                    out120 > 0.1;
    report(6, "slab completeness inside only", ok,
           fmt("interior err %.1e -> %.1e (M 8 -> 60), exterior %.1e -> %.1e "
               "(M 30 -> 120)",
               errs.front(), errs.back(), out30, out120));
}

// ---------------------------------------------------------------- 7
void criterion_7() {
    // slab: pole-response extraction vs closed form, slope independence
    const SlabGeometry g{2.0, 600e-9};
    double worst_slab = 0.0, worst_slope = 0.0;
    for (const SlabMode& m : slab_qnm_frequencies(g, 3)) {
        const cplx exact = slab_norm_exact(m, g);
        worst_slab = std::max(
            worst_slab, rel(slab_pole_response_norm(g, m, 0.13 * g.L), exact));
        worst_slope =
            std::max(worst_slope, rel(slab_norm_exact(m, g, 2.0), exact));
    }
    // sphere: pole-response vs PML, and PML-map (slope) invariance
    const SphereGeometry sg = dielectric_sphere();
    const MieMode sm = dielectric_mode(sg);
    PmlMap map;
    map.R = 600e-9;
    const cplx ref = pml_norm(sm, sg, map).value;
    double worst_sphere = 0.0;
    for (double rs : {650e-9, 900e-9})
        worst_sphere = std::max(
            worst_sphere, rel(pole_response_norm_sphere(sm, sg, rs).value, ref));
    PmlMap map2 = map;
    map2.alpha = cplx(1.0, 1.0);
    const double gamma_dev = rel(pml_norm(sm, sg, map2).value, ref);

    const bool ok = worst_slab < 1e-6 && worst_sphere < 1e-6 &&
                    worst_slope < 1e-8 && gamma_dev < 1e-8;
    report(7, "pole-response norm, PML invariance", ok,
           fmt("slab %.1e, sphere %.1e (< 1e-6); slope %.1e, map %.1e "
               "(< 1e-8)",
               worst_slab, worst_sphere, worst_slope, gamma_dev));
}

// ---------------------------------------------------------------- 8
void criterion_8() {
    const SlabGeometry geom{2.0, 1e-6};
    const Grid1D grid{-3e-6, 3e-6, 800};
    const PmlProfile1D pml{2e-6, cplx(2.0, 2.0), 0};
    Assembled sys = assemble(geom, grid, pml);
    std::vector<DiscreteEigenMode> modes = eigensolve(sys);

    std::vector<cplx> ladder;
    for (const SlabMode& am : slab_qnm_frequencies(geom, 12)) {
        ladder.push_back(am.omega_t);
        ladder.push_back(-std::conj(am.omega_t));
    }
    ladder.push_back(slab_overdamped_mode(geom).omega_t);
    std::vector<DiscreteEigenMode> qnm_only;
    for (const DiscreteEigenMode& m : modes)
        for (cplx l : ladder)
            if (std::abs(m.omega_t - l) < 2e-2 * std::abs(l)) {
                qnm_only.push_back(m);
                break;
            }

    std::vector<cplx> current(sys.n_e, 0.0);
    int i_src = 0;
    for (int i = 1; i < sys.n_e; ++i)
        if (std::abs(grid.e_node(i) - 0.2347e-6) <
            std::abs(grid.e_node(i_src) - 0.2347e-6))
            i_src = i;
    current[i_src] = 1.0 / grid.dx();

    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(0.3e15, 3e15);
    double worst_full = 0.0, best_qnm = 1e300;
    for (int trial = 0; trial < 5; ++trial) {
        const cplx w = u(rng);
        worst_full = std::max(
            worst_full,
            excitation_and_reconstruct(modes, sys, current, w).error_vs_direct);
        best_qnm = std::min(
            best_qnm, excitation_and_reconstruct(qnm_only, sys, current, w)
                          .error_vs_direct);
    }
    const bool ok = worst_full < 1e-10 && best_qnm > 1e-3;
    report(8, "fdfd full-basis completeness", ok,
           fmt("full worst %.1e (< 1e-10), qnm-only (%zu modes) best %.1e "
               "(> 1e-3), 5 random frequencies",
               worst_full, qnm_only.size(), best_qnm));
}

// ---------------------------------------------------------------- 9
cplx nearest(const std::vector<DiscreteEigenMode>& modes, cplx target) {
    double best = 1e300;
    cplx found = 0.0;
    for (const DiscreteEigenMode& m : modes) {
        const double d = std::abs(m.omega_t - target);
        if (d < best) { best = d; found = m.omega_t; }
    }
    return found;
}

void criterion_9() {
    const SlabGeometry geom{2.0, 1e-6};
    const auto analytic = slab_qnm_frequencies(geom, 4);
    const PmlProfile1D pml{2e-6, cplx(1.0, 3.0), 2};

    std::vector<double> e_coarse, e_fine;
    for (int N : {240, 480}) {
        const Grid1D grid{-3e-6, 3e-6, N};
        const auto vals =
            eigensolve(assemble(geom, grid, pml), EigenContent::ValuesOnly);
        for (const SlabMode& am : analytic)
            (N == 240 ? e_coarse : e_fine)
                .push_back(rel(nearest(vals, am.omega_t), am.omega_t));
    }
    double order_lo = 1e300, order_hi = 0.0;
    for (size_t i = 0; i < e_coarse.size(); ++i) {
        const double p = std::log2(e_coarse[i] / e_fine[i]);
        order_lo = std::min(order_lo, p);
        order_hi = std::max(order_hi, p);
    }

    const Grid1D grid{-3e-6, 3e-6, 480};
    PmlProfile1D alt = pml;
    alt.stretch *= 1.25;
    auto m1 = eigensolve(assemble(geom, grid, pml), EigenContent::ValuesOnly);
    const auto m2 =
        eigensolve(assemble(geom, grid, alt), EigenContent::ValuesOnly);
    classify_modes(m1, m2, 1e-6);
    double worst_qnm = 0.0;
    for (const SlabMode& am : analytic) {
        const cplx e1 = nearest(m1, am.omega_t), e2 = nearest(m2, am.omega_t);
        worst_qnm = std::max(worst_qnm, rel(e1, e2));
    }
    double big_numerical = 0.0;
    int n_qnm = 0;
    for (const DiscreteEigenMode& m : m1) {
        if (m.classification == ModeClass::QNM) ++n_qnm;
        if (m.classification != ModeClass::Numerical) continue;
        double d = 1e300;
        for (const DiscreteEigenMode& o : m2)
            d = std::min(d, std::abs(m.omega_t - o.omega_t));
        big_numerical = std::max(big_numerical, d / std::abs(m.omega_t));
    }
    const bool ok = order_lo > 1.7 && order_hi < 2.3 && worst_qnm < 1e-6 &&
                    big_numerical > 1e-2 && n_qnm >= 4;
    report(9, "fdfd spectral fidelity", ok,
           fmt("order [%.2f, %.2f] (2.0 +- 0.3), qnm shift %.1e (< 1e-6), "
               "max numerical shift %.1e (> 1e-2)",
               order_lo, order_hi, worst_qnm, big_numerical));
}

// ---------------------------------------------------------------- 10
void criterion_10() {
    const SlabGeometry geom{2.0, 1e-6};
    const Grid1D grid{-3.25e-6, 3.25e-6, 500};
    const PmlProfile1D pml{2.5e-6, cplx(4.0, 0.0), 2};
    const std::vector<double> tans = {0.05, 0.2, 1.0};
    std::vector<double> thetas;
    for (double t : tans) thetas.push_back(std::atan(t));
    const auto rows = revelation_study(geom, grid, pml, thetas, 3, 1e-2);
    const auto analytic = slab_qnm_frequencies(geom, 3);

    bool monotone = true, boundary_only = true;
    int total_disc = 0;
    std::string sets;
    std::vector<int> prev;
    for (size_t it = 0; it < rows.size(); ++it) {
        const std::vector<int>& rev = rows[it].revealed;
        for (int m : prev)
            if (std::find(rev.begin(), rev.end(), m) == rev.end())
                monotone = false;
        prev = rev;
        sets += " {";
        for (size_t i = 0; i < rev.size(); ++i)
            sets += (i ? "," : "") + std::to_string(rev[i]);
        sets += "}";
        int disc = 0;
        for (int m = 1; m <= 3; ++m) {
            const double thresh =
                1.0 / (2.0 * quality_factor(analytic[m - 1].omega_t));
            const bool predicted = tans[it] > thresh;
            const bool revealed =
                std::find(rev.begin(), rev.end(), m) != rev.end();
            if (predicted == revealed) continue;
            ++disc;
            // a miss is only acceptable right at the threshold
            if (tans[it] / thresh < 0.75 || tans[it] / thresh > 1.35)
                boundary_only = false;
        }
        if (disc > 1) boundary_only = false;
        total_disc += disc;
    }
    const bool ok = monotone && boundary_only;
    report(10, "revelation condition", ok,
           fmt("revealed%s, %d boundary discrepancy(ies) vs tan(theta) > "
               "1/(2Q)",
               sets.c_str(), total_disc));
}

// ---------------------------------------------------------------- 11
std::vector<DiscreteEigenMode>
well_separated(const std::vector<DiscreteEigenMode>& modes, double rel_gap) {
    std::vector<DiscreteEigenMode> out;
    for (size_t m = 0; m < modes.size(); ++m) {
        double gap = 1e300;
        for (size_t n = 0; n < modes.size(); ++n)
            if (n != m)
                gap = std::min(gap,
                               std::abs(modes[m].omega_t - modes[n].omega_t));
        if (gap > rel_gap * std::abs(modes[m].omega_t)) out.push_back(modes[m]);
    }
    return out;
}

double pairing_dev(const std::vector<DiscreteEigenMode>& modes,
                   const Assembled& sys, bool with_aux, double* diag_dev) {
    const int top = with_aux ? sys.dim() : sys.n_e + sys.n_h;
    const double dx = sys.grid.dx();
    double off = 0.0, dia = 0.0;
    for (size_t m = 0; m < modes.size(); ++m)
        for (size_t n = m; n < modes.size(); ++n) {
            cplx p = 0.0;
            for (int i = 0; i < top; ++i)
                p += modes[m].right_vec[i] * sys.b_diag[i] *
                     modes[n].right_vec[i];
            p *= dx;
            if (m == n) dia = std::max(dia, std::abs(p - 1.0));
            else off = std::max(off, std::abs(p));
        }
    *diag_dev = dia;
    return off;
}

void criterion_11() {
    const Grid1D grid{-3e-6, 3e-6, 200};
    const PmlProfile1D pml{1.8e-6, cplx(2.0, 2.0), 0};

    Assembled s1 = assemble(SlabGeometry{2.0, 1e-6}, grid, pml);
    auto modes1 = eigensolve(s1);
    biorthonormalize(modes1, s1);
    double dia1;
    const double off1 = pairing_dev(well_separated(modes1, 1e-4), s1, true,
                                    &dia1);

    Assembled s2 = assemble(
        LorentzSlab{1e-6, Material::lorentz(2.0, 5e14, 2e15, 1e13)}, grid, pml);
    auto modes2 = eigensolve(s2);
    biorthonormalize(modes2, s2);
    const auto sep2 = well_separated(modes2, 1e-4);
    double dia2, dia_neg;
    const double off2 = pairing_dev(sep2, s2, true, &dia2);
    const double off_neg = pairing_dev(sep2, s2, false, &dia_neg);

    const bool ok = off1 < 1e-8 && dia1 < 1e-8 && off2 < 1e-8 &&
                    dia2 < 1e-8 && std::max(off_neg, dia_neg) > 1e-2;
    report(11, "biorthogonality, aux fields needed", ok,
           fmt("nondispersive %.1e/%.1e, lorentz %.1e/%.1e (< 1e-8), "
               "without P,J %.1e (> 1e-2)",
               off1, dia1, off2, dia2, std::max(off_neg, dia_neg)));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 11 criteria passed\n");
    return failures ? 1 : 0;
}
