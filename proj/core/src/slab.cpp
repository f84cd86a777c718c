#include "qnmlab/slab.hpp"

#include <cmath>

#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {

void check_geom(const SlabGeometry& g) {
    if (g.n <= 1.0 || g.L <= 0.0)
        throw InvalidBackground("slab requires n > 1 and L > 0");
}

// Propagate (E, E') over a distance d in a region of wavenumber k.
void propagate(cplx k, cplx d, cplx& E, cplx& Ed) {
    const cplx cs = std::cos(k * d);
    const cplx sn = std::sin(k * d);
    const cplx E0 = E, Ed0 = Ed;
    E = E0 * cs + Ed0 * sn / k;
    Ed = -E0 * k * sn + Ed0 * cs;
}

struct Fundamental {
    cplx E, Ed;
};

// Solution outgoing to the left (exp(-i k0 x) for x < -L/2), unit value at
// the left interface, evaluated at x.
Fundamental left_solution(const SlabGeometry& g, cplx omega, double x) {
    const cplx k0 = omega / c0;
    const cplx k1 = g.n * omega / c0;
    const double h = g.L / 2.0;
    if (x <= -h) {
        const cplx e = std::exp(-I * k0 * (x + h));
        return {e, -I * k0 * e};
    }
    Fundamental f{1.0, -I * k0};
    if (x <= h) {
        propagate(k1, x + h, f.E, f.Ed);
        return f;
    }
    propagate(k1, g.L, f.E, f.Ed);
    propagate(k0, x - h, f.E, f.Ed);
    return f;
}

// Solution outgoing to the right, unit value at the right interface.
Fundamental right_solution(const SlabGeometry& g, cplx omega, double x) {
    const cplx k0 = omega / c0;
    const cplx k1 = g.n * omega / c0;
    const double h = g.L / 2.0;
    if (x >= h) {
        const cplx e = std::exp(I * k0 * (x - h));
        return {e, I * k0 * e};
    }
    Fundamental f{1.0, I * k0};
    if (x >= -h) {
        propagate(k1, x - h, f.E, f.Ed);
        return f;
    }
    propagate(k1, -g.L, f.E, f.Ed);
    propagate(k0, x + h, f.E, f.Ed);
    return f;
}

} // namespace

std::vector<SlabMode> slab_qnm_frequencies(const SlabGeometry& geom,
                                           int m_max) {
    check_geom(geom);
    const double decay = std::log((geom.n + 1.0) / (geom.n - 1.0));
    std::vector<SlabMode> modes;
    modes.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
        SlabMode mode;
        mode.m = m;
        mode.omega_t =
            c0 / (geom.n * geom.L) * cplx(m * pi, -decay);
        mode.parity = (m % 2 == 0) ? Parity::Even : Parity::Odd;
        mode.interior_amp = 1.0;
        const cplx u = geom.n * mode.omega_t / c0 * (geom.L / 2.0);
        mode.exterior_amp =
            (mode.parity == Parity::Even) ? std::cos(u) : std::sin(u);
        mode.norm = 0.0;
        modes.push_back(mode);
    }
    return modes;
}

cplx slab_dispersion(const SlabGeometry& geom, cplx omega) {
    check_geom(geom);
    // Round-trip condition r^2 exp(2 i n w L / c) = 1, r = (n-1)/(n+1).
    const double r = (geom.n - 1.0) / (geom.n + 1.0);
    return r * r * std::exp(2.0 * I * geom.n * omega * geom.L / c0) - 1.0;
}

FieldEH slab_qnm_field_c(const SlabMode& mode, const SlabGeometry& geom,
                         cplx x) {
    const cplx k0 = mode.omega_t / c0;
    const cplx k1 = geom.n * k0;
    const double h = geom.L / 2.0;
    const cplx iwmu = I * mode.omega_t * mu0;
    cplx E, Ed;
    if (x.real() > h) {
        E = mode.exterior_amp * std::exp(I * k0 * (x - h));
        Ed = I * k0 * E;
    } else if (x.real() < -h) {
        const double sign = (mode.parity == Parity::Even) ? 1.0 : -1.0;
        E = sign * mode.exterior_amp * std::exp(I * k0 * (-x - h));
        Ed = -sign * I * k0 * mode.exterior_amp * std::exp(I * k0 * (-x - h));
    } else if (mode.parity == Parity::Even) {
        E = mode.interior_amp * std::cos(k1 * x);
        Ed = -mode.interior_amp * k1 * std::sin(k1 * x);
    } else {
        E = mode.interior_amp * std::sin(k1 * x);
        Ed = mode.interior_amp * k1 * std::cos(k1 * x);
    }
    return {E, Ed / iwmu};
}

FieldEH slab_qnm_field(const SlabMode& mode, const SlabGeometry& geom,
                       double x) {
    return slab_qnm_field_c(mode, geom, cplx(x, 0.0));
}

cplx slab_norm_exact(const SlabMode& mode, const SlabGeometry& geom,
                     double slope) {
    check_geom(geom);
    const double q = quality_factor(mode.omega_t);
    if (slope <= 1.0 / (2.0 * q))
        throw RegularizationAngleTooSmall(
            "path slope must exceed 1/(2Q) to regularize the tails");
    const cplx k1 = geom.n * mode.omega_t / c0;
    const cplx a = mode.interior_amp;
    // Interior: eps E^2 - mu H^2 with E = cos or sin of k1 x. The two
    // closed-form halves recombine to a constant integrand eps0 n^2.
    const cplx s = std::sin(k1 * geom.L) / (2.0 * k1);
    cplx e2, h2; // int E^2 and int (c mu0 H / n)^2-like companion
    if (mode.parity == Parity::Even) {
        e2 = geom.L / 2.0 + s;
        h2 = geom.L / 2.0 - s;
    } else {
        e2 = geom.L / 2.0 - s;
        h2 = geom.L / 2.0 + s;
    }
    const cplx interior = eps0 * geom.n * geom.n * a * a * (e2 + h2);
    // Exterior tails along x(s) = h + (1 + i*slope)(s - h): the integrand
    // eps0 E^2 - mu0 H^2 vanishes identically for the outgoing vacuum wave,
    // so the analytically integrated tail contributes exactly zero.
    const cplx amp2 = mode.exterior_amp * mode.exterior_amp;
    const cplx tail = (eps0 * amp2 - eps0 * amp2) * cplx(0.0);
    return interior + 2.0 * tail;
}

cplx slab_lk_norm(const SlabMode& mode, const SlabGeometry& geom, double R) {
    const cplx surf = I * eps0 * c0 / mode.omega_t;
    const FieldEH right = slab_qnm_field(mode, geom, R);
    const FieldEH left = slab_qnm_field(mode, geom, -R);
    return slab_lk_truncated(mode, geom, R) +
           surf * (right.E * right.E + left.E * left.E);
}

cplx slab_lk_truncated(const SlabMode& mode, const SlabGeometry& geom,
                       double R) {
    check_geom(geom);
    if (R < geom.L / 2.0)
        throw InvalidBackground("truncation radius must cover the slab");
    const cplx k0 = mode.omega_t / c0;
    const cplx k1 = geom.n * k0;
    const cplx a = mode.interior_amp;
    const double h = geom.L / 2.0;
    const cplx s = std::sin(k1 * geom.L) / (2.0 * k1);
    const cplx e2 =
        (mode.parity == Parity::Even) ? (geom.L / 2.0 + s) : (geom.L / 2.0 - s);
    const cplx interior = 2.0 * eps0 * geom.n * geom.n * a * a * e2;
    // Each side: 2 int_h^R eps0 A^2 exp(2 i k0 (x-h)) dx, two sides total.
    const cplx amp2 = mode.exterior_amp * mode.exterior_amp;
    const cplx exterior = 2.0 * eps0 * amp2 *
                          (std::exp(2.0 * I * k0 * (R - h)) - 1.0) /
                          (2.0 * I * k0) * 2.0;
    return interior + exterior;
}

cplx slab_driven_field(const SlabGeometry& geom, double x, double x_src,
                       cplx omega) {
    check_geom(geom);
    const Fundamental fl = left_solution(geom, omega, std::min(x, x_src));
    const Fundamental fr = right_solution(geom, omega, std::max(x, x_src));
    // Wronskian is position independent; evaluate both at the source.
    const Fundamental wl = left_solution(geom, omega, x_src);
    const Fundamental wr = right_solution(geom, omega, x_src);
    const cplx w = wl.E * wr.Ed - wl.Ed * wr.E;
    if (std::abs(w) == 0.0)
        throw SingularAtEigenvalue("driven solve exactly at a resonance");
    // E'' + (w/c)^2 eps_r E = -i w mu0 J,  J = delta(x - x_src).
    return -I * omega * mu0 * fl.E * fr.E / w;
}

SlabMode slab_overdamped_mode(const SlabGeometry& geom) {
    check_geom(geom);
    // The m = 0 root of the round-trip condition: purely imaginary
    // frequency, even field, its own Hermitian twin.
    SlabMode mode;
    mode.m = 0;
    mode.omega_t = c0 / (geom.n * geom.L) *
                   cplx(0.0, -std::log((geom.n + 1.0) / (geom.n - 1.0)));
    mode.parity = Parity::Even;
    mode.interior_amp = 1.0;
    mode.exterior_amp =
        std::cos(geom.n * mode.omega_t / c0 * (geom.L / 2.0));
    mode.norm = 0.0;
    return mode;
}

cplx slab_green_expansion(const SlabGeometry& geom, double x, double x_src,
                          double omega, int M, bool* outside) {
    check_geom(geom);
    if (outside) *outside = std::abs(x) >= geom.L / 2.0;
    std::vector<SlabMode> modes = slab_qnm_frequencies(geom, M);
    modes.push_back(slab_overdamped_mode(geom));
    // The driven field is -i w mu0 G. Writing the pole sum for G itself
    // (where it converges) and scaling back gives each term the extra
    // factor w / w_m; the w = 0 pole of G becomes a constant background.
    cplx sum = -mu0 * c0 / 2.0;
    // Every root of the round-trip condition has the same norm eps0 n^2 L
    // (the integrand is constant inside and vanishes outside); using the
    // closed form also covers m = 0, whose Q = 0 defeats the angle check
    // of slab_norm_exact.
    const cplx n = eps0 * geom.n * geom.n * geom.L;
    for (const SlabMode& mode : modes) {
        const cplx es = slab_qnm_field(mode, geom, x_src).E;
        const cplx ex = slab_qnm_field(mode, geom, x).E;
        const cplx gamma = -I * es / n;
        sum += (omega / mode.omega_t) * gamma * ex / (omega - mode.omega_t);
        if (mode.m == 0) continue; // purely imaginary root is its own twin
        // Hermitian twin: frequency -conj(w), conjugated field, same norm.
        const cplx wt = -std::conj(mode.omega_t);
        sum += (omega / wt) * (-std::conj(gamma * ex)) / (omega - wt);
    }
    return sum;
}

cplx slab_pole_response_norm(const SlabGeometry& geom, const SlabMode& mode,
                             double x_src) {
    check_geom(geom);
    const cplx e_src = slab_qnm_field(mode, geom, x_src).E;
    // Reject sources near a node of the mode.
    double emax = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double xi = -geom.L / 2.0 + geom.L * i / 50.0;
        emax = std::max(emax, std::abs(slab_qnm_field(mode, geom, xi).E));
    }
    if (std::abs(e_src) < 1e-8 * emax)
        throw SourceOnNodalPoint("mode field negligible at source position");
    // Drive at w = w_m + delta for two opposite delta and average; the
    // symmetric combination cancels the O(delta) background.
    const double scale = 1e-6 * std::abs(mode.omega_t);
    cplx u = 0.0;
    int count = 0;
    for (const cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
        const cplx delta = scale * dir;
        const cplx fp =
            delta * slab_driven_field(geom, x_src, x_src, mode.omega_t + delta);
        const cplx fm =
            -delta *
            slab_driven_field(geom, x_src, x_src, mode.omega_t - delta);
        u += 0.5 * (fp + fm);
        ++count;
    }
    u /= static_cast<double>(count);
    // u = gamma E(x_src) with gamma = -i E(x_src) / N.
    return -I * e_src * e_src / u;
}

} // namespace qnmlab
