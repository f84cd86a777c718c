#include <functional>

#include "doctest.h"
#include "qnmlab/mie.hpp"
#include "qnmlab/quadrature.hpp"

using namespace qnmlab;

static SphereGeometry dielectric() {
    return {500e-9, Material::dielectric(2.0), Material::vacuum()};
}

TEST_CASE("newton lands on a dispersion zero") {
    const SphereGeometry g = dielectric();
    const MieMode m =
        find_mie_qnm(g, 1, MiePol::TM, cplx(1.34e15, -2.1e14));
    CHECK(m.omega_t.imag() < 0.0);
    const cplx d = mie_dispersion(g, 1, MiePol::TM, m.omega_t);
    const cplx d_ref = mie_dispersion(g, 1, MiePol::TM,
                                      1.05 * m.omega_t); // off-resonance scale
    CHECK(std::abs(d) < 1e-9 * std::abs(d_ref));
}

TEST_CASE("hermitian twin is also a root") {
    const SphereGeometry g = dielectric();
    const MieMode m = find_mie_qnm(g, 1, MiePol::TM, cplx(1.34e15, -2.1e14));
    const MieMode twin =
        find_mie_qnm(g, 1, MiePol::TM, -std::conj(m.omega_t));
    CHECK(std::abs(twin.omega_t + std::conj(m.omega_t)) <
          1e-10 * std::abs(m.omega_t));
}

TEST_CASE("argument principle counts one root in the seed box") {
    const SphereGeometry g = dielectric();
    const cplx w0 = find_mie_qnm(g, 1, MiePol::TM,
                                 cplx(1.34e15, -2.1e14)).omega_t;
    auto logd = [&](cplx w) {
        const double h = 1e-7 * std::abs(w);
        const cplx dp = mie_dispersion(g, 1, MiePol::TM, w + h);
        const cplx dm = mie_dispersion(g, 1, MiePol::TM, w - h);
        return (dp - dm) / (2.0 * h) / mie_dispersion(g, 1, MiePol::TM, w);
    };
    const double rx = 0.15 * std::abs(w0), ry = 0.15 * std::abs(w0);
    const cplx c[4] = {w0 + cplx(rx, ry), w0 + cplx(-rx, ry),
                       w0 + cplx(-rx, -ry), w0 + cplx(rx, -ry)};
    cplx winding = 0.0;
    for (int k = 0; k < 4; ++k)
        winding += integrate_panels(logd, c[k], c[(k + 1) % 4], 8);
    winding /= 2.0 * pi * I;
    CHECK(std::abs(winding - 1.0) < 1e-3);
}

TEST_CASE("tangential fields are continuous at the surface") {
    const SphereGeometry g = dielectric();
    const MieMode m = find_mie_qnm(g, 1, MiePol::TM, cplx(1.34e15, -2.1e14));
    const double eps = 1e-9 * g.a;
    SphVec Ein, Hin, Eout, Hout;
    mie_field(m, g, g.a - eps, 1.1, 0.0, Ein, Hin);
    mie_field(m, g, g.a + eps, 1.1, 0.0, Eout, Hout);
    CHECK(std::abs(Ein.theta - Eout.theta) < 1e-6 * std::abs(Ein.theta));
    CHECK(std::abs(Hin.phi - Hout.phi) < 1e-6 * std::abs(Hin.phi));
    // normal D is continuous, normal E jumps by eps_in/eps_out = 4
    CHECK(std::abs(Ein.r * 4.0 - Eout.r) < 1e-6 * std::abs(Eout.r));
}

TEST_CASE("radial derivatives match finite differences") {
    const SphereGeometry g = dielectric();
    const MieMode m = find_mie_qnm(g, 1, MiePol::TM, cplx(1.34e15, -2.1e14));
    const double r = 1.7 * g.a, h = 1e-6 * g.a;
    SphVec dE, dH, Ep, Hp, Em, Hm;
    mie_radial_derivative(m, g, r, 0.9, 0.0, dE, dH);
    mie_field(m, g, r + h, 0.9, 0.0, Ep, Hp);
    mie_field(m, g, r - h, 0.9, 0.0, Em, Hm);
    CHECK(std::abs(dE.theta - (Ep.theta - Em.theta) / (2 * h)) <
          1e-6 * std::abs(dE.theta));
    CHECK(std::abs(dH.phi - (Hp.phi - Hm.phi) / (2 * h)) <
          1e-6 * std::abs(dH.phi));
}
