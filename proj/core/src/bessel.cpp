#include "qnmlab/bessel.hpp"

#include <cmath>
#include <vector>

#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {

// Power series j_l(z) = z^l / (2l+1)!! * sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
cplx sph_j_series(int l, cplx z) {
    cplx lead = 1.0;
    for (int k = 1; k <= l; ++k) lead *= z / static_cast<double>(2 * k + 1);
    cplx term = 1.0, sum = 1.0;
    const cplx z2 = z * z;
    for (int k = 1; k < 60; ++k) {
        term *= -0.5 * z2 / (static_cast<double>(k) * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
}

// h^{(1)}_l by upward recurrence from the closed forms
// h_{-1} = e^{iz}/z, h_0 = -i e^{iz}/z. Never formed as j + i y: for
// Im(z) > 0 both j and y grow like e^{Im z} while h decays like
// e^{-Im z}, so the sum cancels catastrophically. Upward recurrence is
// safe here: h is the dominant solution for |z| < l, and for |z| > l the
// per-step contamination stays at rounding level as long as l << |z|.
void sph_h1n(int lmax, cplx z, cplx* h) {
    if (std::abs(z) < 1e-280) throw Overflow("sph_h1n: argument too close to 0");
    const cplx e = std::exp(I * z);
    cplx hm1 = e / z;
    h[0] = -I * e / z;
    for (int l = 1; l <= lmax; ++l) {
        const cplx next = (2.0 * l - 1.0) / z * h[l - 1] - hm1;
        hm1 = h[l - 1];
        h[l] = next;
    }
}

} // namespace

void sph_jn(int lmax, cplx z, cplx* j) {
    const double az = std::abs(z);
    if (az < 1e-8) {
        for (int l = 0; l <= lmax; ++l) j[l] = sph_j_series(l, z);
        return;
    }
    j[0] = std::sin(z) / z;
    if (lmax == 0) return;
    if (az > lmax) {
        // Upward recurrence is stable when |z| dominates the order.
        cplx jm1 = std::cos(z) / z; // j_{-1}
        for (int l = 1; l <= lmax; ++l) {
            cplx next = (2.0 * l - 1.0) / z * j[l - 1] - jm1;
            jm1 = j[l - 1];
            j[l] = next;
        }
        return;
    }
    // Downward recurrence from a padded start order, normalized by j_0.
    const int start = lmax + 15 + static_cast<int>(az);
    std::vector<cplx> f(start + 2);
    f[start + 1] = 0.0;
    f[start] = 1e-30;
    for (int l = start; l >= 1; --l) {
        f[l - 1] = (2.0 * l + 1.0) / z * f[l] - f[l + 1];
        if (std::abs(f[l - 1]) > 1e250) {
            // Rescale to avoid overflow of the unnormalized sequence.
            for (int k = l - 1; k <= start + 1; ++k) f[k] *= 1e-250;
        }
    }
    const cplx scale = j[0] / f[0];
    for (int l = 1; l <= lmax; ++l) j[l] = f[l] * scale;
}

void sph_yn(int lmax, cplx z, cplx* y) {
    if (std::abs(z) < 1e-280) throw Overflow("sph_yn: argument too close to 0");
    y[0] = -std::cos(z) / z;
    if (lmax == 0) return;
    y[1] = -std::cos(z) / (z * z) - std::sin(z) / z;
    for (int l = 2; l <= lmax; ++l)
        y[l] = (2.0 * l - 1.0) / z * y[l - 1] - y[l - 2];
}

cplx sph_j(int l, cplx z) {
    std::vector<cplx> buf(l + 1);
    sph_jn(l, z, buf.data());
    return buf[l];
}

cplx sph_y(int l, cplx z) {
    std::vector<cplx> buf(l + 1);
    sph_yn(l, z, buf.data());
    return buf[l];
}

cplx sph_h1(int l, cplx z) {
    std::vector<cplx> buf(l + 1);
    sph_h1n(l, z, buf.data());
    return buf[l];
}

cplx sph_j_d(int l, cplx z) {
    if (l == 0) return -sph_j(1, z);
    std::vector<cplx> buf(l + 1);
    sph_jn(l, z, buf.data());
    return buf[l - 1] - (l + 1.0) / z * buf[l];
}

cplx sph_h1_d(int l, cplx z) {
    if (l == 0) return -sph_h1(1, z);
    std::vector<cplx> hb(l + 1);
    sph_h1n(l, z, hb.data());
    return hb[l - 1] - (l + 1.0) / z * hb[l];
}

// psi_l' and xi_l' from f_l' = f_{l-1} - (l+1)/z f_l:
// (z f_l)' = z f_{l-1} - l f_l.
cplx riccati_psi(int l, cplx z) { return z * sph_j(l, z); }

cplx riccati_psi_d(int l, cplx z) {
    if (l == 0) return std::cos(z);
    std::vector<cplx> buf(l + 1);
    sph_jn(l, z, buf.data());
    return z * buf[l - 1] - static_cast<double>(l) * buf[l];
}

cplx riccati_xi(int l, cplx z) { return z * sph_h1(l, z); }

cplx riccati_xi_d(int l, cplx z) {
    if (l == 0) return I * std::exp(I * z);
    std::vector<cplx> hb(l + 1);
    sph_h1n(l, z, hb.data());
    return z * hb[l - 1] - static_cast<double>(l) * hb[l];
}

} // namespace qnmlab
