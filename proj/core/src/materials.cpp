#include "qnmlab/materials.hpp"

#include <cmath>

#include "qnmlab/errors.hpp"

namespace qnmlab {

Material Material::nondispersive(cplx eps_r, cplx mu_r) {
    if (eps_r == cplx(0.0))
        throw InvalidBackground("relative permittivity must be nonzero");
    Material m(0.0, 0.0, 0.0, 0.0);
    m.eps_r_ = eps_r;
    m.mu_r_ = mu_r;
    m.eps_inf_ = eps_r.real();
    return m;
}

cplx Material::denominator(cplx w) const {
    return w * w - omega_0_ * omega_0_ + I * w * gamma_;
}

cplx Material::permittivity(cplx w) const {
    if (omega_p_ == 0.0) return eps_r_;
    const cplx d = denominator(w);
    if (std::abs(d) < 1e-30)
        throw EvaluationAtMaterialPole("permittivity evaluated at Lorentz pole");
    return eps_inf_ - eps_inf_ * omega_p_ * omega_p_ / d;
}

cplx Material::d_omega_eps(cplx w) const {
    if (omega_p_ == 0.0) return eps_r_;
    const cplx d = denominator(w);
    if (std::abs(d) < 1e-30)
        throw EvaluationAtMaterialPole(
            "dispersion weight evaluated at Lorentz pole");
    // d/dw [w eps] = eps_inf + eps_inf wp^2 (w^2 + w0^2) / d^2
    return eps_inf_ +
           eps_inf_ * omega_p_ * omega_p_ * (w * w + omega_0_ * omega_0_) /
               (d * d);
}

} // namespace qnmlab
