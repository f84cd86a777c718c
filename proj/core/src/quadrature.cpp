#include "qnmlab/quadrature.hpp"

#include <cmath>

#include "qnmlab/errors.hpp"

namespace qnmlab {

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NoConvergence("gauss_legendre: node iteration stalled");
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                       int n) {
    static thread_local int cached_n = -1;
    static thread_local GaussRule cached;
    if (n != cached_n) {
        cached = gauss_legendre(n);
        cached_n = n;
    }
    const cplx mid = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += cached.weights[i] * f(mid + half * cached.nodes[i]);
    return sum * half;
}

cplx integrate_panels(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                      int panels, int n) {
    if (panels < 1) panels = 1;
    cplx sum = 0.0;
    const cplx step = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p)
        sum += integrate_segment(f, a + step * static_cast<double>(p),
                                 a + step * static_cast<double>(p + 1), n);
    return sum;
}

int panels_for(double length, double abs_k) {
    if (abs_k <= 0.0) return 1;
    const double half_wavelength = pi / abs_k;
    return static_cast<int>(std::ceil(length / half_wavelength)) + 1;
}

} // namespace qnmlab
