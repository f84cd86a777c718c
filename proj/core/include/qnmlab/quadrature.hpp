#pragma once

#include <functional>
#include <vector>

#include "qnmlab/constants.hpp"

namespace qnmlab {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes. Nodes are the roots of P_n found by
// Newton iteration; exact for polynomials up to degree 2n-1.
GaussRule gauss_legendre(int n);

// Integrate f over the straight segment [a, b] in the complex plane with a
// single n-point Gauss rule.
cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                       int n = 32);

// Integrate f over [a, b] split into `panels` equal panels of n nodes each.
cplx integrate_panels(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                      int panels, int n = 32);

// Panel count such that each panel is no longer than half the local
// wavelength 2*pi/|k| along a segment of length L.
int panels_for(double length, double abs_k);

} // namespace qnmlab
