#include <cmath>

#include "doctest.h"
#include "qnmlab/quadrature.hpp"

using namespace qnmlab;

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
    const GaussRule r = gauss_legendre(6);
    REQUIRE(r.nodes.size() == 6);
    for (int p = 0; p <= 11; ++p) {
        double s = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i)
            s += r.weights[i] * std::pow(r.nodes[i], p);
        const double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("segment integration along a complex path") {
    // \int exp(i z) dz = [exp(i z)/i], independent of the straight path
    const cplx a(0.0, 0.0), b(3.0, 2.0);
    const cplx exact = (std::exp(I * b) - std::exp(I * a)) / I;
    const cplx got = integrate_segment([](cplx z) { return std::exp(I * z); },
                                       a, b);
    CHECK(std::abs(got - exact) < 1e-13);
}

TEST_CASE("panels refine an oscillatory integrand") {
    const cplx a(0.0, 0.0), b(40.0, 0.0);
    const cplx exact = (std::exp(I * b) - 1.0) / I;
    const int panels = panels_for(40.0, 1.0);
    const cplx got = integrate_panels([](cplx z) { return std::exp(I * z); },
                                      a, b, panels);
    CHECK(std::abs(got - exact) < 1e-12);
    CHECK(panels >= 12); // at least two panels per wavelength over 6 cycles
}
