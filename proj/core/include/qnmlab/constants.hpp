#pragma once

#include <complex>

namespace qnmlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c0 = 299792458.0;            // vacuum speed of light, m/s
inline constexpr double mu0 = 1.25663706212e-6;      // vacuum permeability, H/m
inline constexpr double eps0 = 8.8541878128e-12;     // vacuum permittivity, F/m
inline constexpr double z0 = 376.730313668;          // vacuum impedance, Ohm

inline constexpr cplx I{0.0, 1.0};

// Quality factor of a resonance at complex frequency w = Re - i*Im (Im(w) < 0
// for a decaying mode).
inline double quality_factor(cplx w) {
    return -std::real(w) / (2.0 * std::imag(w));
}

} // namespace qnmlab
