#pragma once

#include <stdexcept>
#include <string>

namespace qnmlab {

// Base class for all library-level failures. Each named condition from the
// module contracts gets its own type so callers can catch selectively.
class QnmError : public std::runtime_error {
public:
    explicit QnmError(const std::string& msg) : std::runtime_error(msg) {}
};

// Material model evaluated at (or numerically too close to) a pole of the
// permittivity.
class EvaluationAtMaterialPole : public QnmError {
public:
    using QnmError::QnmError;
};

// An intermediate quantity exceeded the floating-point range (typically the
// exponentially growing tail of a leaky-mode field).
class Overflow : public QnmError {
public:
    using QnmError::QnmError;
};

// Complex-coordinate path rotation angle too small to make the integrand of
// an open-system norm decay.
class RegularizationAngleTooSmall : public QnmError {
public:
    using QnmError::QnmError;
};

// A formally convergent tail integral failed to reach the requested
// tolerance within the allowed extent.
class TailNotConverged : public QnmError {
public:
    using QnmError::QnmError;
};

// Point source placed on (or numerically too close to) a node of the mode
// being normalized, so the residue extraction is ill-conditioned.
class SourceOnNodalPoint : public QnmError {
public:
    using QnmError::QnmError;
};

// An iterative solver (root search, Newton refinement) did not converge.
class NoConvergence : public QnmError {
public:
    using QnmError::QnmError;
};

// A root search converged onto a material pole instead of a resonance.
class RootAtMaterialPole : public QnmError {
public:
    using QnmError::QnmError;
};

// Background medium parameters out of the supported range.
class InvalidBackground : public QnmError {
public:
    using QnmError::QnmError;
};

// Matrix eigenproblem produced a (numerically) defective eigenvector basis.
class DefectiveMatrix : public QnmError {
public:
    using QnmError::QnmError;
};

// Spatial discretization too coarse for the requested frequency range.
class GridTooCoarse : public QnmError {
public:
    using QnmError::QnmError;
};

// Two discrete fields that must share a grid do not.
class GridMismatch : public QnmError {
public:
    using QnmError::QnmError;
};

// Linear solve requested exactly at an eigenvalue of the operator.
class SingularAtEigenvalue : public QnmError {
public:
    using QnmError::QnmError;
};

// Configuration file problems (unknown key, bad value, missing section).
class ConfigError : public QnmError {
public:
    using QnmError::QnmError;
};

} // namespace qnmlab
