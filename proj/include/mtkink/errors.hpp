#pragma once

#include <stdexcept>
#include <string>

namespace mtk {

// Base class for everything this library throws on purpose. The CLI maps
// subclasses onto exit codes: input/validation problems exit 2, numerical
// failures exit 3, golden-table mismatches exit 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input or configuration rejected before any numerics ran.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Scenario / parameter document could not even be parsed.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

// A numerical operation failed in a way that invalidates its result.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// --- units / frames ---------------------------------------------------------

// Requested traveling frame moves at or above the sound speed.
class SupersonicFrame : public ValidationError {
public:
    explicit SupersonicFrame(const std::string& msg) : ValidationError(msg) {}
};

// The double-well potential is degenerate (A <= 0 or B <= 0): no kink exists.
class DegeneratePotential : public ValidationError {
public:
    explicit DegeneratePotential(const std::string& msg) : ValidationError(msg) {}
};

// --- traveling wave ---------------------------------------------------------

// |sigma| beyond the fold point: the cubic has one real root only.
class ComplexRoots : public NumericalError {
public:
    explicit ComplexRoots(const std::string& msg) : NumericalError(msg) {}
};

// Two cubic roots coincide where the operation needs them distinct.
class DegenerateRoots : public NumericalError {
public:
    explicit DegenerateRoots(const std::string& msg) : NumericalError(msg) {}
};

// No admissible front between the requested vacua.
class NoKink : public NumericalError {
public:
    explicit NoKink(const std::string& msg) : NumericalError(msg) {}
};

class ZeroVelocity : public ValidationError {
public:
    explicit ZeroVelocity(const std::string& msg) : ValidationError(msg) {}
};

// --- lattice ----------------------------------------------------------------

// Kink width under four grid spacings: the profile cannot be represented.
class UnderResolved : public ValidationError {
public:
    explicit UnderResolved(const std::string& msg) : ValidationError(msg) {}
};

class CFLViolation : public ValidationError {
public:
    explicit CFLViolation(const std::string& msg) : ValidationError(msg) {}
};

class NonFinite : public NumericalError {
public:
    explicit NonFinite(const std::string& msg) : NumericalError(msg) {}
};

class NoFront : public NumericalError {
public:
    explicit NoFront(const std::string& msg) : NumericalError(msg) {}
};

class MultipleCrossings : public NumericalError {
public:
    explicit MultipleCrossings(const std::string& msg) : NumericalError(msg) {}
};

class InsufficientSamples : public ValidationError {
public:
    explicit InsufficientSamples(const std::string& msg) : ValidationError(msg) {}
};

// --- variational sector -----------------------------------------------------

// Smearing width at or past the symmetry restoration point (1 - 3*Sigma <= 0).
class SymmetryRestored : public NumericalError {
public:
    explicit SymmetryRestored(const std::string& msg) : NumericalError(msg) {}
};

class SingularKernel : public NumericalError {
public:
    explicit SingularKernel(const std::string& msg) : NumericalError(msg) {}
};

// --- cavity estimates -------------------------------------------------------

class ZeroSeparation : public ValidationError {
public:
    explicit ZeroSeparation(const std::string& msg) : ValidationError(msg) {}
};

// Collapse-time denominator vanished (sin^2 below threshold).
class DivergentCollapse : public NumericalError {
public:
    explicit DivergentCollapse(const std::string& msg) : NumericalError(msg) {}
};

// --- reporting --------------------------------------------------------------

class GoldenMismatch : public Error {
public:
    explicit GoldenMismatch(const std::string& msg) : Error(msg) {}
};

} // namespace mtk
