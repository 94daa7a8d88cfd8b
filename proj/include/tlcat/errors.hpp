#ifndef TLCAT_ERRORS_HPP
#define TLCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlcat {

/// Base class of every error thrown by the library.  The CLI maps these to
/// exit code 1; anything else escaping a command is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested object would exceed the configured strand bound.
struct SizeLimit : Error {
    using Error::Error;
};

/// Boundary counts of two diagrams or morphisms do not line up.
struct SignatureMismatch : Error {
    using Error::Error;
};

/// Two scalars or morphisms live over different coefficient backends.
struct BackendMismatch : Error {
    using Error::Error;
};

/// An operation that needs equal top and bottom boundary was given a
/// rectangular morphism.
struct NotEndomorphism : Error {
    using Error::Error;
};

/// A bend was requested on a side with no strand left to move.
struct NoStrand : Error {
    using Error::Error;
};

/// dual_idempotent was handed a morphism p with p*p != p.
struct NotIdempotent : Error {
    using Error::Error;
};

/// A scalar that must be invertible (twist parameter, loop value) is zero.
struct NonInvertibleScalar : Error {
    using Error::Error;
};

/// Division by a zero scalar.
struct DivisionByZero : Error {
    using Error::Error;
};

/// evaluate_at hit a point where the denominator of a rational function
/// vanishes.
struct DenominatorVanishes : Error {
    using Error::Error;
};

/// The Wenzl recursion divides by [j]_q and that quantum integer is zero in
/// the active backend.  `index` is the vanishing j.
struct VanishingQuantumInteger : Error {
    int index;
    explicit VanishingQuantumInteger(int j)
        : Error("quantum integer [" + std::to_string(j) + "] vanishes"), index(j) {}
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Malformed textual input (diagram encoding, scalar string, word).
struct ParseError : Error {
    using Error::Error;
};

/// A parenthesis encoding or pairing that does not describe a planar diagram.
struct NotPlanar : Error {
    using Error::Error;
};

/// The floating-point eigensolver failed to converge.
struct NumericalFailure : Error {
    using Error::Error;
};

} // namespace tlcat

#endif
