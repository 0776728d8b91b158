#ifndef CRC_CONFIG_HPP
#define CRC_CONFIG_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crc
{

#if defined(CRC_EXTENDED_PRECISION)
using Real = long double;
#else
using Real = double;
#endif

using Complex = std::complex<Real>;

inline constexpr Real pi = std::numbers::pi_v<Real>;
inline constexpr Complex I{Real(0), Real(1)};

// exp(pi i / n)
inline Complex zeta(int n)
{
    return std::polar(Real(1), pi / Real(n));
}

// exp(2 pi i / (n + 1))
inline Complex rho(int n)
{
    return std::polar(Real(1), Real(2) * pi / Real(n + 1));
}

// Error hierarchy. Every failure mode surfaced to callers derives from crc::Error
// so the CLI can map it onto an exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct WindowError : Error {
    using Error::Error;
};

struct SingularPairingError : Error {
    using Error::Error;
};

struct LabelingError : Error {
    using Error::Error;
};

struct PathError : Error {
    using Error::Error;
};

// The tracker could not match roots between two steps even after refinement.
struct StepRefinementError : PathError {
    using PathError::PathError;
};

// Basis degeneration in a linear solve; the caller should retry at another lambda.
struct ResampleError : Error {
    using Error::Error;
};

} // namespace crc

#endif
