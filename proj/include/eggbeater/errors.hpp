#pragma once

#include <stdexcept>
#include <string>

namespace eggbeater {

// Error taxonomy shared across the library. The CLI maps these to exit
// classes: invalid inputs/parameters -> 2, certificate unavailable -> 3,
// numerical failures -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct InvalidProfile : Error { using Error::Error; };
struct BrokenLift : Error { using Error::Error; };
struct ClassMismatch : Error { using Error::Error; };
struct InsufficientSpectrum : Error { using Error::Error; };
struct IncompleteEnumeration : Error { using Error::Error; };
struct IntegrationFailure : Error { using Error::Error; };
struct CertificateUnavailable : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

} // namespace eggbeater
