#pragma once

#include <stdexcept>
#include <string>

namespace qric {

// Base class for everything this library throws on its own behalf.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct SpectraOverlap : Error { using Error::Error; };
struct NoInvertibleSelection : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };
struct WrongModel : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct SimilarityDefect : Error { using Error::Error; };
struct ControlTooClose : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

}  // namespace qric
