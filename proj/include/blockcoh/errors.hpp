#pragma once

#include <stdexcept>
#include <string>

namespace blockcoh {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- structure / state validation -----------------------------------------
struct OverlappingGroups : Error { using Error::Error; };
struct IncompleteCover : Error { using Error::Error; };
struct EmptyGroup : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct NotADensityMatrix : Error { using Error::Error; };

// --- channels ---------------------------------------------------------------
struct NotCPTP : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct InvalidMixture : Error { using Error::Error; };

// --- conversion -------------------------------------------------------------
struct Infeasible : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct ZeroWeightPolicy : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct NotIncoherent : Error { using Error::Error; };
struct NotAConversion : Error { using Error::Error; };
struct CertificateViolation : Error { using Error::Error; };

// --- k-coherence ------------------------------------------------------------
struct NotBlockIncoherent : Error { using Error::Error; };
struct RankBoundExceeded : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// --- i/o --------------------------------------------------------------------
struct SchemaViolation : Error { using Error::Error; };

} // namespace blockcoh
